// SPDX-License-Identifier: Apache-2.0
//! Čech cochains with piecewise-polynomial form values.

use super::simplicial::{fmt_simplex, PlForm, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poly::PolyForm;
use crate::rational::Q;
use num::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Value on the p-fold overlap U_σ for each p-simplex σ of the nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCochain {
    p: usize,
    comps: BTreeMap<Simplex, PlForm>,
}

fn sign(i: usize) -> Q {
    if i.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

impl CechCochain {
    pub fn zero(cx: &SimplicialComplex, p: usize) -> Self {
        let comps = cx.simplices(p).iter().map(|s| (s.clone(), PlForm::zero(cx, s))).collect();
        CechCochain { p, comps }
    }

    /// Build from listed components; unlisted simplices get 0.
    pub fn from_comps(cx: &SimplicialComplex, p: usize, given: BTreeMap<Simplex, PlForm>) -> Result<Self> {
        let mut out = Self::zero(cx, p);
        for (s, f) in given {
            let slot = out.comps.get_mut(&s).ok_or_else(|| Error::Unknown(format!("{p}-simplex {}", fmt_simplex(&s))))?;
            if f.support() != s.as_slice() {
                return Err(Error::ModelMismatch(format!("component on {} has the wrong support", fmt_simplex(&s))));
            }
            *slot = f;
        }
        Ok(out)
    }

    /// Each component is the restriction of one global polynomial form in t_0..t_{n−1}.
    pub fn from_global_polys(cx: &SimplicialComplex, p: usize, mut f: impl FnMut(&Simplex) -> PolyForm) -> Self {
        let comps = cx.simplices(p).iter().map(|s| (s.clone(), PlForm::from_global_poly(cx, s, &f(s)))).collect();
        CechCochain { p, comps }
    }

    /// Integer-valued constant cochain.
    pub fn constant(cx: &SimplicialComplex, p: usize, vals: &BTreeMap<Simplex, Q>) -> Self {
        let comps = cx
            .simplices(p)
            .iter()
            .map(|s| (s.clone(), PlForm::constant(cx, s, vals.get(s).unwrap_or(&Q::zero()))))
            .collect();
        CechCochain { p, comps }
    }

    /// Random cochain of global polynomial forms of the given form degree.
    pub fn random<R: Rng>(cx: &SimplicialComplex, p: usize, form_deg: usize, pdeg: u32, rng: &mut R) -> Self {
        let n = cx.vertices().iter().max().map_or(0, |m| m + 1);
        let density = 6.0 / (1u64 << n.min(60)) as f64;
        Self::from_global_polys(cx, p, |_| PolyForm::random(n, form_deg, pdeg, 3, density.clamp(0.02, 0.5), rng))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn comps(&self) -> &BTreeMap<Simplex, PlForm> {
        &self.comps
    }

    pub fn comp(&self, s: &[usize]) -> Option<&PlForm> {
        self.comps.get(s)
    }

    fn zip(&self, o: &CechCochain, op: impl Fn(&PlForm, &PlForm) -> PlForm) -> CechCochain {
        assert_eq!(self.p, o.p, "Čech degree mismatch");
        CechCochain { p: self.p, comps: self.comps.iter().map(|(s, f)| (s.clone(), op(f, &o.comps[s]))).collect() }
    }

    pub fn add(&self, o: &CechCochain) -> CechCochain {
        self.zip(o, PlForm::add)
    }

    pub fn sub(&self, o: &CechCochain) -> CechCochain {
        self.zip(o, PlForm::sub)
    }

    pub fn scale(&self, s: &Q) -> CechCochain {
        CechCochain { p: self.p, comps: self.comps.iter().map(|(k, f)| (k.clone(), f.scale(s))).collect() }
    }

    pub fn d(&self) -> CechCochain {
        CechCochain { p: self.p, comps: self.comps.iter().map(|(k, f)| (k.clone(), f.d())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(PlForm::is_zero)
    }

    /// (δc)_{v0…vp+1} = Σ_i (−1)^i c_{v0…v̂i…vp+1}.
    pub fn delta(&self, cx: &SimplicialComplex) -> CechCochain {
        let comps = cx
            .simplices(self.p + 1)
            .iter()
            .map(|t| {
                let mut acc = PlForm::zero(cx, t);
                for i in 0..t.len() {
                    let mut f = t.clone();
                    f.remove(i);
                    acc = acc.add(&self.comps[&f].restrict(t).scale(&sign(i)));
                }
                (t.clone(), acc)
            })
            .collect();
        CechCochain { p: self.p + 1, comps }
    }

    /// Partition-of-unity homotopy (Kc)_σ = Σ_v t_v c_{vσ}, with δK + Kδ = id.
    pub fn homotopy(&self, cx: &SimplicialComplex) -> Result<CechCochain> {
        if self.p == 0 {
            return Err(Error::Degree("homotopy needs Čech degree ≥ 1".into()));
        }
        let comps = cx
            .simplices(self.p - 1)
            .iter()
            .map(|s| {
                let mut pieces = BTreeMap::new();
                for f in cx.facets_containing(s) {
                    let n = f.len() - 1;
                    let mut acc = PolyForm::zero(n);
                    for &v in f.iter().filter(|v| s.binary_search(v).is_err()) {
                        let pos = s.partition_point(|w| *w < v);
                        let mut vs = s.clone();
                        vs.insert(pos, v);
                        let c = self.comps[&vs].piece(f).expect("facet in star");
                        acc = acc.add(&super::simplicial::bary(f, v).wedge(c).scale(&sign(pos)));
                    }
                    pieces.insert(f.clone(), acc);
                }
                let form = PlForm::from_pieces(cx, s, pieces).expect("homotopy preserves compatibility");
                (s.clone(), form)
            })
            .collect();
        Ok(CechCochain { p: self.p - 1, comps })
    }

    /// Simplices where the component is not an integer constant.
    pub fn non_integral(&self) -> Vec<Simplex> {
        self.comps
            .iter()
            .filter(|(_, f)| !f.as_constant().is_some_and(|c| c.is_integer()))
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Integer values of an integral constant cochain.
    pub fn integer_values(&self) -> Option<BTreeMap<Simplex, num::BigInt>> {
        self.comps
            .iter()
            .map(|(s, f)| {
                let c = f.as_constant()?;
                c.is_integer().then(|| (s.clone(), c.to_integer()))
            })
            .collect()
    }

    /// Simplices where `self` and `o` differ.
    pub fn differs_on(&self, o: &CechCochain) -> Vec<Simplex> {
        self.comps.iter().filter(|(s, f)| o.comps.get(*s) != Some(f)).map(|(s, _)| s.clone()).collect()
    }

    pub fn restrict_to_subcomplex(&self, sub: &SimplicialComplex) -> CechCochain {
        let comps = sub.simplices(self.p).iter().map(|s| (s.clone(), self.comps[s].restrict_to_subcomplex(sub))).collect();
        CechCochain { p: self.p, comps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn homotopy_identity() {
        let facets: Vec<Simplex> = (0..5).map(|i| (0..5).filter(|v| *v != i).collect()).collect();
        let cx = SimplicialComplex::new(facets, vec![1, -1, 1, -1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in 1..3 {
            let c = CechCochain::random(&cx, p, 1, 2, &mut rng);
            assert!(!c.is_zero());
            let lhs = c.homotopy(&cx).unwrap().delta(&cx).add(&c.delta(&cx).homotopy(&cx).unwrap());
            assert_eq!(lhs, c);
            assert!(c.delta(&cx).delta(&cx).is_zero());
        }
    }
}
