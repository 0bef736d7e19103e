// SPDX-License-Identifier: Apache-2.0
//! Finite simplicial complexes and piecewise-polynomial forms on open stars.
//!
//! On a facet `[v0 < v1 < … < vd]` a form is a `PolyForm` in the barycentric
//! coordinates `t_{v1}, …, t_{vd}`; `t_{v0} = 1 − Σ t` is eliminated.

use crate::error::{Error, Result};
use crate::linalg::{smith, Smith, ZMatrix};
use crate::poly::PolyForm;
use crate::rational::Q;
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub type Simplex = Vec<usize>;

pub fn fmt_simplex(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(" "))
}

pub fn is_face(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn intersect(a: &[usize], b: &[usize]) -> Simplex {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    orient: Vec<i64>,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// `orient[i]` is the sign of facet `i` in the fundamental cycle (0 if none).
    pub fn new(facets: Vec<Simplex>, orient: Vec<i64>) -> Result<Self> {
        if facets.is_empty() || facets.len() != orient.len() {
            return Err(Error::Invariant("complex needs facets with one orientation each".into()));
        }
        let mut facets: Vec<Simplex> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        let dim = facets[0].len() - 1;
        if facets.iter().any(|f| f.len() != dim + 1 || f.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::Invariant("facets must be distinct-vertex simplices of one dimension".into()));
        }
        let mut pairs: Vec<(Simplex, i64)> = facets.drain(..).zip(orient).collect();
        pairs.sort();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invariant("repeated facet".into()));
        }
        let (facets, orient): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim + 1];
        for f in &facets {
            for mask in 1u32..(1 << f.len()) {
                let s: Simplex = f.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| *v).collect();
                sets[s.len() - 1].insert(s);
            }
        }
        let cx = SimplicialComplex { facets, orient, by_dim: sets.into_iter().map(|s| s.into_iter().collect()).collect() };
        if cx.orient.iter().any(|o| *o != 0) && !cx.fundamental_is_cycle() {
            return Err(Error::Invariant("orientation signs do not form a cycle".into()));
        }
        Ok(cx)
    }

    fn fundamental_is_cycle(&self) -> bool {
        let mut acc: BTreeMap<Simplex, i64> = BTreeMap::new();
        for (f, o) in self.facets.iter().zip(&self.orient) {
            for i in 0..f.len() {
                let mut g = f.clone();
                g.remove(i);
                *acc.entry(g).or_insert(0) += if i % 2 == 0 { *o } else { -*o };
            }
        }
        acc.values().all(|v| *v == 0)
    }

    pub fn dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn orientation(&self, facet: &[usize]) -> i64 {
        self.facets.binary_search_by(|f| f.as_slice().cmp(facet)).map_or(0, |i| self.orient[i])
    }

    pub fn is_oriented(&self) -> bool {
        self.orient.iter().all(|o| *o != 0)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.by_dim[0].iter().map(|s| s[0]).collect()
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.by_dim.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.simplices(s.len() - 1).binary_search_by(|x| x.as_slice().cmp(s)).is_ok()
    }

    pub fn facets_containing<'a>(&'a self, s: &'a [usize]) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.facets.iter().filter(move |f| is_face(s, f))
    }

    /// Coboundary C^p → C^{p+1}: rows indexed by (p+1)-simplices.
    pub fn coboundary(&self, p: usize) -> ZMatrix {
        let rows = self.simplices(p + 1);
        let cols = self.simplices(p);
        rows.iter()
            .map(|t| {
                let mut row = vec![BigInt::zero(); cols.len()];
                for i in 0..t.len() {
                    let mut f = t.clone();
                    f.remove(i);
                    let j = cols.binary_search(&f).expect("face present");
                    row[j] += if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                }
                row
            })
            .collect()
    }

    /// Smith form of the coboundary into degree `p` (from degree p−1).
    pub fn smith_into(&self, p: usize) -> Smith {
        let rows = self.simplices(p).len();
        if p == 0 {
            return smith(&vec![Vec::new(); rows], rows, 0);
        }
        smith(&self.coboundary(p - 1), rows, self.simplices(p - 1).len())
    }

    /// Integer Betti number and torsion coefficients of H^p.
    pub fn integer_cohomology(&self, p: usize) -> (usize, Vec<BigInt>) {
        let s = self.smith_into(p);
        let n = self.simplices(p).len();
        let rank_out = if p < self.dim() {
            smith(&self.coboundary(p), self.simplices(p + 1).len(), n).rank()
        } else {
            0
        };
        let torsion = s.diag.iter().filter(|d| !d.is_zero() && !d.is_one() && **d != -BigInt::one()).cloned().collect();
        (n - rank_out - s.rank(), torsion)
    }

    /// The subcomplex generated by the listed facets.
    pub fn subcomplex(&self, keep: &[Simplex]) -> Result<Self> {
        let mut facets = Vec::new();
        let mut orient = Vec::new();
        for f in keep {
            let mut g = f.clone();
            g.sort_unstable();
            if !self.facets.contains(&g) {
                return Err(Error::Unknown(format!("facet {}", fmt_simplex(&g))));
            }
            facets.push(g.clone());
            orient.push(0);
        }
        SimplicialComplex::new(facets, orient)
    }
}

pub fn coord_names(facet: &[usize]) -> Vec<String> {
    facet[1..].iter().map(|v| format!("t{v}")).collect()
}

/// Barycentric coordinate t_v as a function on `facet`.
pub fn bary(facet: &[usize], v: usize) -> PolyForm {
    let n = facet.len() - 1;
    match facet.iter().position(|w| *w == v) {
        None => PolyForm::zero(n),
        Some(0) => (0..n).fold(PolyForm::one(n), |acc, i| acc.add(&PolyForm::var(n, i).scale(&-Q::one()))),
        Some(i) => PolyForm::var(n, i - 1),
    }
}

/// Pull a form on `facet` back to one of its faces.
pub fn restrict_to_face(facet: &[usize], piece: &PolyForm, face: &[usize]) -> PolyForm {
    let images: Vec<PolyForm> = facet[1..].iter().map(|v| bary(face, *v)).collect();
    if images.is_empty() {
        return piece.clone();
    }
    piece.pullback(&images)
}

/// A form on the open star of `support`: one polynomial piece per facet containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlForm {
    support: Simplex,
    pieces: BTreeMap<Simplex, PolyForm>,
}

impl PlForm {
    pub fn zero(cx: &SimplicialComplex, support: &[usize]) -> Self {
        let pieces = cx.facets_containing(support).map(|f| (f.clone(), PolyForm::zero(f.len() - 1))).collect();
        PlForm { support: support.to_vec(), pieces }
    }

    pub fn constant(cx: &SimplicialComplex, support: &[usize], c: &Q) -> Self {
        let pieces = cx.facets_containing(support).map(|f| (f.clone(), PolyForm::constant(f.len() - 1, c.clone()))).collect();
        PlForm { support: support.to_vec(), pieces }
    }

    /// The barycentric coordinate t_v on the star of `support`.
    pub fn bary(cx: &SimplicialComplex, support: &[usize], v: usize) -> Self {
        let pieces = cx.facets_containing(support).map(|f| (f.clone(), bary(f, v))).collect();
        PlForm { support: support.to_vec(), pieces }
    }

    /// Restriction of a polynomial form in all vertex coordinates `t_0, …, t_{n−1}`.
    pub fn from_global_poly(cx: &SimplicialComplex, support: &[usize], p: &PolyForm) -> Self {
        let pieces = cx
            .facets_containing(support)
            .map(|f| {
                let imgs: Vec<PolyForm> = (0..p.nvars()).map(|v| bary(f, v)).collect();
                (f.clone(), p.pullback(&imgs))
            })
            .collect();
        PlForm { support: support.to_vec(), pieces }
    }

    pub fn from_pieces(cx: &SimplicialComplex, support: &[usize], given: BTreeMap<Simplex, PolyForm>) -> Result<Self> {
        let mut out = PlForm::zero(cx, support);
        for (f, p) in given {
            let slot = out
                .pieces
                .get_mut(&f)
                .ok_or_else(|| Error::ModelMismatch(format!("facet {} does not contain {}", fmt_simplex(&f), fmt_simplex(support))))?;
            if p.nvars() != f.len() - 1 {
                return Err(Error::ModelMismatch(format!("piece on {} has wrong variable count", fmt_simplex(&f))));
            }
            *slot = p;
        }
        out.check_compatible(cx)?;
        Ok(out)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn pieces(&self) -> &BTreeMap<Simplex, PolyForm> {
        &self.pieces
    }

    pub fn piece(&self, facet: &[usize]) -> Option<&PolyForm> {
        self.pieces.get(facet)
    }

    /// Pieces agree on every shared face inside the open star.
    pub fn check_compatible(&self, _cx: &SimplicialComplex) -> Result<()> {
        let items: Vec<_> = self.pieces.iter().collect();
        for (i, (f, p)) in items.iter().enumerate() {
            for (g, q) in &items[i + 1..] {
                let face = intersect(f, g);
                if !is_face(&self.support, &face) || face.is_empty() {
                    continue;
                }
                if restrict_to_face(f, p, &face) != restrict_to_face(g, q, &face) {
                    return Err(Error::Invariant(format!(
                        "pieces on {} and {} disagree along {}",
                        fmt_simplex(f),
                        fmt_simplex(g),
                        fmt_simplex(&face)
                    )));
                }
            }
        }
        Ok(())
    }

    fn zip(&self, o: &PlForm, op: impl Fn(&PolyForm, &PolyForm) -> PolyForm) -> PlForm {
        assert_eq!(self.support, o.support, "support mismatch");
        let pieces = self.pieces.iter().map(|(f, p)| (f.clone(), op(p, &o.pieces[f]))).collect();
        PlForm { support: self.support.clone(), pieces }
    }

    fn map(&self, op: impl Fn(&PolyForm) -> PolyForm) -> PlForm {
        PlForm { support: self.support.clone(), pieces: self.pieces.iter().map(|(f, p)| (f.clone(), op(p))).collect() }
    }

    pub fn add(&self, o: &PlForm) -> PlForm {
        self.zip(o, PolyForm::add)
    }

    pub fn sub(&self, o: &PlForm) -> PlForm {
        self.zip(o, |a, b| a.add(&b.scale(&-Q::one())))
    }

    pub fn wedge(&self, o: &PlForm) -> PlForm {
        self.zip(o, PolyForm::wedge)
    }

    pub fn scale(&self, s: &Q) -> PlForm {
        self.map(|p| p.scale(s))
    }

    pub fn d(&self) -> PlForm {
        self.map(PolyForm::d)
    }

    pub fn part(&self, deg: usize) -> PlForm {
        self.map(|p| p.part(deg))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.values().all(PolyForm::is_zero)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pieces.values().flat_map(PolyForm::degrees).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Restrict to the smaller open star of `t ⊇ support`.
    pub fn restrict(&self, t: &[usize]) -> PlForm {
        debug_assert!(is_face(&self.support, t));
        let pieces = self.pieces.iter().filter(|(f, _)| is_face(t, f)).map(|(f, p)| (f.clone(), p.clone())).collect();
        PlForm { support: t.to_vec(), pieces }
    }

    /// Keep only the pieces on the given facets (restriction to a subcomplex).
    pub fn restrict_to_subcomplex(&self, sub: &SimplicialComplex) -> PlForm {
        let pieces = self.pieces.iter().filter(|(f, _)| sub.facets().contains(f)).map(|(f, p)| (f.clone(), p.clone())).collect();
        PlForm { support: self.support.clone(), pieces }
    }

    /// Constant value if the form is a constant function, else `None`.
    pub fn as_constant(&self) -> Option<Q> {
        let mut val: Option<Q> = None;
        for (f, p) in &self.pieces {
            let c = p.eval_at(&vec![Q::zero(); f.len() - 1]);
            if *p != PolyForm::constant(f.len() - 1, c.clone()) {
                return None;
            }
            match &val {
                Some(v) if *v != c => return None,
                _ => val = Some(c),
            }
        }
        Some(val.unwrap_or_else(Q::zero))
    }

    /// ∫ over the fundamental cycle; needs a global form on an oriented complex.
    pub fn integrate(&self, cx: &SimplicialComplex) -> Result<Q> {
        if !self.support.is_empty() || !cx.is_oriented() {
            return Err(Error::Unsupported("integration needs a global form on an oriented complex".into()));
        }
        let mut acc = Q::zero();
        for (f, p) in &self.pieces {
            acc += p.integrate_simplex() * Q::from_integer(BigInt::from(cx.orientation(f)));
        }
        Ok(acc)
    }

    /// Coordinates for linear algebra: (facet, term) → coefficient.
    pub(crate) fn coords(&self) -> BTreeMap<(Simplex, Vec<u32>, u32), Q> {
        let mut out = BTreeMap::new();
        for (f, p) in &self.pieces {
            for ((e, m), c) in p.terms() {
                out.insert((f.clone(), e.clone(), *m), c.clone());
            }
        }
        out
    }

    pub fn fmt_piece(&self, facet: &[usize]) -> String {
        self.pieces.get(facet).map_or_else(|| "0".into(), |p| p.fmt_with(&coord_names(facet)))
    }
}

/// Glue per-vertex forms that agree on overlaps into a global form.
/// On disagreement returns the offending edge.
pub fn glue(cx: &SimplicialComplex, local: &BTreeMap<usize, PlForm>) -> std::result::Result<PlForm, Simplex> {
    let mut out = PlForm::zero(cx, &[]);
    for f in cx.facets() {
        let first = &local[&f[0]].pieces[f];
        for v in &f[1..] {
            if local[v].pieces[f] != *first {
                return Err(vec![f[0], *v]);
            }
        }
        out.pieces.insert(f.clone(), first.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_4simplex() -> SimplicialComplex {
        let facets: Vec<Simplex> = (0..5).map(|i| (0..5).filter(|v| *v != i).collect()).collect();
        let orient = (0..5).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        SimplicialComplex::new(facets, orient).unwrap()
    }

    #[test]
    fn sphere_integer_cohomology() {
        let cx = boundary_4simplex();
        assert_eq!(cx.simplices(1).len(), 10);
        assert_eq!(cx.integer_cohomology(0), (1, vec![]));
        assert_eq!(cx.integer_cohomology(1), (0, vec![]));
        assert_eq!(cx.integer_cohomology(2), (0, vec![]));
        assert_eq!(cx.integer_cohomology(3), (1, vec![]));
    }

    #[test]
    fn barycentric_partition_of_unity() {
        let cx = boundary_4simplex();
        let sum = (0..5).fold(PlForm::zero(&cx, &[]), |acc, v| acc.add(&PlForm::bary(&cx, &[], v)));
        assert_eq!(sum.as_constant(), Some(Q::one()));
        let t0 = PlForm::bary(&cx, &[0], 0);
        t0.check_compatible(&cx).unwrap();
    }
}
