// SPDX-License-Identifier: Apache-2.0
//! Assembled finite complexes and their exact (co)homology.

use super::{CoeffCurrent, CoeffForm, CohCurrent, Twist};
use crate::cdga::Form;
use crate::coeff::{monomials, GradedPoly, Mono, Ring};
use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, kernel, Echelon, QMatrix, QVec};
use crate::rational::Q;
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    /// (Ω(X; N), D_H), cohomological.
    FormsN,
    /// (Ω_•(X; V), ∂_H), homological.
    ChainsV,
    /// Cohomological currents with V coefficients, δ_H.
    CurrentsV,
    /// Cohomological currents with N coefficients, D_H.
    CurrentsN,
    /// (Ω(X)[t, t⁻¹], d_H) with |t| = 2 and |p| ≤ t_band.
    Laurent { t_band: i64 },
}

impl ComplexKind {
    pub fn step(self) -> i64 {
        match self {
            ComplexKind::ChainsV => -1,
            _ => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ComplexKind::FormsN => "forms ⊗ N, D_H",
            ComplexKind::ChainsV => "currents ⊗ V, ∂_H",
            ComplexKind::CurrentsV => "cohomological currents ⊗ V, δ_H",
            ComplexKind::CurrentsN => "cohomological currents ⊗ N, D_H",
            ComplexKind::Laurent { .. } => "forms[t, 1/t], d_H",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    /// Basis element ⊗ coefficient monomial.
    C(usize, Mono),
    /// Basis element ⊗ t^p.
    L(usize, i64),
}

#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub n: i64,
    pub dim: usize,
    pub rank_z: usize,
    pub rank_b: usize,
    pub betti: usize,
    pub basis: Vec<QVec>,
}

/// A twisted complex assembled over its whole finite degree range.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    kind: ComplexKind,
    twist: Twist,
    max_coeff: i64,
    keys: BTreeMap<i64, Vec<Key>>,
    index: BTreeMap<i64, HashMap<Key, usize>>,
    diffs: BTreeMap<i64, QMatrix>,
}

impl TwistedComplex {
    pub fn new(kind: ComplexKind, twist: &Twist, max_coeff: i64) -> Self {
        let m = twist.model().clone();
        let mut keys: BTreeMap<i64, Vec<Key>> = BTreeMap::new();
        let dim = m.dim() as i64;
        for a in 0..m.len() {
            let da = m.deg(a) as i64;
            match kind {
                ComplexKind::Laurent { t_band } => {
                    for p in -t_band..=t_band {
                        keys.entry(da + 2 * p).or_default().push(Key::L(a, p));
                    }
                }
                _ => {
                    for j in (0..=max_coeff).step_by(2) {
                        let n = match kind {
                            ComplexKind::FormsN | ComplexKind::ChainsV => da + j,
                            ComplexKind::CurrentsN => dim - da + j,
                            ComplexKind::CurrentsV => dim - da - j,
                            ComplexKind::Laurent { .. } => unreachable!(),
                        };
                        for mono in monomials(j) {
                            keys.entry(n).or_default().push(Key::C(a, mono));
                        }
                    }
                }
            }
        }
        for v in keys.values_mut() {
            v.sort();
        }
        let index = keys
            .iter()
            .map(|(n, ks)| (*n, ks.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()))
            .collect();
        let mut c = TwistedComplex { kind, twist: twist.clone(), max_coeff, keys, index, diffs: BTreeMap::new() };
        let degrees: Vec<i64> = c.keys.keys().copied().collect();
        for n in degrees {
            let mat = c.assemble(n);
            c.diffs.insert(n, mat);
        }
        c
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn max_coeff(&self) -> i64 {
        self.max_coeff
    }

    pub fn keys(&self, n: i64) -> &[Key] {
        self.keys.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim_at(&self, n: i64) -> usize {
        self.keys(n).len()
    }

    /// Degrees where the complex has a nonzero term.
    pub fn degrees(&self) -> Vec<i64> {
        self.keys.keys().copied().collect()
    }

    /// Differential leaving degree `n`, as a (target × source) matrix.
    pub fn differential(&self, n: i64) -> QMatrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| QMatrix::zeros(self.dim_at(n + self.kind.step()), 0))
    }

    /// Degrees where truncation of the coefficient ring does not affect (co)homology.
    pub fn stable_band(&self) -> (i64, i64) {
        let dim = self.twist.model().dim() as i64;
        let mc = self.max_coeff;
        match self.kind {
            ComplexKind::FormsN | ComplexKind::ChainsV | ComplexKind::CurrentsN => (-4, mc - 1),
            ComplexKind::CurrentsV => (dim + 1 - mc, dim + 4),
            ComplexKind::Laurent { t_band } => (dim - 2 * t_band + 3, 2 * t_band - 1),
        }
    }

    fn source_element(&self, key: &Key) -> Element {
        let m = self.twist.model();
        match key {
            Key::C(a, mono) => {
                let ring = match self.kind {
                    ComplexKind::FormsN | ComplexKind::CurrentsN => Ring::N,
                    _ => Ring::V,
                };
                let c = GradedPoly::monomial(ring, mono.clone(), Q::one());
                match self.kind {
                    ComplexKind::FormsN => Element::Form(CoeffForm::elementary(m, *a, c)),
                    ComplexKind::ChainsV => Element::Chain(CoeffCurrent::elementary(m, *a, c)),
                    _ => Element::Coh(CohCurrent::elementary(m, *a, c)),
                }
            }
            Key::L(a, p) => Element::Laurent(vec![(*p, Form::basis(m, *a))]),
        }
    }

    fn assemble(&self, n: i64) -> QMatrix {
        let target = n + self.kind.step();
        let rows = self.dim_at(target);
        let src = self.keys(n);
        let empty = HashMap::new();
        let tindex = self.index.get(&target).unwrap_or(&empty);
        let mut mat = QMatrix::zeros(rows, src.len());
        for (j, key) in src.iter().enumerate() {
            let image = self.apply(&self.source_element(key)).expect("complex elements share the twist model");
            for (k, c) in image.terms() {
                if let Some(&i) = tindex.get(&k) {
                    mat.data[i][j] += c;
                }
            }
        }
        mat
    }

    fn apply(&self, e: &Element) -> Result<Element> {
        let t = &self.twist;
        Ok(match e {
            Element::Form(a) => Element::Form(a.twisted_d(t)?),
            Element::Chain(b) => Element::Chain(b.twisted_boundary(t, &Q::one())?),
            Element::Coh(c) => Element::Coh(c.twisted_b(t)?),
            Element::Laurent(terms) => {
                let mut out: Vec<(i64, Form)> = Vec::new();
                for (p, f) in terms {
                    out.push((*p, f.dform()));
                    out.push((p - 1, t.form().try_wedge(f)?.scale(&-Q::one())));
                }
                Element::Laurent(out)
            }
        })
    }

    /// Whether every composite of consecutive differentials is the zero matrix.
    pub fn d_squared_zero(&self) -> Vec<(i64, bool)> {
        let step = self.kind.step();
        self.degrees()
            .into_iter()
            .map(|n| {
                let a = self.differential(n);
                let b = self.differential(n + step);
                let ok = a.cols == 0 || b.cols == 0 || a.rows == 0 || b.mul(&a).is_zero();
                (n, ok)
            })
            .collect()
    }

    pub fn cohomology(&self, n: i64) -> Result<CohomologyResult> {
        let (lo, hi) = self.stable_band();
        if n < lo || n > hi {
            return Err(Error::Band { n, lo, hi });
        }
        let step = self.kind.step();
        let out = self.differential(n);
        let incoming = self.differential(n - step);
        let dim = self.dim_at(n);
        let rank_out = if dim == 0 { 0 } else { bareiss_rank(&out) };
        let rank_b = if incoming.cols == 0 { 0 } else { bareiss_rank(&incoming) };
        let rank_z = dim - rank_out;
        let mut basis = Vec::new();
        if rank_z > rank_b {
            let mut span = Echelon::new(dim);
            for j in 0..incoming.cols {
                let col: QVec = (0..incoming.rows).map(|i| incoming.data[i][j].clone()).collect();
                span.insert(&col);
            }
            let z = if out.rows == 0 { identity_vectors(dim) } else { kernel(&out) };
            for v in z {
                if span.insert(&v) {
                    basis.push(v);
                }
            }
        }
        debug_assert_eq!(basis.len(), rank_z - rank_b);
        Ok(CohomologyResult { n, dim, rank_z, rank_b, betti: rank_z - rank_b, basis })
    }

    fn vec_to_poly_comps(&self, n: i64, v: &[Q], ring: Ring) -> Vec<GradedPoly> {
        let m = self.twist.model();
        let mut comps = vec![GradedPoly::zero(ring); m.len()];
        for (k, c) in self.keys(n).iter().zip(v) {
            if let Key::C(a, mono) = k {
                comps[*a].add_term(mono.clone(), c.clone());
            }
        }
        comps
    }

    pub fn to_coeff_form(&self, n: i64, v: &[Q]) -> Result<CoeffForm> {
        CoeffForm::from_comps(self.twist.model(), Ring::N, self.vec_to_poly_comps(n, v, Ring::N))
    }

    pub fn to_coeff_current(&self, n: i64, v: &[Q]) -> Result<CoeffCurrent> {
        CoeffCurrent::from_comps(self.twist.model(), Ring::V, self.vec_to_poly_comps(n, v, Ring::V))
    }

    pub fn to_coh_current(&self, n: i64, v: &[Q]) -> Result<CohCurrent> {
        let ring = if self.kind == ComplexKind::CurrentsN { Ring::N } else { Ring::V };
        CohCurrent::from_comps(self.twist.model(), ring, self.vec_to_poly_comps(n, v, ring))
    }

    /// Σ_p form_p t^p.
    pub fn to_laurent(&self, n: i64, v: &[Q]) -> Vec<(i64, Form)> {
        let m = self.twist.model();
        let mut by_p: BTreeMap<i64, Form> = BTreeMap::new();
        for (k, c) in self.keys(n).iter().zip(v) {
            if let Key::L(a, p) = k {
                let f = by_p.entry(*p).or_insert_with(|| Form::zero(m));
                *f = f.try_add(&Form::basis(m, *a).scale(c)).expect("same model");
            }
        }
        by_p.into_iter().filter(|(_, f)| !f.is_zero()).collect()
    }
}

fn identity_vectors(n: usize) -> Vec<QVec> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

enum Element {
    Form(CoeffForm),
    Chain(CoeffCurrent),
    Coh(CohCurrent),
    Laurent(Vec<(i64, Form)>),
}

impl Element {
    fn terms(&self) -> Vec<(Key, Q)> {
        let comps = match self {
            Element::Form(a) => a.comps(),
            Element::Chain(b) => b.comps(),
            Element::Coh(c) => c.comps(),
            Element::Laurent(ts) => {
                let mut acc: BTreeMap<Key, Q> = BTreeMap::new();
                for (p, f) in ts {
                    for (a, c) in f.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            *acc.entry(Key::L(a, *p)).or_insert_with(Q::zero) += c;
                        }
                    }
                }
                return acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        };
        let mut out = Vec::new();
        for (a, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                out.push((Key::C(a, m.clone()), c.clone()));
            }
        }
        out
    }
}

/// The Laurent complex Ω(X)[t, t⁻¹] with d_H = d − H∧t⁻¹, truncated to |p| ≤ t_band.
pub fn build_k_complex(t: &Twist, t_band: i64) -> Result<TwistedComplex> {
    if t_band < 1 {
        return Err(Error::Degree(format!("t_band {t_band} must be at least 1")));
    }
    Ok(TwistedComplex::new(ComplexKind::Laurent { t_band }, t, 0))
}
