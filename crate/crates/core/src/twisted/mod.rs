// SPDX-License-Identifier: Apache-2.0
//! Twisted de Rham complexes with coefficients in V and N.
//!
//! * forms Ω(X; N) with D_H = d + H∧∂_z,
//! * homological currents Ω_•(X; V) with ∂_H = ∂ + H∧(u×−),
//! * cohomological currents with coefficients in V (δ_H = b + H∧(u×−)) or
//!   in N (D_H = b + H∧∂_z),
//! * the Laurent complex Ω(X)[t, t⁻¹] with d_H = d − H∧t⁻¹.
//!
//! On the finite closed models the homological and cohomological currents
//! share the dual basis e_a^*; they differ in grading and signs. The
//! cohomological degree of e_a^* is dim − |e_a|, with
//! (bT)(ω) = (−1)^{|T|+1} T(dω) and (ω∧T)(α) = (−1)^{|ω||T|} T(ω∧α).

mod checks;
mod complex;

pub use checks::{
    de_rham, perfect_pairing, ss_d3_check, verify_adjoint, verify_adjoint_with, AdjointReport, DeRham, SsReport,
    SsRow,
};
pub use complex::{build_k_complex, CohomologyResult, ComplexKind, Key, TwistedComplex};

use crate::cdga::{check_same_model, CdgaModel, CdgaMorphism, Current, Form};
use crate::coeff::{pair_total, star, GradedPoly, Mono, Ring};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use num::{One, Zero};
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// A closed 3-form on a model.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    h: Form,
}

impl Twist {
    pub fn new(h: Form) -> Result<Self> {
        if !h.is_homogeneous_of(3) {
            return Err(Error::Degree(format!("twist {h} is not a 3-form")));
        }
        if !h.dform().is_zero() {
            return Err(Error::Invariant(format!("twist {h} is not closed")));
        }
        Ok(Twist { h })
    }

    pub fn zero(model: &Arc<CdgaModel>) -> Self {
        Twist { h: Form::zero(model) }
    }

    pub fn parse(model: &Arc<CdgaModel>, s: &str) -> Result<Self> {
        Self::new(Form::parse(model, s)?)
    }

    pub fn form(&self) -> &Form {
        &self.h
    }

    pub fn model(&self) -> &Arc<CdgaModel> {
        self.h.model()
    }

    pub fn scaled(&self, c: &Q) -> Twist {
        Twist { h: self.h.scale(c) }
    }

    pub fn plus(&self, o: &Twist) -> Result<Twist> {
        Ok(Twist { h: self.h.try_add(&o.h)? })
    }

    pub fn pullback(&self, f: &CdgaMorphism) -> Result<Twist> {
        Twist::new(f.apply(&self.h)?)
    }
}

fn check_ring(p: Ring, want: Ring) -> Result<()> {
    if p != want {
        return Err(Error::RingMismatch { expected: want.name(), found: p.name() });
    }
    Ok(())
}

/// Σ_a e_a ⊗ c_a with c_a in V or N.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffForm {
    model: Arc<CdgaModel>,
    ring: Ring,
    comps: Vec<GradedPoly>,
}

/// Σ_a e_a^* ⊗ c_a, graded homologically (degree |e_a| + deg c_a).
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffCurrent {
    model: Arc<CdgaModel>,
    ring: Ring,
    comps: Vec<GradedPoly>,
}

/// Σ_a e_a^* ⊗ c_a, graded cohomologically.
///
/// Degree is (dim − |e_a|) + deg c_a for N coefficients and
/// (dim − |e_a|) − deg c_a for V coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CohCurrent {
    model: Arc<CdgaModel>,
    ring: Ring,
    comps: Vec<GradedPoly>,
}

macro_rules! coeff_common {
    ($t:ident) => {
        impl $t {
            pub fn zero(model: &Arc<CdgaModel>, ring: Ring) -> Self {
                $t { model: model.clone(), ring, comps: vec![GradedPoly::zero(ring); model.len()] }
            }

            pub fn from_comps(model: &Arc<CdgaModel>, ring: Ring, comps: Vec<GradedPoly>) -> Result<Self> {
                if comps.len() != model.len() {
                    return Err(Error::ModelMismatch(format!("{} components for model {}", comps.len(), model.name())));
                }
                for c in &comps {
                    check_ring(c.ring(), ring)?;
                }
                Ok($t { model: model.clone(), ring, comps })
            }

            /// Basis element `a` tensored with `c`.
            pub fn elementary(model: &Arc<CdgaModel>, a: usize, c: GradedPoly) -> Self {
                let ring = c.ring();
                let mut out = Self::zero(model, ring);
                out.comps[a] = c;
                out
            }

            pub fn model(&self) -> &Arc<CdgaModel> {
                &self.model
            }
            pub fn ring(&self) -> Ring {
                self.ring
            }
            pub fn comps(&self) -> &[GradedPoly] {
                &self.comps
            }
            pub fn comp(&self, a: usize) -> &GradedPoly {
                &self.comps[a]
            }
            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(GradedPoly::is_zero)
            }

            fn check_compat(&self, o: &Self) -> Result<()> {
                check_same_model(&self.model, &o.model)?;
                check_ring(o.ring, self.ring)
            }

            pub fn try_add(&self, o: &Self) -> Result<Self> {
                self.check_compat(o)?;
                Ok($t { model: self.model.clone(), ring: self.ring, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() })
            }

            pub fn try_sub(&self, o: &Self) -> Result<Self> {
                self.try_add(&o.scale(&-Q::one()))
            }

            pub fn scale(&self, c: &Q) -> Self {
                $t { model: self.model.clone(), ring: self.ring, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
            }

            pub fn add_term(&mut self, a: usize, m: Mono, c: Q) {
                self.comps[a].add_term(m, c);
            }

            /// Components restricted to total degree `n`.
            pub fn homogeneous(&self, n: i64) -> Self {
                let comps = (0..self.model.len())
                    .map(|a| {
                        let want = self.coeff_degree_for(a, n);
                        match want {
                            Some(j) => self.comps[a].homogeneous(j),
                            None => GradedPoly::zero(self.ring),
                        }
                    })
                    .collect();
                $t { model: self.model.clone(), ring: self.ring, comps }
            }

            /// Total degrees carried by nonzero terms.
            pub fn total_degrees(&self) -> Vec<i64> {
                let mut out: Vec<i64> = Vec::new();
                for (a, p) in self.comps.iter().enumerate() {
                    for (m, _) in p.terms() {
                        out.push(self.total_degree_of(a, m.degree()));
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            }

            /// Random element of total degree `n` with coefficient degrees ≤ `max`.
            pub fn random<R: Rng>(model: &Arc<CdgaModel>, ring: Ring, n: i64, max: i64, bound: i64, rng: &mut R) -> Self {
                let mut out = Self::zero(model, ring);
                for a in 0..model.len() {
                    let Some(j) = out.coeff_degree_for(a, n) else { continue };
                    if j < 0 || j > max {
                        continue;
                    }
                    for m in crate::coeff::monomials(j) {
                        out.comps[a].add_term(m, qi(rng.gen_range(-bound..=bound)));
                    }
                }
                out
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (a, p) in self.comps.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    if !first {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{}{}⊗({})", self.model.basis()[a].sym, Self::MARK, p)?;
                    first = false;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
    };
}

coeff_common!(CoeffForm);
coeff_common!(CoeffCurrent);
coeff_common!(CohCurrent);

impl CoeffForm {
    const MARK: &'static str = "";

    fn total_degree_of(&self, a: usize, j: i64) -> i64 {
        self.model.deg(a) as i64 + j
    }
    fn coeff_degree_for(&self, a: usize, n: i64) -> Option<i64> {
        Some(n - self.model.deg(a) as i64)
    }

    /// ω ⊗ c for a form ω.
    pub fn from_form(omega: &Form, c: &GradedPoly) -> Self {
        let comps = omega.coeffs().iter().map(|x| c.scale(x)).collect();
        CoeffForm { model: omega.model().clone(), ring: c.ring(), comps }
    }

    /// The form-valued coefficient of a monomial.
    pub fn form_coeff(&self, m: &Mono) -> Form {
        let c = self.comps.iter().map(|p| p.coeff(m)).collect();
        Form::from_coeffs(&self.model, c).expect("same model")
    }

    /// (ω ⊗ c) ↦ (β ∧ ω) ⊗ c.
    pub fn wedge_left(&self, beta: &Form) -> Result<Self> {
        check_same_model(&self.model, beta.model())?;
        let mut out = Self::zero(&self.model, self.ring);
        for (a, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let prod = beta.try_wedge(&Form::basis(&self.model, a))?;
            for (b, x) in prod.coeffs().iter().enumerate() {
                if !x.is_zero() {
                    out.comps[b] = &out.comps[b] + &p.scale(x);
                }
            }
        }
        Ok(out)
    }

    /// d on the form factor.
    pub fn d_form(&self) -> Self {
        let mut out = Self::zero(&self.model, self.ring);
        for (a, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, x) in self.model.d_of(a) {
                out.comps[*b] = &out.comps[*b] + &p.scale(x);
            }
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        CoeffForm { model: self.model.clone(), ring: self.ring, comps: self.comps.iter().map(f).collect() }
    }

    /// d + H∧∂_z on N-valued forms, or d + H∧(u×−) on V-valued forms.
    pub fn twisted_d(&self, t: &Twist) -> Result<Self> {
        check_same_model(&self.model, t.model())?;
        let lowered = match self.ring {
            Ring::N => self.map_coeffs(GradedPoly::d0),
            Ring::V => self.map_coeffs(GradedPoly::times_gen0),
        };
        self.d_form().try_add(&lowered.wedge_left(t.form())?)
    }

    pub fn pullback(&self, f: &CdgaMorphism) -> Result<Self> {
        check_same_model(&self.model, f.src())?;
        let mut out = Self::zero(f.dst(), self.ring);
        for (a, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let img = f.apply(&Form::basis(&self.model, a))?;
            for (b, x) in img.coeffs().iter().enumerate() {
                if !x.is_zero() {
                    out.comps[b] = &out.comps[b] + &p.scale(x);
                }
            }
        }
        Ok(out)
    }

    /// Fiber integration over the second factor of a product model.
    pub fn fiber_integrate(&self) -> Result<Self> {
        let fac = self.model.factors().ok_or_else(|| Error::Unsupported(format!("model {} is not a product", self.model.name())))?;
        let nf = fac.fiber.len();
        let mut out = Self::zero(&fac.base, self.ring);
        for (k, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let w = fac.fiber.integral_of(k % nf);
            if !w.is_zero() {
                out.comps[k / nf] = &out.comps[k / nf] + &p.scale(w);
            }
        }
        Ok(out)
    }

    /// ι: forms into cohomological currents, ι(β)(α) = ∫ β∧α.
    pub fn to_coh_current(&self) -> CohCurrent {
        let m = &self.model;
        let mut out = CohCurrent::zero(m, self.ring);
        for (a, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for b in 0..m.len() {
                let w = m.mul_of(a, b).iter().fold(Q::zero(), |acc, (k, x)| acc + x * m.integral_of(*k));
                if !w.is_zero() {
                    out.comps[b] = &out.comps[b] + &p.scale(&w);
                }
            }
        }
        out
    }
}

/// D_H on N-valued forms.
pub fn apply_dh(t: &Twist, a: &CoeffForm) -> Result<CoeffForm> {
    check_ring(a.ring, Ring::N)?;
    a.twisted_d(t)
}

impl CoeffCurrent {
    const MARK: &'static str = "^";

    fn total_degree_of(&self, a: usize, j: i64) -> i64 {
        self.model.deg(a) as i64 + j
    }
    fn coeff_degree_for(&self, a: usize, n: i64) -> Option<i64> {
        Some(n - self.model.deg(a) as i64)
    }

    /// T ⊗ c for a current T.
    pub fn from_current(t: &Current, c: &GradedPoly) -> Self {
        let comps = t.coeffs().iter().map(|x| c.scale(x)).collect();
        CoeffCurrent { model: t.model().clone(), ring: c.ring(), comps }
    }

    /// Evaluation of the current part against a form, as a coefficient.
    pub fn eval_form(&self, omega: &Form) -> Result<GradedPoly> {
        check_same_model(&self.model, omega.model())?;
        let mut out = GradedPoly::zero(self.ring);
        for (a, p) in self.comps.iter().enumerate() {
            let x = omega.coeff(a);
            if !x.is_zero() {
                out = &out + &p.scale(x);
            }
        }
        Ok(out)
    }

    /// (β∧T)(α) = T(β∧α) on the current factor.
    pub fn wedge_form(&self, beta: &Form) -> Result<Self> {
        check_same_model(&self.model, beta.model())?;
        let m = &self.model;
        let mut out = Self::zero(m, self.ring);
        for b in 0..m.len() {
            let prod = beta.try_wedge(&Form::basis(m, b))?;
            let mut acc = GradedPoly::zero(self.ring);
            for (a, x) in prod.coeffs().iter().enumerate() {
                if !x.is_zero() && !self.comps[a].is_zero() {
                    acc = &acc + &self.comps[a].scale(x);
                }
            }
            out.comps[b] = acc;
        }
        Ok(out)
    }

    /// ∂ on the current factor: (∂T)(α) = T(dα).
    pub fn boundary(&self) -> Self {
        let m = &self.model;
        let mut out = Self::zero(m, self.ring);
        for j in 0..m.len() {
            let mut acc = GradedPoly::zero(self.ring);
            for (i, x) in m.d_of(j) {
                if !self.comps[*i].is_zero() {
                    acc = &acc + &self.comps[*i].scale(x);
                }
            }
            out.comps[j] = acc;
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        CoeffCurrent { model: self.model.clone(), ring: self.ring, comps: self.comps.iter().map(f).collect() }
    }

    pub(crate) fn twisted_boundary(&self, t: &Twist, sign: &Q) -> Result<Self> {
        check_same_model(&self.model, t.model())?;
        let raised = self.map_coeffs(GradedPoly::times_gen0).wedge_form(t.form())?;
        self.boundary().try_add(&raised.scale(sign))
    }

    /// Pushforward along a CDGA map f: X → M read as f*: Ω(M) ← Ω(X);
    /// the current on the source of `f` is transported to its target dual.
    pub fn pushforward(&self, f: &CdgaMorphism) -> Result<Self> {
        // self lives on f.dst(); result on f.src(): (f_*T)(ω) = T(f*ω)
        check_same_model(&self.model, f.dst())?;
        let src = f.src();
        let mut out = Self::zero(src, self.ring);
        for a in 0..src.len() {
            let img = f.apply(&Form::basis(src, a))?;
            out.comps[a] = self.eval_form(&img)?;
        }
        Ok(out)
    }
}

/// ∂_H on V-valued homological currents.
pub fn apply_dh_chain(t: &Twist, b: &CoeffCurrent) -> Result<CoeffCurrent> {
    check_ring(b.ring, Ring::V)?;
    b.twisted_boundary(t, &Q::one())
}

/// ⟨ω⊗φ, T⊗v⟩ = T(ω)·⟨φ, v⟩, extended bilinearly.
pub fn pair(alpha: &CoeffForm, beta: &CoeffCurrent) -> Result<Q> {
    check_same_model(&alpha.model, &beta.model)?;
    check_ring(alpha.ring, Ring::N)?;
    check_ring(beta.ring, Ring::V)?;
    let (da, db) = (alpha.total_degrees(), beta.total_degrees());
    if da.len() == 1 && db.len() == 1 && da != db {
        return Err(Error::Degree(format!("pairing total degree {} against {}", da[0], db[0])));
    }
    Ok(alpha.comps.iter().zip(&beta.comps).fold(Q::zero(), |acc, (p, v)| acc + pair_total(p, v)))
}

impl CohCurrent {
    const MARK: &'static str = "^";

    fn coh_deg(&self, a: usize) -> i64 {
        (self.model.dim() - self.model.deg(a)) as i64
    }
    fn total_degree_of(&self, a: usize, j: i64) -> i64 {
        match self.ring {
            Ring::N => self.coh_deg(a) + j,
            Ring::V => self.coh_deg(a) - j,
        }
    }
    fn coeff_degree_for(&self, a: usize, n: i64) -> Option<i64> {
        Some(match self.ring {
            Ring::N => n - self.coh_deg(a),
            Ring::V => self.coh_deg(a) - n,
        })
    }

    /// T ⊗ c for a current T.
    pub fn from_current(t: &Current, c: &GradedPoly) -> Self {
        let comps = t.coeffs().iter().map(|x| c.scale(x)).collect();
        CohCurrent { model: t.model().clone(), ring: c.ring(), comps }
    }

    /// The integration current [X] ⊗ c.
    pub fn fundamental(model: &Arc<CdgaModel>, c: &GradedPoly) -> Self {
        Self::from_current(&Current::fundamental(model), c)
    }

    /// b(T)(ω) = (−1)^{|T|+1} T(dω) on the current factor.
    pub fn b(&self) -> Self {
        let m = &self.model;
        let mut out = Self::zero(m, self.ring);
        for j in 0..m.len() {
            let mut acc = GradedPoly::zero(self.ring);
            for (i, x) in m.d_of(j) {
                if self.comps[*i].is_zero() {
                    continue;
                }
                let sign = if (self.coh_deg(*i) + 1) % 2 == 0 { Q::one() } else { -Q::one() };
                acc = &acc + &self.comps[*i].scale(&(x * sign));
            }
            out.comps[j] = acc;
        }
        out
    }

    /// (ω∧T)(α) = (−1)^{|ω||T|} T(ω∧α) on the current factor.
    pub fn wedge_form(&self, omega: &Form) -> Result<Self> {
        check_same_model(&self.model, omega.model())?;
        let m = &self.model;
        let mut out = Self::zero(m, self.ring);
        for (c, w) in omega.coeffs().iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for b in 0..m.len() {
                for (a, x) in m.mul_of(c, b) {
                    if self.comps[*a].is_zero() {
                        continue;
                    }
                    let sign = if (m.deg(c) as i64 * self.coh_deg(*a)) % 2 == 0 { Q::one() } else { -Q::one() };
                    out.comps[b] = &out.comps[b] + &self.comps[*a].scale(&(w * x * sign));
                }
            }
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        CohCurrent { model: self.model.clone(), ring: self.ring, comps: self.comps.iter().map(f).collect() }
    }

    /// δ_H = b + H∧(u×−) for V coefficients, D_H = b + H∧∂_z for N coefficients.
    pub fn twisted_b(&self, t: &Twist) -> Result<Self> {
        check_same_model(&self.model, t.model())?;
        let shifted = match self.ring {
            Ring::V => self.map_coeffs(GradedPoly::times_gen0),
            Ring::N => self.map_coeffs(GradedPoly::d0),
        };
        self.b().try_add(&shifted.wedge_form(t.form())?)
    }

    /// Value on an N-valued (resp. V-valued) form: Σ T(ω)·⟨coefficients⟩,
    /// defined for a V-current against an N-form.
    pub fn eval_form_n(&self, alpha: &CoeffForm) -> Result<Q> {
        check_same_model(&self.model, &alpha.model)?;
        check_ring(self.ring, Ring::V)?;
        check_ring(alpha.ring, Ring::N)?;
        Ok(alpha.comps.iter().zip(&self.comps).fold(Q::zero(), |acc, (p, v)| acc + pair_total(p, v)))
    }
}

/// (ω⊗φ) ∧⋆ (T⊗v) = (ω∧T) ⊗ (φ⋆v).
pub fn mixed_product(alpha: &CoeffForm, beta: &CohCurrent) -> Result<CohCurrent> {
    check_same_model(&alpha.model, &beta.model)?;
    check_ring(alpha.ring, Ring::N)?;
    check_ring(beta.ring, Ring::V)?;
    let m = &alpha.model;
    let mut out = CohCurrent::zero(m, Ring::N);
    for (c, phi) in alpha.comps.iter().enumerate() {
        if phi.is_zero() {
            continue;
        }
        for (a, v) in beta.comps.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let starred = star(phi, v)?;
            if starred.is_zero() {
                continue;
            }
            let t = CohCurrent::elementary(m, a, starred);
            let w = t.wedge_form(&Form::basis(m, c))?;
            out = out.try_add(&w)?;
        }
    }
    Ok(out)
}

/// (ω⊗φ) ∧⋆ (β⊗v) = (ω∧β) ⊗ (φ⋆v) for an N-form and a V-form.
pub fn star_wedge_forms(alpha: &CoeffForm, beta: &CoeffForm) -> Result<CoeffForm> {
    check_same_model(&alpha.model, &beta.model)?;
    check_ring(alpha.ring, Ring::N)?;
    check_ring(beta.ring, Ring::V)?;
    let m = &alpha.model;
    let mut out = CoeffForm::zero(m, Ring::N);
    for (c, phi) in alpha.comps.iter().enumerate() {
        if phi.is_zero() {
            continue;
        }
        for (a, v) in beta.comps.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let s = star(phi, v)?;
            for (k, x) in m.mul_of(c, a) {
                out.comps[*k] = &out.comps[*k] + &s.scale(x);
            }
        }
    }
    Ok(out)
}
