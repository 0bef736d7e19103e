// SPDX-License-Identifier: Apache-2.0
//! Differential twisted Spin^c cycles, the twisted Chern–Weil current,
//! Anderson-dual pairs (ω, h) and the anomaly pair of a twisted K-class.
//!
//! A cycle over (X, H) is (M, f, p(M), κ_M, φ) with dκ_M = f*H. The map f
//! is carried by its pullback, a CDGA map from the X-model to the M-model.
//! Its Chern–Weil current is
//!
//! ```text
//! cw(ω ⊗ p_I z^k) = ∫_M f*ω ∧ p_I(M) ∧ κ_M^k
//! ```
//!
//! and R(c) = cw(c) − ∂_H φ. A pair (ω, h) has D_H ω = 0 and h(a(φ)) ≡ ⟨φ, ω⟩.

pub mod file;
mod push;

pub use push::{cw_cochain, cw_cochain_form, fiber_product, push_form, pushforward, s1_integration, CobordCochain};

use crate::cdga::{check_same_model, CdgaModel, CdgaMorphism, Form};
use crate::chern::matform::MatForm;
use crate::chern::{cs_super, r_k, DiffKClass, SuperModuleConn};
use crate::coeff::{ahat_series, exp_zeta, monomials, GradedPoly, Mono, Ring};
use crate::error::{Error, Result};
use crate::eta::eta_super;
use crate::rational::{factorial, fmt_mod1, fmt_q, mod1, Q};
use crate::twisted::{apply_dh, apply_dh_chain, mixed_product, pair, CoeffCurrent, CoeffForm, CohCurrent, Twist};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Largest coefficient degree used when assembling series.
pub const MAX_COEFF_DEGREE: i64 = 20;

/// Geometric part (M, f, p(M), κ_M) of a cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleGeom {
    pub m: Arc<CdgaModel>,
    pub pullback: CdgaMorphism,
    pub pont: Vec<Form>,
    pub kappa: Form,
    /// Holonomy of the Spin^c connection along a circle, used by η̄.
    pub spin_shift: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffCycle {
    name: String,
    twist: Twist,
    geom: Option<CycleGeom>,
    phi: CoeffCurrent,
}

fn homogeneous_degree(w: &Form) -> Option<usize> {
    match w.degrees().as_slice() {
        [] => None,
        [d] => Some(*d),
        _ => Some(usize::MAX),
    }
}

impl DiffCycle {
    pub fn new(name: impl Into<String>, twist: Twist, geom: Option<CycleGeom>, phi: CoeffCurrent) -> Result<Self> {
        let x = twist.model();
        check_same_model(phi.model(), x)?;
        if phi.ring() != Ring::V {
            return Err(Error::RingMismatch { expected: "V", found: phi.ring().name() });
        }
        if let Some(g) = &geom {
            check_same_model(g.pullback.src(), x)?;
            check_same_model(g.pullback.dst(), &g.m)?;
            check_same_model(g.kappa.model(), &g.m)?;
            if !matches!(homogeneous_degree(&g.kappa), None | Some(2)) {
                return Err(Error::Degree(format!("κ_M = {} is not a 2-form", g.kappa)));
            }
            for (i, p) in g.pont.iter().enumerate() {
                check_same_model(p.model(), &g.m)?;
                if !homogeneous_degree(p).is_none() && homogeneous_degree(p) != Some(4 * (i + 1)) {
                    return Err(Error::Degree(format!("p{} must have degree {}", i + 1, 4 * (i + 1))));
                }
                if !p.dform().is_zero() {
                    return Err(Error::Invariant(format!("p{} is not closed", i + 1)));
                }
            }
            if g.kappa.dform() != g.pullback.apply(twist.form())? {
                return Err(Error::Invariant(format!("dκ_M ≠ f*H on {}", g.m.name())));
            }
            let want = g.m.dim() as i64 + 1;
            if phi.total_degrees().iter().any(|d| *d != want) {
                return Err(Error::Degree(format!("φ must have degree {want} on a cycle of dimension {}", g.m.dim())));
            }
        } else if phi.total_degrees().len() > 1 {
            return Err(Error::Degree("φ must be homogeneous".into()));
        }
        Ok(DiffCycle { name: name.into(), twist, geom, phi })
    }

    /// The cycle (M, f, κ_M) with φ = 0.
    pub fn geometric(name: impl Into<String>, twist: Twist, geom: CycleGeom) -> Result<Self> {
        let phi = CoeffCurrent::zero(twist.model(), Ring::V);
        Self::new(name, twist, Some(geom), phi)
    }

    pub fn empty(twist: &Twist) -> Self {
        DiffCycle { name: "empty".into(), twist: twist.clone(), geom: None, phi: CoeffCurrent::zero(twist.model(), Ring::V) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn twist(&self) -> &Twist {
        &self.twist
    }
    pub fn model(&self) -> &Arc<CdgaModel> {
        self.twist.model()
    }
    pub fn geom(&self) -> Option<&CycleGeom> {
        self.geom.as_ref()
    }
    pub fn phi(&self) -> &CoeffCurrent {
        &self.phi
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same geometry with φ replaced.
    pub fn with_phi(&self, phi: CoeffCurrent) -> Result<Self> {
        Self::new(self.name.clone(), self.twist.clone(), self.geom.clone(), phi)
    }

    /// dim M, or deg φ − 1 for an empty cycle; `None` for the zero cycle.
    pub fn degree(&self) -> Option<i64> {
        match &self.geom {
            Some(g) => Some(g.m.dim() as i64),
            None => self.phi.total_degrees().first().map(|d| d - 1),
        }
    }
}

/// Substitutes κ for z and p_i for the Pontryagin generators.
pub fn char_form(poly: &GradedPoly, kappa: &Form, pont: &[Form]) -> Result<Form> {
    let m = kappa.model();
    let mut out = Form::zero(m);
    for (mono, c) in poly.terms() {
        let mut t = Form::one(m);
        for (slot, &e) in mono.exps().iter().enumerate() {
            let g = if slot == 0 { kappa.clone() } else { pont.get(slot - 1).cloned().unwrap_or_else(|| Form::zero(m)) };
            for _ in 0..e {
                t = t.try_wedge(&g)?;
            }
        }
        out = out.try_add(&t.scale(c))?;
    }
    Ok(out)
}

/// ω ⊗ p_I z^k ↦ ∫_M f*ω ∧ p_I ∧ κ^k as a V-valued current on the source of `f`.
pub(crate) fn cw_current(f: &CdgaMorphism, kappa: &Form, pont: &[Form]) -> Result<CoeffCurrent> {
    let x = f.src();
    let dim = f.dst().dim() as i64;
    let mut out = CoeffCurrent::zero(x, Ring::V);
    for a in 0..x.len() {
        let fa = f.apply(&Form::basis(x, a))?;
        if fa.is_zero() {
            continue;
        }
        let j = dim - x.deg(a) as i64;
        if j < 0 {
            continue;
        }
        for m in monomials(j) {
            let w = char_form(&GradedPoly::monomial(Ring::N, m.clone(), Q::one()), kappa, pont)?;
            let val = fa.try_wedge(&w)?.integrate();
            if !val.is_zero() {
                let k = factorial(m.exp(0));
                out.add_term(a, m, val / Q::from_integer(k));
            }
        }
    }
    Ok(out)
}

pub fn cw_cycle(c: &DiffCycle) -> Result<CoeffCurrent> {
    match &c.geom {
        None => Ok(CoeffCurrent::zero(c.model(), Ring::V)),
        Some(g) => cw_current(&g.pullback, &g.kappa, &g.pont),
    }
}

/// cw(c) − ∂_H φ.
pub fn r_spinc(c: &DiffCycle) -> Result<CoeffCurrent> {
    cw_cycle(c)?.try_sub(&apply_dh_chain(&c.twist, &c.phi)?)
}

/// φ ↦ (∅, −φ); R∘a = ∂_H.
pub fn a_spinc(twist: &Twist, phi: &CoeffCurrent) -> Result<DiffCycle> {
    DiffCycle::new("a(phi)", twist.clone(), None, phi.scale(&-Q::one()))
}

/// Topological part of a cycle: the map f with its connection data forgotten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopTag {
    Empty,
    Map { model: String, dim: usize, images: Vec<String> },
}

impl fmt::Display for TopTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopTag::Empty => f.write_str("∅"),
            TopTag::Map { model, dim, images } => write!(f, "{model} (dim {dim}) via [{}]", images.join(", ")),
        }
    }
}

pub fn i_spinc(c: &DiffCycle) -> TopTag {
    match &c.geom {
        None => TopTag::Empty,
        Some(g) => {
            let x = c.model();
            let images = (1..x.len()).map(|i| format!("{} ↦ {}", x.basis()[i].sym, g.pullback.apply(&Form::basis(x, i)).expect("same model"))).collect();
            TopTag::Map { model: g.m.name().to_string(), dim: g.m.dim(), images }
        }
    }
}

/// The η̄ term of an evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum EtaTerm {
    Absent,
    Value(Q),
    Unavailable(String),
}

impl fmt::Display for EtaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaTerm::Absent => f.write_str("-"),
            EtaTerm::Value(q) => f.write_str(&fmt_mod1(q)),
            EtaTerm::Unavailable(_) => f.write_str("unavailable"),
        }
    }
}

/// h(c) = η̄ + form terms mod 1.
#[derive(Clone, Debug, PartialEq)]
pub struct HEval {
    pub form_terms: Q,
    pub eta: EtaTerm,
}

impl HEval {
    pub fn value(&self) -> Option<Q> {
        match &self.eta {
            EtaTerm::Absent => Some(mod1(&self.form_terms)),
            EtaTerm::Value(e) => Some(mod1(&(e + &self.form_terms))),
            EtaTerm::Unavailable(_) => None,
        }
    }

    pub fn fmt_value(&self) -> String {
        self.value().map(|v| fmt_mod1(&v)).unwrap_or_else(|| "unavailable".into())
    }

    pub fn fmt_form_terms(&self) -> String {
        fmt_q(&self.form_terms)
    }
}

#[derive(Clone, Debug)]
pub struct AnomalyData {
    pub class: DiffKClass<Form>,
    /// {ρ ⊗ Â e^z} in total degree n − 1.
    pub rho_series: CoeffForm,
}

/// Intensional description of h.
#[derive(Clone, Debug)]
pub enum Evaluator {
    Anomaly(Box<AnomalyData>),
    /// h(c) = ⟨R(c), α⟩.
    J(CoeffForm),
    /// Values by cycle name.
    Tabulated(BTreeMap<String, Q>),
    Pushforward(Box<AndersonPair>, Box<CobordCochain>),
}

#[derive(Clone, Debug)]
pub struct AndersonPair {
    twist: Twist,
    degree: i64,
    omega: CoeffForm,
    h: Evaluator,
}

impl AndersonPair {
    pub fn new(twist: Twist, degree: i64, omega: CoeffForm, h: Evaluator) -> Result<Self> {
        check_same_model(omega.model(), twist.model())?;
        if omega.ring() != Ring::N {
            return Err(Error::RingMismatch { expected: "N", found: omega.ring().name() });
        }
        if omega.total_degrees().iter().any(|d| *d != degree) {
            return Err(Error::Degree(format!("ω must have total degree {degree}")));
        }
        if !apply_dh(&twist, &omega)?.is_zero() {
            return Err(Error::Invariant("D_H ω ≠ 0".into()));
        }
        Ok(AndersonPair { twist, degree, omega, h })
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn omega(&self) -> &CoeffForm {
        &self.omega
    }
    pub fn evaluator(&self) -> &Evaluator {
        &self.h
    }

    pub fn evaluate(&self, c: &DiffCycle) -> Result<HEval> {
        check_same_model(c.model(), self.twist.model())?;
        if c.twist != self.twist {
            return Err(Error::TwistMismatch(format!("cycle twist {} against pair twist {}", c.twist.form(), self.twist.form())));
        }
        if let Some(d) = c.degree() {
            if d != self.degree - 1 {
                return Err(Error::Degree(format!("cycle of degree {d} for a pair of degree {}", self.degree)));
            }
        }
        match &self.h {
            Evaluator::Anomaly(data) => {
                let cw = cw_cycle(c)?;
                let form_terms = -pair(&data.rho_series, &cw)? - pair(&self.omega, &c.phi)?;
                Ok(HEval { form_terms, eta: eta_term(&data.class, c) })
            }
            Evaluator::J(alpha) => Ok(HEval { form_terms: pair(alpha, &r_spinc(c)?)?, eta: EtaTerm::Absent }),
            Evaluator::Tabulated(t) => {
                let v = t.get(&c.name).ok_or_else(|| Error::Unknown(format!("cycle '{}' not tabulated", c.name)))?;
                Ok(HEval { form_terms: v.clone(), eta: EtaTerm::Absent })
            }
            Evaluator::Pushforward(inner, cochain) => inner.evaluate(&fiber_product(c, cochain)?),
        }
    }

    /// h(a(φ)) − ⟨φ, ω⟩ mod 1; zero when compatible, `None` if h is unavailable.
    pub fn compatibility_defect(&self, phi: &CoeffCurrent) -> Result<Option<Q>> {
        let h = self.evaluate(&a_spinc(&self.twist, phi)?)?;
        let w = pair(&self.omega, phi)?;
        Ok(h.value().map(|v| mod1(&(v - w))))
    }
}

/// α ↦ (D_H α, j(α)).
pub fn a_iomega(twist: &Twist, alpha: &CoeffForm, n: i64) -> Result<AndersonPair> {
    if alpha.total_degrees().iter().any(|d| *d != n - 1) {
        return Err(Error::Degree(format!("α must have total degree {}", n - 1)));
    }
    AndersonPair::new(twist.clone(), n, apply_dh(twist, alpha)?, Evaluator::J(alpha.clone()))
}

/// D_{H₁+H₂}(α ∧⋆ β) − D_{H₁}α ∧⋆ β − (−1)^{|α|} α ∧⋆ δ_{H₂}β.
pub fn leibniz_residual(h1: &Twist, h2: &Twist, alpha: &CoeffForm, beta: &CohCurrent) -> Result<CohCurrent> {
    let deg = match alpha.total_degrees().as_slice() {
        [] => return Ok(CohCurrent::zero(alpha.model(), Ring::N)),
        [d] => *d,
        _ => return Err(Error::Degree("α must be homogeneous".into())),
    };
    let h3 = h1.plus(h2)?;
    let lhs = mixed_product(alpha, beta)?.twisted_b(&h3)?;
    let t1 = mixed_product(&apply_dh(h1, alpha)?, beta)?;
    let sign = if deg % 2 == 0 { Q::one() } else { -Q::one() };
    let t2 = mixed_product(alpha, &beta.twisted_b(h2)?)?.scale(&sign);
    lhs.try_sub(&t1)?.try_sub(&t2)
}

/// Â e^z through degree n.
pub fn ahat_exp_zeta(n: i64) -> Result<GradedPoly> {
    let t = n - n.rem_euclid(2);
    let s = ahat_series(t)?.value.try_mul(&exp_zeta(t)?)?;
    Ok(s.truncate(t))
}

/// The anomaly pair of a K-class over the inverse twist, in total degree n.
pub fn anomaly_map(k: &DiffKClass<Form>, twist: &Twist, n: i64) -> Result<AndersonPair> {
    let x = twist.model();
    check_same_model(k.twist().model(), x)?;
    if *k.twist() != twist.form().scale(&-Q::one()) {
        return Err(Error::TwistMismatch(format!("K-class twist {} is not the inverse of {}", k.twist(), twist.form())));
    }
    let hi = x.dim() as i64 + MAX_COEFF_DEGREE;
    if n < 0 || n % 2 != 0 || n > hi {
        return Err(Error::Band { n, lo: 0, hi });
    }
    let series = ahat_exp_zeta(n)?;
    let omega = CoeffForm::from_form(&r_k(k), &series).homogeneous(n);
    let rho_series = CoeffForm::from_form(&k.rho, &series).homogeneous(n - 1);
    let data = AnomalyData { class: k.clone(), rho_series };
    AndersonPair::new(twist.clone(), n, omega, Evaluator::Anomaly(Box::new(data)))
}

fn pull_matrix(f: &CdgaMorphism, m: &MatForm<Form>) -> Result<Vec<Vec<Q>>> {
    (0..m.rank()).map(|i| (0..m.rank()).map(|j| Ok(f.apply(m.get(i, j))?.integrate())).collect()).collect()
}

fn diagonal_if_triangular(a: &[Vec<Q>]) -> Option<Vec<Q>> {
    let n = a.len();
    let upper = (0..n).all(|i| (0..i).all(|j| a[i][j].is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| a[i][j].is_zero()));
    (upper || lower).then(|| (0..n).map(|i| a[i][i].clone()).collect())
}

/// η̄ of the Spin^c Dirac operator on M twisted by f*ℰ.
pub fn eta_term(k: &DiffKClass<Form>, c: &DiffCycle) -> EtaTerm {
    let (p, m) = (&k.gen.plus, &k.gen.minus);
    let Some(g) = &c.geom else { return EtaTerm::Value(Q::zero()) };
    if p.rank() == 0 && m.rank() == 0 {
        return EtaTerm::Value(Q::zero());
    }
    if g.m.dim() != 1 {
        return EtaTerm::Unavailable(format!("eta unavailable on {} (dim {})", g.m.name(), g.m.dim()));
    }
    let hol = |mc: &MatForm<Form>| pull_matrix(&g.pullback, mc).ok().and_then(|a| diagonal_if_triangular(&a));
    match (hol(p.theta()), hol(m.theta())) {
        (Some(hp), Some(hm)) => EtaTerm::Value(eta_super(&hp, &hm, &g.spin_shift)),
        _ => EtaTerm::Unavailable("eta unavailable: holonomy is not triangular".into()),
    }
}

/// ∫_M f*CS(∇₀, ∇₁) ∧ Â(M) ∧ e^{κ_M} for the two generators of a class.
pub fn cs_integral(from: &SuperModuleConn<Form>, to: &SuperModuleConn<Form>, c: &DiffCycle) -> Result<Q> {
    let Some(g) = &c.geom else { return Ok(Q::zero()) };
    let cs = g.pullback.apply(&cs_super(from, to)?)?;
    let w = char_form(&ahat_exp_zeta(g.m.dim() as i64)?, &g.kappa, &g.pont)?;
    Ok(cs.try_wedge(&w)?.integrate())
}

/// ∫_M d(Â(M) ∧ e^{κ_M} ∧ f*ρ), reported for inspection; zero on closed M.
pub fn additional_term(k: &DiffKClass<Form>, c: &DiffCycle) -> Result<Q> {
    let Some(g) = &c.geom else { return Ok(Q::zero()) };
    let w = char_form(&ahat_exp_zeta(g.m.dim() as i64)?, &g.kappa, &g.pont)?;
    Ok(w.try_wedge(&g.pullback.apply(&k.rho)?)?.dform().integrate())
}

/// Current of degree `deg` on `model` with the prescribed values on e_b ⊗ m.
pub(crate) fn current_from_functional(model: &Arc<CdgaModel>, deg: i64, mut value: impl FnMut(usize, &Mono) -> Result<Q>) -> Result<CoeffCurrent> {
    let mut out = CoeffCurrent::zero(model, Ring::V);
    for b in 0..model.len() {
        let j = deg - model.deg(b) as i64;
        if j < 0 {
            continue;
        }
        for m in monomials(j) {
            let v = value(b, &m)?;
            if !v.is_zero() {
                let k = factorial(m.exp(0));
                out.add_term(b, m, v / Q::from_integer(k));
            }
        }
    }
    Ok(out)
}
