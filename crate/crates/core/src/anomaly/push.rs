// SPDX-License-Identifier: Apache-2.0
//! Pushforward along product fibrations p: X × F → X.
//!
//! A cochain ĉ carries vertical Pontryagin forms and κ_N on N = X × F with
//! dκ_N = p*H₂. Its Chern–Weil form C = Σ p_I(N) κ_N^k ⊗ x_I u^k/k!, corrected
//! by δα, is closed for δ = d − p*H₂∧(u×−). A pair on N with twist
//! p*(H_X + H₂) pushes to (p_!(ω ∧⋆ C), h∘(− × ĉ)) on X with twist H_X.

use super::{char_form, cw_current, current_from_functional, AndersonPair, CycleGeom, DiffCycle, Evaluator};
use crate::cdga::{check_same_model, product_model, pullback_from_fiber, pullback_to_product, CdgaModel, CdgaMorphism, Factors, Form};
use crate::coeff::{monomials, GradedPoly, Ring};
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};
use crate::twisted::{pair, star_wedge_forms, CoeffCurrent, CoeffForm, Twist};
use num::{One, Zero};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct CobordCochain {
    total: Arc<CdgaModel>,
    h2: Twist,
    pont: Vec<Form>,
    kappa: Form,
    alpha: CoeffForm,
}

fn factors(total: &Arc<CdgaModel>) -> Result<&Factors> {
    total.factors().ok_or_else(|| Error::Unsupported(format!("{} is not a product fibration", total.name())))
}

impl CobordCochain {
    pub fn new(total: &Arc<CdgaModel>, h2: Twist, pont: Vec<Form>, kappa: Form, alpha: CoeffForm) -> Result<Self> {
        let fac = factors(total)?;
        check_same_model(h2.model(), &fac.base)?;
        check_same_model(kappa.model(), total)?;
        check_same_model(alpha.model(), total)?;
        if alpha.ring() != Ring::V {
            return Err(Error::RingMismatch { expected: "V", found: alpha.ring().name() });
        }
        if !(kappa.is_zero() || kappa.is_homogeneous_of(2)) {
            return Err(Error::Degree(format!("κ_N = {kappa} is not a 2-form")));
        }
        for (i, p) in pont.iter().enumerate() {
            check_same_model(p.model(), total)?;
            if !(p.is_zero() || p.is_homogeneous_of(4 * (i + 1))) || !p.dform().is_zero() {
                return Err(Error::Invariant(format!("p{} must be a closed {}-form", i + 1, 4 * (i + 1))));
            }
        }
        let pr = pullback_to_product(total)?;
        if kappa.dform() != pr.apply(h2.form())? {
            return Err(Error::Invariant("dκ_N ≠ p*H₂".into()));
        }
        // a V-valued form β ⊗ v has degree |β| − deg v
        let odd = alpha.comps().iter().enumerate().any(|(a, v)| v.terms().any(|(m, _)| total.deg(a) as i64 - m.degree() != -1));
        if odd {
            return Err(Error::Degree("α must have degree −1".into()));
        }
        Ok(CobordCochain { total: total.clone(), h2, pont, kappa, alpha })
    }

    /// Product with F and no further data.
    pub fn trivial(base: &Arc<CdgaModel>, fiber: &Arc<CdgaModel>) -> Result<Self> {
        let total = product_model(base, fiber)?;
        Self::new(&total, Twist::zero(base), Vec::new(), Form::zero(&total), CoeffForm::zero(&total, Ring::V))
    }

    pub fn total(&self) -> &Arc<CdgaModel> {
        &self.total
    }
    pub fn base(&self) -> &Arc<CdgaModel> {
        &factors(&self.total).expect("checked").base
    }
    pub fn fiber(&self) -> &Arc<CdgaModel> {
        &factors(&self.total).expect("checked").fiber
    }
    pub fn h2(&self) -> &Twist {
        &self.h2
    }
    pub fn kappa(&self) -> &Form {
        &self.kappa
    }
    pub fn pont(&self) -> &[Form] {
        &self.pont
    }

    /// p*H₂ as a twist on the total model.
    fn h2_total(&self) -> Result<Twist> {
        self.h2.pullback(&pullback_to_product(&self.total)?)
    }
}

/// C + δ_{−H₂}α on the total model.
pub fn cw_cochain_form(c: &CobordCochain) -> Result<CoeffForm> {
    let n = &c.total;
    let mut out = CoeffForm::zero(n, Ring::V);
    for j in (0..=n.dim() as i64).step_by(2) {
        for m in monomials(j) {
            let w = char_form(&GradedPoly::monomial(Ring::N, m.clone(), Q::one()), &c.kappa, &c.pont)?;
            if w.is_zero() {
                continue;
            }
            let k = Q::from_integer(factorial(m.exp(0)));
            let v = GradedPoly::monomial(Ring::V, m, k.recip());
            out = out.try_add(&CoeffForm::from_form(&w, &v))?;
        }
    }
    let corr = c.alpha.twisted_d(&c.h2_total()?.scaled(&-Q::one()))?;
    out.try_add(&corr)
}

/// ω ⊗ p_I z^k ↦ ∫_N p*ω ∧ p_I(N) ∧ κ_N^k as a current on the base.
pub fn cw_cochain(c: &CobordCochain) -> Result<CoeffCurrent> {
    cw_current(&pullback_to_product(&c.total)?, &c.kappa, &c.pont)
}

/// p_!(ω ∧⋆ C) for an N-valued form on the total model.
pub fn push_form(c: &CobordCochain, omega: &CoeffForm) -> Result<CoeffForm> {
    push_with(&cw_cochain_form(c)?, omega)
}

fn push_with(cform: &CoeffForm, omega: &CoeffForm) -> Result<CoeffForm> {
    star_wedge_forms(omega, cform)?.fiber_integrate()
}

/// Base twist H_X with H_N = p*(H_X + H₂).
fn base_twist(c: &CobordCochain, h_total: &Twist) -> Result<Twist> {
    check_same_model(h_total.model(), &c.total)?;
    let base = c.base();
    let nf = c.fiber().len();
    let h = h_total.form();
    let mut coeffs = vec![Q::zero(); base.len()];
    for (k, x) in h.coeffs().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if k % nf != 0 {
            return Err(Error::TwistMismatch(format!("twist {h} is not pulled back from {}", base.name())));
        }
        coeffs[k / nf] = x.clone();
    }
    Twist::new(Form::from_coeffs(base, coeffs)?.try_add(&c.h2.form().scale(&-Q::one()))?)
}

/// (ω, h) ↦ (p_!(ω ∧⋆ C), h∘(− × ĉ)).
pub fn pushforward(p: &AndersonPair, c: &CobordCochain) -> Result<AndersonPair> {
    let hx = base_twist(c, p.twist())?;
    let omega = push_form(c, p.omega())?;
    let r = c.fiber().dim() as i64;
    AndersonPair::new(hx, p.degree() - r, omega, Evaluator::Pushforward(Box::new(p.clone()), Box::new(c.clone())))
}

/// Integration over the circle factor of X × S¹.
pub fn s1_integration(p: &AndersonPair) -> Result<AndersonPair> {
    let total = p.twist().model();
    let fac = factors(total)?;
    if fac.fiber.dim() != 1 {
        return Err(Error::Unsupported(format!("fiber {} is not a circle", fac.fiber.name())));
    }
    let c = CobordCochain::new(total, Twist::zero(&fac.base), Vec::new(), Form::zero(total), CoeffForm::zero(total, Ring::V))?;
    pushforward(p, &c)
}

/// f × id: X × F → M × F read as a pullback.
fn product_map(f: &CdgaMorphism, total: &Arc<CdgaModel>, mf: &Arc<CdgaModel>) -> Result<CdgaMorphism> {
    let fac = factors(total)?;
    let nf = fac.fiber.len();
    let pr_m = pullback_to_product(mf)?;
    let pr_f = pullback_from_fiber(mf)?;
    let mut images = Vec::with_capacity(total.len());
    for i in 0..fac.base.len() {
        let a = pr_m.apply(&f.apply(&Form::basis(&fac.base, i))?)?;
        for j in 0..nf {
            images.push(a.try_wedge(&pr_f.apply(&Form::basis(&fac.fiber, j))?)?);
        }
    }
    CdgaMorphism::new(total, mf, images)
}

/// c × ĉ over X × F, with κ and Pontryagin forms summed.
pub fn fiber_product(cyc: &DiffCycle, c: &CobordCochain) -> Result<DiffCycle> {
    check_same_model(cyc.model(), c.base())?;
    let h_total = Twist::new(pullback_to_product(&c.total)?.apply(&cyc.twist().form().try_add(c.h2.form())?)?)?;
    let cform = cw_cochain_form(c)?;
    let r = c.fiber().dim() as i64;
    let n = &c.total;

    let (geom, cw) = match cyc.geom() {
        None => (None, CoeffCurrent::zero(cyc.model(), Ring::V)),
        Some(g) => {
            let mf = product_model(&g.m, c.fiber())?;
            let has_pont = g.pont.iter().chain(&c.pont).any(|p| !p.is_zero());
            if has_pont && mf.dim() >= 8 {
                return Err(Error::Unsupported("Pontryagin products in degree ≥ 8 on fiber products".into()));
            }
            let fp = product_map(&g.pullback, n, &mf)?;
            let pr_m = pullback_to_product(&mf)?;
            let len = g.pont.len().max(c.pont.len());
            let mut pont = Vec::with_capacity(len);
            for i in 0..len {
                let a = g.pont.get(i).map(|p| pr_m.apply(p)).transpose()?.unwrap_or_else(|| Form::zero(&mf));
                let b = c.pont.get(i).map(|p| fp.apply(p)).transpose()?.unwrap_or_else(|| Form::zero(&mf));
                pont.push(a.try_add(&b)?);
            }
            let kappa = pr_m.apply(&g.kappa)?.try_add(&fp.apply(&c.kappa)?)?;
            let geom = CycleGeom { m: mf, pullback: fp, pont, kappa, spin_shift: g.spin_shift.clone() };
            (Some(geom), super::cw_cycle(cyc)?)
        }
    };

    // φ' = φ∘P + ψ with ψ(ω) = ∓⟨p_!(ω ∧⋆ α), cw(c)⟩ absorbing the δα correction
    let deg = match (&geom, cyc.phi().total_degrees().first()) {
        (Some(g), _) => Some(g.m.dim() as i64 + 1),
        (None, Some(d)) => Some(d + r),
        (None, None) => None,
    };
    let phi = match deg {
        None => CoeffCurrent::zero(n, Ring::V),
        Some(deg) => {
            let sign = if deg % 2 == 0 { -Q::one() } else { Q::one() };
            let alpha_zero = c.alpha.is_zero();
            current_from_functional(n, deg, |b, m| {
                let w = CoeffForm::elementary(n, b, GradedPoly::monomial(Ring::N, m.clone(), Q::one()));
                let mut v = pair(&push_with(&cform, &w)?, cyc.phi())?;
                if !alpha_zero && !cw.is_zero() {
                    v += sign.clone() * pair(&push_with(&c.alpha, &w)?, &cw)?;
                }
                Ok(v)
            })?
        }
    };
    DiffCycle::new(format!("{}x{}", cyc.name(), c.fiber().name()), Twist::new(h_total.form().clone())?, geom, phi)
}
