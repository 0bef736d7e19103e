// SPDX-License-Identifier: Apache-2.0
//! Reduced eta invariants of the twisted Dirac operator on the circle.
//!
//! Convention: for holonomy a the operator is −i d/dθ shifted so that its
//! spectrum is {−(n + a) : n ∈ ℤ}. Then η(0) = 2a − 1 for 0 < a < 1 and
//! η̄ = (η(0) + dim ker)/2 ≡ a − 1/2 mod 1, including a = 0.

use crate::chern::matform::MatForm;
use crate::chern::{ch_twisted, ModuleConn};
use crate::error::{Error, Result};
use crate::poly::PolyForm;
use crate::rational::{mod1, Q};
use num::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDirac {
    a: Q,
}

impl CircleDirac {
    pub fn new(a: Q) -> Result<Self> {
        if a.is_negative() || a >= Q::one() {
            return Err(Error::Invariant(format!("holonomy {a} outside [0, 1)")));
        }
        Ok(CircleDirac { a })
    }

    /// Any rational holonomy, reduced mod 1.
    pub fn from_holonomy(a: &Q) -> Self {
        CircleDirac { a: mod1(a) }
    }

    pub fn holonomy(&self) -> &Q {
        &self.a
    }
}

pub fn eta_reduced(d: &CircleDirac) -> Q {
    mod1(&(&d.a - Q::new(1.into(), 2.into())))
}

pub fn eta_difference(a: &Q, b: &Q) -> Q {
    mod1(&(eta_reduced(&CircleDirac::from_holonomy(a)) - eta_reduced(&CircleDirac::from_holonomy(b))))
}

/// Σ₊ η̄(λ + s) − Σ₋ η̄(μ + s) mod 1 for a diagonal super bundle with spin shift s.
pub fn eta_super(plus: &[Q], minus: &[Q], spin_shift: &Q) -> Q {
    let sum = |hs: &[Q]| hs.iter().fold(Q::zero(), |acc, h| acc + eta_reduced(&CircleDirac::from_holonomy(&(h + spin_shift))));
    mod1(&(sum(plus) - sum(minus)))
}

/// Floating-point oracle: Hurwitz ζ by Euler–Maclaurin at small s > 0,
/// then Neville extrapolation of η(s) to s = 0.
pub mod oracle {
    const BERNOULLI_2K: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];

    /// ζ(s, a) = Σ_{n≥0} (n + a)^{−s}, analytically continued; s ≠ 1, a > 0.
    pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
        let n = 30usize;
        let mut acc: f64 = (0..n).map(|k| (k as f64 + a).powf(-s)).sum();
        let x = n as f64 + a;
        acc += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
        let mut rising = s;
        let mut fact = 2.0;
        for (k, b) in BERNOULLI_2K.iter().enumerate() {
            let k = k + 1;
            acc += b / fact * rising * x.powf(-s - 2.0 * k as f64 + 1.0);
            rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
            fact *= (2.0 * k as f64 + 1.0) * (2.0 * k as f64 + 2.0);
        }
        acc
    }

    /// η(s) of the spectrum {−(n + a)}, 0 < a < 1.
    pub fn eta_s(s: f64, a: f64) -> f64 {
        hurwitz_zeta(s, 1.0 - a) - hurwitz_zeta(s, a)
    }

    fn neville(xs: &[f64], ys: &[f64], x: f64) -> f64 {
        let mut p = ys.to_vec();
        let n = xs.len();
        for m in 1..n {
            for i in 0..n - m {
                p[i] = ((x - xs[i + m]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + m]);
            }
        }
        p[0]
    }

    /// η(0) by extrapolation from s ∈ {0.2, 0.1, …}.
    pub fn eta_at_zero(a: f64) -> f64 {
        let xs: Vec<f64> = (0..6).map(|j| 0.2 / f64::from(1 << j)).collect();
        let ys: Vec<f64> = xs.iter().map(|s| eta_s(*s, a)).collect();
        neville(&xs, &ys, 0.0)
    }

    /// η̄ in [0, 1) from the extrapolated η(0); a = 0 uses the symmetric spectrum plus kernel.
    pub fn eta_reduced(a: f64) -> f64 {
        let (eta, kernel) = if a == 0.0 { (0.0, 1.0) } else { (eta_at_zero(a), 0.0) };
        ((eta + kernel) / 2.0).rem_euclid(1.0)
    }
}

/// APS shadow on the cylinder [0,1]_t × S¹_x oriented by dt∧dx: the connection
/// ((1−t)b + ta)dx has ∫ ch = η̄(a) − η̄(b) mod 1. Returns (∫ ch, η̄ difference).
pub fn aps_cylinder(a: &Q, b: &Q) -> (Q, Q) {
    let t = PolyForm::var(2, 0);
    let dx = PolyForm::dvar(2, 1);
    let coeff = PolyForm::constant(2, b.clone()).add(&t.scale(&(a - b)));
    let theta = MatForm::scalar(&coeff.wedge(&dx), 1);
    let z = PolyForm::zero(2);
    let m = ModuleConn::new(theta, z.clone(), z).expect("untwisted rank-one connection");
    (ch_twisted(&m).integrate_cube(), eta_difference(a, b))
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn closed_form_values() {
        assert_eq!(eta_reduced(&CircleDirac::new(Q::zero()).unwrap()), q(1, 2));
        assert_eq!(eta_reduced(&CircleDirac::new(q(1, 2)).unwrap()), Q::zero());
        assert!(CircleDirac::new(Q::one()).is_err());
    }
}
