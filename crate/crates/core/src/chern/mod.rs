// SPDX-License-Identifier: Apache-2.0
//! Gerbe-module connections in global gauge, twisted Chern characters,
//! Chern–Simons transgression and generators of differential twisted K-theory.
//!
//! A module connection is a connection matrix Θ together with a 2-form κ₀
//! absorbing the curving, dκ₀ = H. The descended curvature is
//! F̃ = dΘ + Θ∧Θ + κ₀·id and ch = tr exp F̃ is (d − H)-closed.

pub mod file;
pub mod matform;

use crate::error::{Error, Result};
use crate::forms::DgForm;
use crate::rational::Q;
use matform::{newton_cotes, MatForm};
use num::One;

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleConn<F: DgForm> {
    theta: MatForm<F>,
    kappa0: F,
    twist: F,
}

fn check_degree<F: DgForm>(w: &F, deg: usize, what: &str) -> Result<()> {
    if w.is_zero() || w.degrees() == vec![deg] {
        Ok(())
    } else {
        Err(Error::Degree(format!("{what} must have degree {deg}")))
    }
}

impl<F: DgForm> ModuleConn<F> {
    pub fn new(theta: MatForm<F>, kappa0: F, twist: F) -> Result<Self> {
        if !theta.entries_of_degree(1) {
            return Err(Error::Degree("connection matrix entries must be 1-forms".into()));
        }
        check_degree(&kappa0, 2, "κ₀")?;
        check_degree(&twist, 3, "twist")?;
        if kappa0.d() != twist {
            return Err(Error::Invariant("dκ₀ ≠ H: global gauge needs an exact twist".into()));
        }
        Ok(ModuleConn { theta, kappa0, twist })
    }

    /// Rank-r trivial flat module with the given curving absorber.
    pub fn trivial(kappa0: &F, r: usize) -> Result<Self> {
        Self::new(MatForm::zeros(kappa0, r), kappa0.clone(), kappa0.d())
    }

    pub fn theta(&self) -> &MatForm<F> {
        &self.theta
    }

    pub fn kappa0(&self) -> &F {
        &self.kappa0
    }

    pub fn twist(&self) -> &F {
        &self.twist
    }

    pub fn rank(&self) -> usize {
        self.theta.rank()
    }

    pub fn block_sum(&self, o: &Self) -> Result<Self> {
        if self.kappa0 != o.kappa0 {
            return Err(Error::TwistMismatch("direct sum needs a common κ₀".into()));
        }
        Ok(ModuleConn { theta: self.theta.block_sum(&o.theta), kappa0: self.kappa0.clone(), twist: self.twist.clone() })
    }
}

/// dω − H∧ω.
pub fn twisted_d<F: DgForm>(h: &F, w: &F) -> F {
    w.d().minus(&h.wedge(w))
}

/// F̃ = dΘ + Θ∧Θ + κ₀·id.
pub fn curvature_descended<F: DgForm>(m: &ModuleConn<F>) -> MatForm<F> {
    let th = &m.theta;
    th.d().add(&th.mul(th)).add(&MatForm::scalar(&m.kappa0, th.rank()))
}

/// dF̃ − [F̃, Θ] − H·id; zero for every valid input.
pub fn bianchi_residual<F: DgForm>(m: &ModuleConn<F>) -> MatForm<F> {
    let f = curvature_descended(m);
    let comm = f.mul(&m.theta).sub(&m.theta.mul(&f));
    f.d().sub(&comm).sub(&MatForm::scalar(&m.twist, m.rank()))
}

/// tr exp F̃ (normalization 2πi absorbed into the stored forms).
pub fn ch_twisted<F: DgForm>(m: &ModuleConn<F>) -> F {
    curvature_descended(m).exp_nilpotent().expect("curvature has no degree-0 part").trace()
}

/// Chern–Simons form along Θ_t = (1−t)Θ₀ + tΘ₁: ∫₀¹ tr(Θ̇ exp F̃_t) dt.
/// (d − H)CS = ch(m1) − ch(m0).
pub fn cs_transgression<F: DgForm>(m0: &ModuleConn<F>, m1: &ModuleConn<F>) -> Result<F> {
    if m0.rank() != m1.rank() {
        return Err(Error::Invariant(format!("rank mismatch {} vs {}", m0.rank(), m1.rank())));
    }
    if m0.kappa0 != m1.kappa0 || m0.twist != m1.twist {
        return Err(Error::TwistMismatch("transgression needs a common κ₀ and twist".into()));
    }
    let dot = m1.theta.sub(&m0.theta);
    let proto = m0.kappa0.zero_like();
    if dot.is_zero() {
        return Ok(proto);
    }
    // the integrand is a polynomial in t of degree ≤ dim
    let rule = newton_cotes(proto.ambient_dim().max(1));
    let mut acc = proto;
    for (t, w) in rule {
        let th = m0.theta.scale(&(Q::one() - &t)).add(&m1.theta.scale(&t));
        let mt = ModuleConn { theta: th, kappa0: m0.kappa0.clone(), twist: m0.twist.clone() };
        let val = dot.mul(&curvature_descended(&mt).exp_nilpotent().expect("curvature has no degree-0 part")).trace();
        acc = acc.plus(&val.times(&w));
    }
    Ok(acc)
}

/// Formal difference (E, E′) of equal-rank module connections.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperModuleConn<F: DgForm> {
    pub plus: ModuleConn<F>,
    pub minus: ModuleConn<F>,
}

impl<F: DgForm> SuperModuleConn<F> {
    pub fn new(plus: ModuleConn<F>, minus: ModuleConn<F>) -> Result<Self> {
        if plus.kappa0 != minus.kappa0 || plus.twist != minus.twist {
            return Err(Error::TwistMismatch("super pair needs a shared κ₀ and twist".into()));
        }
        if plus.rank() != minus.rank() {
            return Err(Error::Invariant(format!("super pair needs equal ranks, got {} and {}", plus.rank(), minus.rank())));
        }
        Ok(SuperModuleConn { plus, minus })
    }

    pub fn twist(&self) -> &F {
        &self.plus.twist
    }

    pub fn kappa0(&self) -> &F {
        &self.plus.kappa0
    }

    pub fn block_sum(&self, o: &Self) -> Result<Self> {
        Self::new(self.plus.block_sum(&o.plus)?, self.minus.block_sum(&o.minus)?)
    }

    pub fn swap(&self) -> Self {
        SuperModuleConn { plus: self.minus.clone(), minus: self.plus.clone() }
    }
}

pub fn ch_super<F: DgForm>(s: &SuperModuleConn<F>) -> F {
    ch_twisted(&s.plus).minus(&ch_twisted(&s.minus))
}

pub fn cs_super<F: DgForm>(s0: &SuperModuleConn<F>, s1: &SuperModuleConn<F>) -> Result<F> {
    Ok(cs_transgression(&s0.plus, &s1.plus)?.minus(&cs_transgression(&s0.minus, &s1.minus)?))
}

/// Generator (ℰ, ∇^ℰ, ρ) of differential twisted K-theory.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffKClass<F: DgForm> {
    pub gen: SuperModuleConn<F>,
    pub rho: F,
}

impl<F: DgForm> DiffKClass<F> {
    pub fn new(gen: SuperModuleConn<F>, rho: F) -> Result<Self> {
        if rho.degrees().iter().any(|d| d % 2 == 0) {
            return Err(Error::Degree("ρ must have odd degrees only".into()));
        }
        Ok(DiffKClass { gen, rho })
    }

    pub fn zero(kappa0: &F) -> Result<Self> {
        let t = ModuleConn::trivial(kappa0, 0)?;
        Ok(DiffKClass { gen: SuperModuleConn { plus: t.clone(), minus: t }, rho: kappa0.zero_like() })
    }

    pub fn twist(&self) -> &F {
        self.gen.twist()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(DiffKClass { gen: self.gen.block_sum(&o.gen)?, rho: self.rho.plus(&o.rho) })
    }

    pub fn negate(&self) -> Self {
        DiffKClass { gen: self.gen.swap(), rho: self.rho.neg() }
    }

    /// (ℰ, ∇₀, ρ) ∼ (ℰ, ∇₁, ρ + CS(∇₀, ∇₁)).
    pub fn cs_shift(&self, to: &SuperModuleConn<F>) -> Result<Self> {
        let cs = cs_super(&self.gen, to)?;
        Ok(DiffKClass { gen: to.clone(), rho: self.rho.plus(&cs) })
    }
}

/// ch(ℰ) − (d − H)ρ.
pub fn r_k<F: DgForm>(k: &DiffKClass<F>) -> F {
    ch_super(&k.gen).minus(&twisted_d(k.twist(), &k.rho))
}

/// ρ ↦ (0, 0, −ρ); R_K∘a_K = (d − H).
pub fn a_k<F: DgForm>(kappa0: &F, rho: &F) -> Result<DiffKClass<F>> {
    let z = DiffKClass::zero(kappa0)?;
    DiffKClass::new(z.gen, rho.neg())
}

pub fn i_k<F: DgForm>(k: &DiffKClass<F>) -> i64 {
    k.gen.plus.rank() as i64 - k.gen.minus.rank() as i64
}

/// Spinor module connection designated as a twisted Spin^c datum, with Pontryagin forms.
#[derive(Clone, Debug, PartialEq)]
pub struct GerbeModuleGeom<F: DgForm> {
    pub spinor: ModuleConn<F>,
    pub pont: Vec<F>,
}

impl<F: DgForm> GerbeModuleGeom<F> {
    pub fn new(spinor: ModuleConn<F>, pont: Vec<F>) -> Result<Self> {
        if spinor.rank() == 0 {
            return Err(Error::Invariant("spinor module must have positive rank".into()));
        }
        for (i, p) in pont.iter().enumerate() {
            check_degree(p, 4 * (i + 1), &format!("p{}", i + 1))?;
            if !p.d().is_zero() {
                return Err(Error::Invariant(format!("p{} is not closed", i + 1)));
            }
        }
        Ok(GerbeModuleGeom { spinor, pont })
    }
}

/// tr₀ F̃ = tr F̃ / rank; dκ′ = H.
pub fn kappa_prime<F: DgForm>(g: &GerbeModuleGeom<F>) -> F {
    let r = g.spinor.rank() as i64;
    curvature_descended(&g.spinor).trace().times(&Q::new(1.into(), r.into()))
}
