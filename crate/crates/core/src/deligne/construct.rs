// SPDX-License-Identifier: Apache-2.0
//! Explicit covers and cocycles: S³ as ∂Δ⁴ and the suspension of RP².

use super::cech::CechCochain;
use super::simplicial::{PlForm, Simplex, SimplicialComplex};
use super::{curvature_pl, Cover, DeligneCocycle};
use crate::cdga::library;
use crate::error::{Error, Result};
use crate::linalg::zapply;
use crate::rational::Q;
use num::{BigInt, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// ∂Δ⁴ with facet [0..î..4] carrying sign (−1)^i.
pub fn boundary_4simplex() -> SimplicialComplex {
    let facets: Vec<Simplex> = (0..5).map(|i| (0..5).filter(|v| *v != i).collect()).collect();
    let orient = (0..5).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    SimplicialComplex::new(facets, orient).expect("boundary of the 4-simplex")
}

/// Suspension of the 6-vertex RP²; the cone points are 6 and 7.
pub fn suspension_rp2() -> SimplicialComplex {
    let rp2 = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    let facets: Vec<Simplex> = rp2.iter().flat_map(|t| [6, 7].map(|c| vec![t[0], t[1], t[2], c])).collect();
    let n = facets.len();
    SimplicialComplex::new(facets, vec![0; n]).expect("suspension of RP²")
}

/// Cocycle (Kn, K(dKn), K(dK(dKn))) for an integer Čech 3-cocycle n.
pub fn cocycle_from_integer(cover: &Arc<Cover>, n: &BTreeMap<Simplex, Q>) -> Result<DeligneCocycle> {
    let cx = cover.complex();
    let n = CechCochain::constant(cx, 3, n);
    let f = n.homotopy(cx)?;
    let a = f.d().homotopy(cx)?;
    let b = a.d().homotopy(cx)?;
    DeligneCocycle::new(cover, f, a, b)
}

fn unit_class() -> BTreeMap<Simplex, Q> {
    BTreeMap::from([(vec![0, 1, 2, 3], Q::from_integer(1.into()))])
}

/// The 5-patch cover of S³ with v pulled back to the curvature of the k = 1 cocycle.
pub fn s3_cover() -> Result<Arc<Cover>> {
    let cx = boundary_4simplex();
    let pt = Cover::new("s3_pre", cx.clone(), library("pt")?, BTreeMap::new())?;
    let h1 = curvature_pl(&cocycle_from_integer(&pt, &unit_class())?)?;
    let total = h1.integrate(&cx)?;
    if total.is_zero() {
        return Err(Error::Invariant("unit cocycle has zero curvature integral".into()));
    }
    let v = h1.scale(&total.recip());
    Cover::new("s3", cx, library("s3")?, BTreeMap::from([("v".to_string(), v)]))
}

/// DD class k on S³: n = k·[0123]^∨.
pub fn s3_k(cover: &Arc<Cover>, k: i64) -> Result<DeligneCocycle> {
    let n: BTreeMap<Simplex, Q> = unit_class().into_iter().map(|(s, c)| (s, c * Q::from_integer(k.into()))).collect();
    let c = cocycle_from_integer(cover, &n)?;
    Ok(DeligneCocycle { cover: cover.clone(), ..c })
}

pub fn rp2_cover() -> Result<Arc<Cover>> {
    Cover::new("sigma_rp2", suspension_rp2(), library("pt")?, BTreeMap::new())
}

/// f = c/2 with δc = 2z, z generating H³(ΣRP²; ℤ) ≅ ℤ/2; A = B = 0.
pub fn torsion_half(cover: &Arc<Cover>) -> Result<DeligneCocycle> {
    let cx = cover.complex();
    let s = cx.smith_into(3);
    let i = s
        .diag
        .iter()
        .position(|d| *d == BigInt::from(2) || *d == BigInt::from(-2))
        .ok_or_else(|| Error::Invariant("no 2-torsion in H³".into()))?;
    let mut e = vec![BigInt::zero(); cx.simplices(2).len()];
    e[i] = BigInt::from(1);
    let c = zapply(&s.v, &e);
    let vals: BTreeMap<Simplex, Q> = cx
        .simplices(2)
        .iter()
        .zip(c)
        .map(|(t, x)| (t.clone(), Q::new(x, BigInt::from(2))))
        .collect();
    DeligneCocycle::new(cover, CechCochain::constant(cx, 2, &vals), CechCochain::zero(cx, 1), CechCochain::zero(cx, 0))
}

/// Global polynomial 1-form Σ t_i dt_j over pairs, used as a λ family.
pub fn lambda_family(cx: &SimplicialComplex, coeffs: &[(usize, usize, i64)]) -> CechCochain {
    let n = cx.vertices().iter().max().map_or(0, |m| m + 1);
    let poly = coeffs.iter().fold(crate::poly::PolyForm::zero(n), |acc, (i, j, c)| {
        acc.add(&crate::poly::PolyForm::var(n, *i).wedge(&crate::poly::PolyForm::dvar(n, *j)).scale(&Q::from_integer((*c).into())))
    });
    CechCochain::from_global_polys(cx, 0, |_| poly.clone())
}

pub fn zero_global(cx: &SimplicialComplex) -> PlForm {
    PlForm::zero(cx, &[])
}
