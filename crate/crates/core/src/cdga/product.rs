// SPDX-License-Identifier: Apache-2.0
//! Tensor products of models and integration over the second factor.

use super::{koszul, BasisElt, CdgaModel, CdgaMorphism, Factors, Form, SparseVec};
use crate::error::{Error, Result};
use num::Zero;
use std::sync::Arc;

fn product_symbol(x: &CdgaModel, f: &CdgaModel, i: usize, j: usize) -> String {
    let xs = &x.basis()[i].sym;
    let fs_raw = &f.basis()[j].sym;
    let fs = if x.index_of(fs_raw).is_some() && j != 0 { format!("{fs_raw}_f") } else { fs_raw.clone() };
    match (i, j) {
        (0, 0) => "1".into(),
        (_, 0) => xs.clone(),
        (0, _) => fs,
        _ => format!("{xs}__{fs}"),
    }
}

/// X ⊗ F with Koszul signs; basis index of e_i ⊗ e_j is `i * |F| + j`.
pub fn product_model(x: &Arc<CdgaModel>, f: &Arc<CdgaModel>) -> Result<Arc<CdgaModel>> {
    let (nx, nf) = (x.len(), f.len());
    let idx = |i: usize, j: usize| i * nf + j;
    let mut basis = Vec::with_capacity(nx * nf);
    for i in 0..nx {
        for j in 0..nf {
            basis.push(BasisElt { sym: product_symbol(x, f, i, j), deg: x.deg(i) + f.deg(j) });
        }
    }
    let mut d: Vec<SparseVec> = vec![Vec::new(); nx * nf];
    for i in 0..nx {
        for j in 0..nf {
            let mut v = SparseVec::new();
            for (k, c) in x.d_of(i) {
                v.push((idx(*k, j), c.clone()));
            }
            let s = koszul(x.deg(i), 1);
            for (k, c) in f.d_of(j) {
                v.push((idx(i, *k), c * &s));
            }
            d[idx(i, j)] = v;
        }
    }
    let mut mul: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); nx * nf]; nx * nf];
    for i in 0..nx {
        for j in 0..nf {
            for k in 0..nx {
                for l in 0..nf {
                    // (a⊗b)(c⊗e) = (−1)^{|b||c|} ac ⊗ be
                    let s = koszul(f.deg(j), x.deg(k));
                    let mut v = SparseVec::new();
                    for (p, cp) in x.mul_of(i, k) {
                        for (q, cq) in f.mul_of(j, l) {
                            let c = cp * cq * &s;
                            if !c.is_zero() {
                                v.push((idx(*p, *q), c));
                            }
                        }
                    }
                    mul[idx(i, j)][idx(k, l)] = v;
                }
            }
        }
    }
    let mut integral = vec![num::BigRational::zero(); nx * nf];
    for i in 0..nx {
        for j in 0..nf {
            integral[idx(i, j)] = x.integral_of(i) * f.integral_of(j);
        }
    }
    let name = format!("{}x{}", x.name(), f.name());
    let m = CdgaModel::new(name, x.dim() + f.dim(), basis, d, mul, integral)?
        .with_factors(Factors { base: x.clone(), fiber: f.clone() });
    Ok(Arc::new(m))
}

fn factors_of(total: &Arc<CdgaModel>) -> Result<&Factors> {
    total.factors().ok_or_else(|| Error::Unsupported(format!("model {} is not a product", total.name())))
}

/// pr_X^*: X → X × F.
pub fn pullback_to_product(total: &Arc<CdgaModel>) -> Result<CdgaMorphism> {
    let fac = factors_of(total)?;
    let nf = fac.fiber.len();
    let images = (0..fac.base.len()).map(|i| Form::basis(total, i * nf)).collect();
    CdgaMorphism::new(&fac.base, total, images)
}

/// pr_F^*: F → X × F.
pub fn pullback_from_fiber(total: &Arc<CdgaModel>) -> Result<CdgaMorphism> {
    let fac = factors_of(total)?;
    let images = (0..fac.fiber.len()).map(|j| Form::basis(total, j)).collect();
    CdgaMorphism::new(&fac.fiber, total, images)
}

/// p_!: keeps the top-fiber-degree part and integrates it over F.
pub fn fiber_integrate(total: &Arc<CdgaModel>, a: &Form) -> Result<Form> {
    super::check_same_model(a.model(), total)?;
    let fac = factors_of(total)?;
    let nf = fac.fiber.len();
    let mut c = vec![num::BigRational::zero(); fac.base.len()];
    for (k, x) in a.coeffs().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (i, j) = (k / nf, k % nf);
        c[i] += x * fac.fiber.integral_of(j);
    }
    Form::from_coeffs(&fac.base, c)
}
