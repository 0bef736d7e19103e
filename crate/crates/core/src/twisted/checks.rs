// SPDX-License-Identifier: Apache-2.0
//! Duality, perfect pairing and spectral-sequence cross-checks.

use super::{apply_dh, apply_dh_chain, pair, CoeffCurrent, CoeffForm, ComplexKind, TwistedComplex, Twist};
use crate::cdga::{CdgaModel, Form};
use crate::coeff::{monomials, GradedPoly, Mono, Ring};
use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, kernel, solve, Echelon, QMatrix, QVec};
use crate::rational::{fmt_q, Q};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// De Rham cohomology of a model with chosen representatives.
#[derive(Clone, Debug)]
pub struct DeRham {
    model: Arc<CdgaModel>,
    /// Representatives per degree.
    pub reps: Vec<Vec<Form>>,
}

fn d_matrix(model: &Arc<CdgaModel>, k: usize) -> (QMatrix, Vec<usize>, Vec<usize>) {
    let src = model.indices_of_degree(k);
    let dst = model.indices_of_degree(k + 1);
    let mut m = QMatrix::zeros(dst.len(), src.len());
    for (j, &a) in src.iter().enumerate() {
        for (b, c) in model.d_of(a) {
            if let Some(i) = dst.iter().position(|x| x == b) {
                m.data[i][j] += c;
            }
        }
    }
    (m, src, dst)
}

fn restrict(f: &Form, idx: &[usize]) -> QVec {
    idx.iter().map(|&i| f.coeff(i).clone()).collect()
}

fn extend(model: &Arc<CdgaModel>, idx: &[usize], v: &[Q]) -> Form {
    let mut c = vec![Q::zero(); model.len()];
    for (&i, x) in idx.iter().zip(v) {
        c[i] = x.clone();
    }
    Form::from_coeffs(model, c).expect("length matches")
}

pub fn de_rham(model: &Arc<CdgaModel>) -> DeRham {
    let mut reps = Vec::new();
    for k in 0..=model.dim() {
        let (dk, src, _) = d_matrix(model, k);
        let mut span = Echelon::new(src.len());
        if k > 0 {
            let (dprev, _, _) = d_matrix(model, k - 1);
            for j in 0..dprev.cols {
                let col: QVec = (0..dprev.rows).map(|i| dprev.data[i][j].clone()).collect();
                span.insert(&col);
            }
        }
        let closed = if dk.rows == 0 { identity(src.len()) } else { kernel(&dk) };
        let mut r = Vec::new();
        for v in closed {
            if span.insert(&v) {
                r.push(extend(model, &src, &v));
            }
        }
        reps.push(r);
    }
    DeRham { model: model.clone(), reps }
}

fn identity(n: usize) -> Vec<QVec> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

impl DeRham {
    pub fn betti(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    /// Coordinates of a closed k-form in the chosen representatives.
    pub fn coords(&self, z: &Form, k: usize) -> Result<QVec> {
        if k > self.model.dim() {
            return Ok(Vec::new());
        }
        let idx = self.model.indices_of_degree(k);
        let mut cols: Vec<QVec> = self.reps[k].iter().map(|r| restrict(r, &idx)).collect();
        if k > 0 {
            let (dprev, _, _) = d_matrix(&self.model, k - 1);
            for j in 0..dprev.cols {
                cols.push((0..dprev.rows).map(|i| dprev.data[i][j].clone()).collect());
            }
        }
        let a = QMatrix::from_cols(idx.len(), &cols);
        let x = solve(&a, &restrict(z, &idx)).ok_or_else(|| Error::Invariant(format!("form {z} is not closed in degree {k}")))?;
        Ok(x[..self.reps[k].len()].to_vec())
    }

    /// A primitive y with dy = z, if z is exact.
    pub fn primitive(&self, z: &Form, k: usize) -> Option<Form> {
        if k == 0 {
            return if z.is_zero() { Some(Form::zero(&self.model)) } else { None };
        }
        let (dprev, src, dst) = d_matrix(&self.model, k - 1);
        if dst.is_empty() {
            return if z.is_zero() { Some(Form::zero(&self.model)) } else { None };
        }
        let y = solve(&dprev, &restrict(z, &dst))?;
        Some(extend(&self.model, &src, &y))
    }
}

#[derive(Clone, Debug)]
pub struct AdjointReport {
    pub seed: u64,
    pub trials: usize,
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_adjoint(t: &Twist, trials: usize, seed: u64, max_coeff: i64) -> Result<AdjointReport> {
    verify_adjoint_with(t, trials, seed, max_coeff, false)
}

/// `corrupt` flips the sign of the H-term on the chain side.
pub fn verify_adjoint_with(t: &Twist, trials: usize, seed: u64, max_coeff: i64, corrupt: bool) -> Result<AdjointReport> {
    let m = t.model();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = m.dim() as i64 + max_coeff.min(8);
    let mut report = AdjointReport { seed, trials, nontrivial: 0, failures: Vec::new() };
    let sign = if corrupt { -Q::one() } else { Q::one() };
    for trial in 0..trials {
        let n = rng.gen_range(1..=top.max(1));
        let alpha = CoeffForm::random(m, Ring::N, n - 1, max_coeff, 9, &mut rng);
        let beta = CoeffCurrent::random(m, Ring::V, n, max_coeff, 9, &mut rng);
        let lhs = pair(&apply_dh(t, &alpha)?, &beta)?;
        let rhs = if corrupt {
            pair(&alpha, &beta.twisted_boundary(t, &sign)?)?
        } else {
            pair(&alpha, &apply_dh_chain(t, &beta)?)?
        };
        if !lhs.is_zero() {
            report.nontrivial += 1;
        }
        if lhs != rhs {
            report.failures.push(format!("trial {trial} (n = {n}): ⟨D_H α, β⟩ = {} but ⟨α, ∂_H β⟩ = {}", fmt_q(&lhs), fmt_q(&rhs)));
        }
    }
    Ok(report)
}

/// Gram matrix between cohomology of (Ω(X;N), D_H) and homology of (Ω_•(X;V), ∂_H) in degree n.
pub fn perfect_pairing(t: &Twist, n: i64, max_coeff: i64) -> Result<(QMatrix, bool)> {
    let forms = TwistedComplex::new(ComplexKind::FormsN, t, max_coeff);
    let chains = TwistedComplex::new(ComplexKind::ChainsV, t, max_coeff);
    let hf = forms.cohomology(n)?;
    let hc = chains.cohomology(n)?;
    let mut g = QMatrix::zeros(hf.betti, hc.betti);
    for (i, a) in hf.basis.iter().enumerate() {
        let alpha = forms.to_coeff_form(n, a)?;
        for (j, b) in hc.basis.iter().enumerate() {
            let beta = chains.to_coeff_current(n, b)?;
            g.data[i][j] = pair(&alpha, &beta)?;
        }
    }
    let ok = hf.betti == hc.betti && (hf.betti == 0 || bareiss_rank(&g) == hf.betti);
    Ok((g, ok))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsRow {
    pub n: i64,
    pub e2: usize,
    pub e4: usize,
    pub betti: usize,
}

impl SsRow {
    pub fn matches(&self) -> bool {
        self.e4 == self.betti
    }
}

#[derive(Clone, Debug)]
pub struct SsReport {
    pub rows: Vec<SsRow>,
}

impl SsReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(SsRow::matches)
    }
}

/// E₂ = H(X) ⊗ N with d₃ = [H∪−] ⊗ ∂_z; E₄ ranks against cohomology of D_H for degrees 0..=n_max.
pub fn ss_d3_check(t: &Twist, n_max: i64, max_coeff: i64) -> Result<SsReport> {
    if n_max + 1 > max_coeff {
        return Err(Error::Band { n: n_max, lo: 0, hi: max_coeff - 1 });
    }
    let m = t.model();
    let dr = de_rham(m);
    let dim = m.dim();
    // cup with H on cohomology, as matrices H^p → H^{p+3}
    let mut cup: Vec<QMatrix> = Vec::new();
    for p in 0..=dim {
        let rows = if p + 3 <= dim { dr.reps[p + 3].len() } else { 0 };
        let mut mat = QMatrix::zeros(rows, dr.reps[p].len());
        if rows > 0 {
            for (j, r) in dr.reps[p].iter().enumerate() {
                let c = dr.coords(&t.form().try_wedge(r)?, p + 3)?;
                for (i, x) in c.into_iter().enumerate() {
                    mat.data[i][j] = x;
                }
            }
        }
        cup.push(mat);
    }
    massey_precondition(t, &dr, &cup)?;

    // E₂ basis at total degree n: (p, rep index, monomial)
    let e2_basis = |n: i64| -> Vec<(usize, usize, Mono)> {
        let mut out = Vec::new();
        for p in 0..=dim {
            for (i, _) in dr.reps[p].iter().enumerate() {
                for mono in monomials(n - p as i64) {
                    out.push((p, i, mono));
                }
            }
        }
        out
    };
    let d3 = |n: i64| -> QMatrix {
        let src = e2_basis(n);
        let dst = e2_basis(n + 1);
        let mut mat = QMatrix::zeros(dst.len(), src.len());
        for (j, (p, i, mono)) in src.iter().enumerate() {
            if p + 3 > dim {
                continue;
            }
            let dz = GradedPoly::monomial(Ring::N, mono.clone(), Q::one()).d0();
            for (mm, c) in dz.terms() {
                for r in 0..cup[*p].rows {
                    let x = &cup[*p].data[r][*i];
                    if x.is_zero() {
                        continue;
                    }
                    if let Some(row) = dst.iter().position(|(pp, ii, m2)| *pp == p + 3 && *ii == r && m2 == mm) {
                        mat.data[row][j] += x * c;
                    }
                }
            }
        }
        mat
    };
    let complex = TwistedComplex::new(ComplexKind::FormsN, t, max_coeff);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let e2 = e2_basis(n).len();
        let out = d3(n);
        let inc = d3(n - 1);
        let r_out = if out.rows == 0 || out.cols == 0 { 0 } else { bareiss_rank(&out) };
        let r_in = if inc.rows == 0 || inc.cols == 0 { 0 } else { bareiss_rank(&inc) };
        let betti = complex.cohomology(n)?.betti;
        rows.push(SsRow { n, e2, e4: e2 - r_out - r_in, betti });
    }
    Ok(SsReport { rows })
}

/// Refuses when a triple product ⟨H, H, x⟩ survives, which would make d₅ nonzero.
fn massey_precondition(t: &Twist, dr: &DeRham, cup: &[QMatrix]) -> Result<()> {
    let m = t.model();
    let dim = m.dim();
    for p in 0..=dim {
        if p + 5 > dim || dr.reps[p].is_empty() {
            continue;
        }
        let ker = if cup[p].rows == 0 { identity(dr.reps[p].len()) } else { kernel(&cup[p]) };
        for v in ker {
            let x = dr.reps[p].iter().zip(&v).fold(Form::zero(m), |acc, (r, c)| acc.try_add(&r.scale(c)).expect("same model"));
            let hx = t.form().try_wedge(&x)?;
            let y = dr.primitive(&hx, p + 3).ok_or_else(|| Error::Invariant("H∪x vanishes in cohomology but has no primitive".into()))?;
            let hy = t.form().try_wedge(&y)?;
            let c = dr.coords(&hy, p + 5)?;
            // indeterminacy: image of H∪ on H^{p+2}
            let img = &cup[p + 2];
            let mut span = Echelon::new(c.len());
            for j in 0..img.cols {
                span.insert(&(0..img.rows).map(|i| img.data[i][j].clone()).collect::<QVec>());
            }
            if !span.contains(&c) {
                return Err(Error::Refused(format!(
                    "Massey product ⟨H, H, {x}⟩ = [H∧({y})] is nonzero modulo H∪H^{}; d₅ does not vanish",
                    p + 2
                )));
            }
        }
    }
    Ok(())
}
