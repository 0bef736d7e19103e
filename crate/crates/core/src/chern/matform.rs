// SPDX-License-Identifier: Apache-2.0
//! Square matrices with entries in a differential form algebra.

use crate::error::{Error, Result};
use crate::forms::DgForm;
use crate::rational::Q;
use num::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct MatForm<F: DgForm> {
    n: usize,
    proto: F,
    e: Vec<F>,
}

impl<F: DgForm> MatForm<F> {
    pub fn zeros(proto: &F, n: usize) -> Self {
        let z = proto.zero_like();
        MatForm { n, proto: z.clone(), e: vec![z; n * n] }
    }

    pub fn scalar(w: &F, n: usize) -> Self {
        let mut m = Self::zeros(w, n);
        for i in 0..n {
            m.e[i * n + i] = w.clone();
        }
        m
    }

    pub fn identity(proto: &F, n: usize) -> Self {
        Self::scalar(&proto.one_like(), n)
    }

    /// Rows must be non-empty and square.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Option<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let proto = rows[0][0].zero_like();
        Some(MatForm { n, proto, e: rows.into_iter().flatten().collect() })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn proto(&self) -> &F {
        &self.proto
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: F) {
        self.e[i * self.n + j] = w;
    }

    pub fn entries(&self) -> &[F] {
        &self.e
    }

    fn map(&self, f: impl Fn(&F) -> F) -> Self {
        MatForm { n: self.n, proto: self.proto.clone(), e: self.e.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "rank mismatch");
        MatForm { n: self.n, proto: self.proto.clone(), e: self.e.iter().zip(&o.e).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        self.map(|a| a.times(s))
    }

    pub fn d(&self) -> Self {
        self.map(DgForm::d)
    }

    /// Matrix product with entries multiplied by the wedge product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "rank mismatch");
        let n = self.n;
        let mut out = Self::zeros(&self.proto, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.e[i * n + j] = out.e[i * n + j].plus(&a.wedge(b));
                    }
                }
            }
        }
        out
    }

    /// Left multiplication of every entry by a form.
    pub fn lmul_form(&self, w: &F) -> Self {
        self.map(|a| w.wedge(a))
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(self.proto.clone(), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(DgForm::is_zero)
    }

    pub fn block_sum(&self, o: &Self) -> Self {
        let n = self.n + o.n;
        let mut out = Self::zeros(&self.proto, n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.e[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..o.n {
            for j in 0..o.n {
                out.e[(self.n + i) * n + self.n + j] = o.get(i, j).clone();
            }
        }
        out
    }

    /// Σ Aᵏ/k! for a matrix of nilpotent even forms; stops when powers vanish.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if self.e.iter().any(|a| a.degrees().first() == Some(&0)) {
            return Err(Error::Degree("exp of a matrix with degree-0 entries does not terminate".into()));
        }
        let mut out = Self::identity(&self.proto, self.n);
        let mut pow = out.clone();
        let mut k = 0i64;
        let cap = self.proto.ambient_dim() + 1;
        loop {
            k += 1;
            pow = pow.mul(self).scale(&Q::new(1.into(), k.into()));
            if pow.is_zero() || k as usize > cap {
                break;
            }
            out = out.add(&pow);
        }
        Ok(out)
    }

    /// All entries homogeneous of degree `deg` (zero entries allowed).
    pub fn entries_of_degree(&self, deg: usize) -> bool {
        self.e.iter().all(|a| a.is_zero() || a.degrees() == vec![deg])
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }
}

/// Weights of the closed Newton–Cotes rule on m+1 equispaced nodes of [0,1].
pub fn newton_cotes(m: usize) -> Vec<(Q, Q)> {
    if m == 0 {
        return vec![(Q::zero(), Q::one())];
    }
    let nodes: Vec<Q> = (0..=m).map(|j| Q::new(j.into(), m.into())).collect();
    let rows: Vec<Vec<Q>> = (0..=m)
        .map(|k| nodes.iter().map(|t| (0..k).fold(Q::one(), |acc, _| acc * t)).collect())
        .collect();
    let rhs: Vec<Q> = (0..=m).map(|k| Q::new(1.into(), (k + 1).into())).collect();
    let w = crate::linalg::solve(&crate::linalg::QMatrix::from_rows(m + 1, rows), &rhs).expect("Vandermonde is invertible");
    nodes.into_iter().zip(w).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_cotes_exact_on_polynomials() {
        for m in 1..6 {
            let rule = newton_cotes(m);
            for k in 0..=m {
                let s = rule.iter().fold(Q::zero(), |acc, (t, w)| acc + w * (0..k).fold(Q::one(), |a, _| a * t));
                assert_eq!(s, Q::new(1.into(), (k + 1).into()));
            }
        }
    }
}
