// SPDX-License-Identifier: Apache-2.0
//! Exact linear algebra over ℚ and ℤ.
//!
//! Ranks use fraction-free (Bareiss) elimination on integer-scaled rows;
//! kernels and spans use rational row reduction; integer cohomology uses a
//! Smith normal form with tracked unimodular transforms.

use crate::rational::Q;
use num::{BigInt, Integer, One, Signed, Zero};

pub type QVec = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<QVec>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![vec![Q::zero(); cols]; rows] }
    }

    pub fn from_rows(cols: usize, data: Vec<QVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        QMatrix { rows: data.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[QVec]) -> Self {
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> QVec {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self)
    }
}

fn lcm_denoms(row: &[Q]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Rank by fraction-free elimination.
pub fn bareiss_rank(m: &QMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .data
        .iter()
        .map(|r| {
            let l = lcm_denoms(r);
            r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let rows = a.len();
    let cols = m.cols;
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for i in rank + 1..rows {
            let f = a[i][col].clone();
            for j in col..cols {
                let v = (&piv * &a[i][j] - &f * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Incrementally built row-echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, QVec)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after reduction against the stored pivots.
    pub fn reduce(&self, v: &[Q]) -> QVec {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let c = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.data.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (QMatrix { rows: m.rows, cols: m.cols, data: a }, pivots)
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel(m: &QMatrix) -> Vec<QVec> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.data[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &QMatrix, b: &[Q]) -> Option<QVec> {
    let mut aug = m.clone();
    for (row, x) in aug.data.iter_mut().zip(b) {
        row.push(x.clone());
    }
    aug.cols += 1;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Q::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.data[i][m.cols].clone();
    }
    Some(x)
}

pub type ZMatrix = Vec<Vec<BigInt>>;

/// `u · a · v = d` with `d` diagonal, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: ZMatrix,
    pub u_inv: ZMatrix,
    pub v: ZMatrix,
    pub v_inv: ZMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn identity_z(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn zmul(a: &ZMatrix, b: &ZMatrix, inner: usize, cols: usize) -> ZMatrix {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn zapply(a: &ZMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|r| r.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect()
}

struct SnfState {
    a: ZMatrix,
    u: ZMatrix,
    ui: ZMatrix,
    v: ZMatrix,
    vi: ZMatrix,
}

impl SnfState {
    fn row_axpy(&mut self, i: usize, j: usize, c: &BigInt) {
        // R_i -= c R_j
        for m in [&mut self.a, &mut self.u] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&rj) {
                *x -= c * y;
            }
        }
        for row in self.ui.iter_mut() {
            let t = row[i].clone();
            row[j] += c * t;
        }
    }
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.ui.iter_mut() {
            row.swap(i, j);
        }
    }
    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -x.clone();
        }
        for row in self.ui.iter_mut() {
            row[i] = -row[i].clone();
        }
    }
    fn col_axpy(&mut self, i: usize, j: usize, c: &BigInt) {
        // C_i -= c C_j
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = row[j].clone();
                row[i] -= c * t;
            }
        }
        let ri = self.vi[i].clone();
        for (x, y) in self.vi[j].iter_mut().zip(&ri) {
            *x += c * y;
        }
    }
    fn col_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.vi.swap(i, j);
    }
}

pub fn smith(a: &ZMatrix, rows: usize, cols: usize) -> Smith {
    let mut s = SnfState {
        a: a.clone(),
        u: identity_z(rows),
        ui: identity_z(rows),
        v: identity_z(cols),
        vi: identity_z(cols),
    };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| s.a[i][j].abs() < s.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.row_swap(t, pi);
        s.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !s.a[i][t].is_zero() {
                    let q = s.a[i][t].div_floor(&s.a[t][t]);
                    s.row_axpy(i, t, &q);
                    if !s.a[i][t].is_zero() {
                        s.row_swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !s.a[t][j].is_zero() {
                    let q = s.a[t][j].div_floor(&s.a[t][t]);
                    s.col_axpy(j, t, &q);
                    if !s.a[t][j].is_zero() {
                        s.col_swap(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.a[i][j].is_multiple_of(&s.a[t][t]));
            match bad {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    s.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.a[t][t].is_negative() {
            s.row_neg(t);
        }
        t += 1;
    }
    let diag = (0..n).map(|i| s.a[i][i].clone()).collect();
    Smith { diag, u: s.u, u_inv: s.ui, v: s.v, v_inv: s.vi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    fn zm(rows: &[&[i64]]) -> ZMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
        assert_eq!(m.rank(), rref(&m).1.len());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        assert!(solve(&m, &[qi(1), qi(2)]).is_none());
        let x = solve(&m, &[qi(3), qi(3)]).unwrap();
        assert_eq!(m.apply(&x), vec![qi(3), qi(3)]);
    }

    #[test]
    fn echelon_span() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[qi(1), qi(1), qi(0)]));
        assert!(e.insert(&[qi(0), qi(1), qi(1)]));
        assert!(!e.insert(&[qi(1), qi(2), qi(1)]));
        assert!(e.contains(&[qi(1), qi(0), qi(-1)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn smith_transforms() {
        let a = zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3, 3);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = zmul(&zmul(&s.u, &a, 3, 3), &s.v, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], want);
            }
        }
        assert_eq!(zmul(&s.u, &s.u_inv, 3, 3), identity_z(3));
        assert_eq!(zmul(&s.v, &s.v_inv, 3, 3), identity_z(3));
    }
}
