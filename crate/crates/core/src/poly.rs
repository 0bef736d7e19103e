// SPDX-License-Identifier: Apache-2.0
//! Polynomial differential forms ℚ[x_1..x_n] ⊗ Λ(dx_1..dx_n).

use crate::coeff::split_signed_terms;
use crate::error::{Error, Result};
use crate::forms::DgForm;
use crate::rational::{factorial, fmt_q, parse_q, qi, Q};
use num::{One, Signed, Zero};
use rand::Rng;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

type Term = (Vec<u32>, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    nvars: usize,
    terms: BTreeMap<Term, Q>,
}

fn popcount(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Sign of dx_S ∧ dx_T as a multiple of dx_{S∪T}.
fn wedge_sign(s: u32, t: u32) -> Option<Q> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut bits = t;
    while bits != 0 {
        let j = bits.trailing_zeros();
        inversions += (s >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    Some(if inversions.is_multiple_of(2) { Q::one() } else { -Q::one() })
}

impl PolyForm {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 31, "at most 31 variables");
        PolyForm { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], 0, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    /// The coordinate function x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, 0, Q::one());
        p
    }

    /// The 1-form dx_i.
    pub fn dvar(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], 1 << i, Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, mask: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((e, mask)) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &PolyForm) -> PolyForm {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for ((e, m), c) in &o.terms {
            out.add_term(e.clone(), *m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> PolyForm {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        PolyForm { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    pub fn wedge(&self, o: &PolyForm) -> PolyForm {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for ((e1, m1), c1) in &self.terms {
            for ((e2, m2), c2) in &o.terms {
                let Some(s) = wedge_sign(*m1, *m2) else { continue };
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, m1 | m2, c1 * c2 * s);
            }
        }
        out
    }

    pub fn d(&self) -> PolyForm {
        let mut out = Self::zero(self.nvars);
        for ((e, m), c) in &self.terms {
            for i in 0..self.nvars {
                if e[i] == 0 {
                    continue;
                }
                let Some(s) = wedge_sign(1 << i, *m) else { continue };
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, m | (1 << i), c * qi(i64::from(e[i])) * s);
            }
        }
        out
    }

    pub fn part(&self, deg: usize) -> PolyForm {
        PolyForm {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|((_, m), _)| popcount(*m) == deg).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|(_, m)| popcount(*m)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest polynomial degree among terms.
    pub fn poly_degree(&self) -> u32 {
        self.terms.keys().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Pullback along x_i ↦ images[i], each a 0-form in the new variables.
    pub fn pullback(&self, images: &[PolyForm]) -> PolyForm {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let m = images.first().map_or(0, |p| p.nvars);
        let dimages: Vec<PolyForm> = images.iter().map(PolyForm::d).collect();
        let mut out = Self::zero(m);
        let mut powers: BTreeMap<(usize, u32), PolyForm> = BTreeMap::new();
        for ((e, mask), c) in &self.terms {
            let mut t = PolyForm::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, k))
                    .or_insert_with(|| (0..k).fold(PolyForm::one(m), |acc, _| acc.wedge(&images[i])))
                    .clone();
                t = t.wedge(&p);
            }
            for (i, dimg) in dimages.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    t = t.wedge(dimg);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// ∫ over {x ≥ 0, Σx ≤ 1} oriented by dx_1∧…∧dx_n.
    pub fn integrate_simplex(&self) -> Q {
        let n = self.nvars;
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let mut acc = Q::zero();
        for ((e, m), c) in &self.terms {
            if *m != full {
                continue;
            }
            let num = e.iter().fold(num::BigInt::one(), |a, &k| a * factorial(k));
            let den = factorial(e.iter().sum::<u32>() + n as u32);
            acc += c * Q::new(num, den);
        }
        acc
    }

    /// ∫ over [0,1]^n oriented by dx_1∧…∧dx_n.
    pub fn integrate_cube(&self) -> Q {
        let n = self.nvars;
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let mut acc = Q::zero();
        for ((e, m), c) in &self.terms {
            if *m != full {
                continue;
            }
            let den = e.iter().fold(num::BigInt::one(), |a, &k| a * num::BigInt::from(k + 1));
            acc += c / Q::from_integer(den);
        }
        acc
    }

    /// Value of a 0-form at a point.
    pub fn eval_at(&self, x: &[Q]) -> Q {
        let mut acc = Q::zero();
        for ((e, m), c) in &self.terms {
            if *m != 0 {
                continue;
            }
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Random form with polynomial degree ≤ `pdeg`, in the given form degree.
    pub fn random<R: Rng>(nvars: usize, form_deg: usize, pdeg: u32, bound: i64, density: f64, rng: &mut R) -> PolyForm {
        let mut out = Self::zero(nvars);
        let masks: Vec<u32> = (0u32..(1 << nvars)).filter(|m| popcount(*m) == form_deg).collect();
        for e in exponent_vectors(nvars, pdeg) {
            for &m in &masks {
                if rng.gen_bool(density) {
                    out.add_term(e.clone(), m, qi(rng.gen_range(-bound..=bound)));
                }
            }
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, ((e, m), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            s.push_str(match (i == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let mut factors = Vec::new();
            let a = c.abs();
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[j].clone()),
                    _ => factors.push(format!("{}^{k}", names[j])),
                }
            }
            for j in 0..self.nvars {
                if m & (1 << j) != 0 {
                    factors.push(format!("d{}", names[j]));
                }
            }
            if factors.is_empty() {
                s.push_str(&fmt_q(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&fmt_q(&a));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn parse_with(names: &[String], text: &str) -> Result<PolyForm> {
        let n = names.len();
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse { line: 0, msg: "empty polynomial form".into() });
        }
        let mut out = Self::zero(n);
        for (neg, term) in split_signed_terms(text) {
            let mut t = PolyForm::constant(n, if neg { -Q::one() } else { Q::one() });
            for f in term.split('*') {
                let f = f.trim();
                if let Some(x) = parse_q(f) {
                    t = t.scale(&x);
                    continue;
                }
                let (sym, k) = match f.split_once('^') {
                    Some((a, b)) => (a.trim(), b.trim().parse::<u32>().map_err(|_| Error::Parse { line: 0, msg: format!("bad exponent '{f}'") })?),
                    None => (f, 1),
                };
                let factor = if let Some(i) = names.iter().position(|x| x == sym) {
                    PolyForm::var(n, i)
                } else if let Some(i) = sym.strip_prefix('d').and_then(|s| names.iter().position(|x| x == s)) {
                    PolyForm::dvar(n, i)
                } else {
                    return Err(Error::Parse { line: 0, msg: format!("unknown factor '{sym}'") });
                };
                for _ in 0..k {
                    t = t.wedge(&factor);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

/// Exponent vectors of total degree ≤ `deg`.
pub fn exponent_vectors(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=rem {
            cur[i] = k;
            rec(i + 1, n, rem - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, n, deg, &mut vec![0; n], &mut out);
    out
}

impl DgForm for PolyForm {
    fn zero_like(&self) -> Self {
        PolyForm::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        PolyForm::one(self.nvars)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, s: &Q) -> Self {
        self.scale(s)
    }
    fn wedge(&self, o: &Self) -> Self {
        PolyForm::wedge(self, o)
    }
    fn d(&self) -> Self {
        PolyForm::d(self)
    }
    fn is_zero(&self) -> bool {
        PolyForm::is_zero(self)
    }
    fn part(&self, deg: usize) -> Self {
        PolyForm::part(self, deg)
    }
    fn ambient_dim(&self) -> usize {
        self.nvars
    }
    fn degrees(&self) -> Vec<usize> {
        PolyForm::degrees(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn d_squared_and_leibniz() {
        let a = PolyForm::parse_with(&names(3), "x1^2*x2 + 3*x3*dx1").unwrap();
        let b = PolyForm::parse_with(&names(3), "x2*dx3 - x1*x3").unwrap();
        assert!(a.d().d().is_zero());
        let lhs = a.wedge(&b).d();
        let odd = a.part(1);
        let even = a.part(0);
        let rhs = a.d().wedge(&b).add(&even.wedge(&b.d())).add(&odd.wedge(&b.d()).scale(&q(-1, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_commutativity_signs() {
        let n = names(2);
        let dx = PolyForm::parse_with(&n, "dx1").unwrap();
        let dy = PolyForm::parse_with(&n, "dx2").unwrap();
        assert_eq!(dx.wedge(&dy), dy.wedge(&dx).scale(&q(-1, 1)));
        assert!(dx.wedge(&dx).is_zero());
        assert_eq!(PolyForm::parse_with(&n, "dx2*dx1").unwrap(), PolyForm::parse_with(&n, "-dx1*dx2").unwrap());
    }

    #[test]
    fn simplex_and_cube_integrals() {
        let n = names(2);
        assert_eq!(PolyForm::parse_with(&n, "dx1*dx2").unwrap().integrate_simplex(), q(1, 2));
        assert_eq!(PolyForm::parse_with(&n, "x1*dx1*dx2").unwrap().integrate_simplex(), q(1, 6));
        assert_eq!(PolyForm::parse_with(&n, "x1*x2^2*dx1*dx2").unwrap().integrate_cube(), q(1, 6));
        assert_eq!(PolyForm::parse_with(&n, "dx2*dx1").unwrap().integrate_cube(), q(-1, 1));
    }

    #[test]
    fn pullback_commutes_with_d() {
        let n = names(2);
        let a = PolyForm::parse_with(&n, "x1^2*x2*dx1 + x2^3").unwrap();
        let m = names(3);
        let imgs = vec![
            PolyForm::parse_with(&m, "x1 + x3").unwrap(),
            PolyForm::parse_with(&m, "1 - x1 - x2").unwrap(),
        ];
        assert_eq!(a.pullback(&imgs).d(), a.d().pullback(&imgs));
    }

    #[test]
    fn print_parse_round_trip() {
        let n = names(3);
        let a = PolyForm::parse_with(&n, "3/2*x1*x3^2*dx1*dx3 - x2 + 7").unwrap();
        assert_eq!(PolyForm::parse_with(&n, &a.fmt_with(&n)).unwrap(), a);
    }
}
