// SPDX-License-Identifier: Apache-2.0
//! Graded coefficient rings V = ℚ[u, x4, x8, …] and N = ℚ[z, p1, p2, …].
//!
//! Generator degrees are u, z ↦ 2 and x_{4i}, p_i ↦ 4i. A monomial is an
//! exponent vector whose slot 0 holds the u/z power and slot i the
//! x_{4i}/p_i power. N pairs with V through
//! ⟨p_I z^k, x_J u^l⟩ = k!·δ_{IJ}·δ_{kl}, and N is a V-module under the
//! transpose of multiplication, so that φ⋆u = ∂_z φ.

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, qi, Q};
use num::{BigInt, One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const DEFAULT_MAX_COEFF_DEGREE: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// ℚ[u, x4, x8, …], the homology side.
    V,
    /// ℚ[z, p1, p2, …], the cohomology side.
    N,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::V => "V",
            Ring::N => "N",
        }
    }

    fn gen_name(self, slot: usize) -> String {
        match (self, slot) {
            (Ring::V, 0) => "u".into(),
            (Ring::N, 0) => "z".into(),
            (Ring::V, i) => format!("x{}", 4 * i),
            (Ring::N, i) => format!("p{i}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn new(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono(e)
    }

    /// u^k or z^k.
    pub fn pow0(k: u32) -> Self {
        Mono::new(vec![k])
    }

    /// x_{4i} or p_i.
    pub fn gen(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Mono::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, slot: usize) -> u32 {
        self.0.get(slot).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| i64::from(e) * if i == 0 { 2 } else { 4 * i as i64 })
            .sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        Mono::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let n = self.0.len().max(other.0.len());
        let mut e = Vec::with_capacity(n);
        for i in 0..n {
            e.push(self.exp(i).checked_sub(other.exp(i))?);
        }
        Some(Mono::new(e))
    }

    /// Same exponents with the slot-0 power removed.
    pub fn tail(&self) -> Mono {
        let mut e = self.0.clone();
        if !e.is_empty() {
            e[0] = 0;
        }
        Mono::new(e)
    }

    fn fmt_in(&self, ring: Ring) -> String {
        // p-part first, then the slot-0 generator: `p1*z^2`
        let mut parts = Vec::new();
        let order = (1..self.0.len()).chain(std::iter::once(0));
        for i in order {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            let g = ring.gen_name(i);
            parts.push(if e == 1 { g } else { format!("{g}^{e}") });
        }
        parts.join("*")
    }
}

/// All monomials of weighted degree `deg`, in a fixed order.
pub fn monomials(deg: i64) -> Vec<Mono> {
    fn rec(slot: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if slot == 0 {
            if rem % 2 == 0 {
                let mut e = cur.clone();
                e[0] = (rem / 2) as u32;
                out.push(Mono::new(e));
            }
            return;
        }
        let w = 4 * slot as i64;
        let mut k = 0;
        while k * w <= rem {
            cur[slot] = k as u32;
            rec(slot - 1, rem - k * w, cur, out);
            k += 1;
        }
        cur[slot] = 0;
    }
    if deg < 0 || deg % 2 != 0 {
        return Vec::new();
    }
    let slots = (deg / 4) as usize;
    let mut cur = vec![0u32; slots + 1];
    let mut out = Vec::new();
    rec(slots, deg, &mut cur, &mut out);
    out.sort();
    out
}

/// Number of monomials in p1, p2, … alone of degree `deg`.
pub fn p_only_count(deg: i64) -> usize {
    monomials(deg).into_iter().filter(|m| m.exp(0) == 0).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    ring: Ring,
    terms: BTreeMap<Mono, Q>,
}

impl GradedPoly {
    pub fn zero(ring: Ring) -> Self {
        GradedPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn constant(ring: Ring, c: Q) -> Self {
        Self::monomial(ring, Mono::one(), c)
    }

    pub fn monomial(ring: Ring, m: Mono, c: Q) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    /// u or z.
    pub fn gen0(ring: Ring) -> Self {
        Self::monomial(ring, Mono::pow0(1), Q::one())
    }

    /// x_{4i} or p_i.
    pub fn gen(ring: Ring, i: usize) -> Self {
        Self::monomial(ring, Mono::gen(i), Q::one())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { expected: self.ring.name(), found: other.ring.name() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        GradedPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Largest term degree, or `None` for zero.
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Mono::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn homogeneous(&self, deg: i64) -> Self {
        GradedPoly {
            ring: self.ring,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every term of degree above `deg`.
    pub fn truncate(&self, deg: i64) -> Self {
        GradedPoly {
            ring: self.ring,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn check_max_degree(&self, max: i64) -> Result<()> {
        match self.max_degree() {
            Some(d) if d > max => Err(Error::Truncation { degree: d, max }),
            _ => Ok(()),
        }
    }

    /// Formal derivative in the slot-0 generator (∂_z on N, ∂_u on V).
    pub fn d0(&self) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let k = m.exp(0);
            if k == 0 {
                continue;
            }
            let mut e = m.exps().to_vec();
            e[0] -= 1;
            out.add_term(Mono::new(e), c * qi(i64::from(k)));
        }
        out
    }

    /// Multiplication by u (or z).
    pub fn times_gen0(&self) -> Self {
        GradedPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.mul(&Mono::pow0(1)), c.clone())).collect(),
        }
    }

    /// Replaces every generator by the given values and sums in a target ring `R`.
    pub fn evaluate<R, F>(&self, mut gen_value: F, one: R) -> R
    where
        R: Clone + Add<Output = R> + Mul<Output = R>,
        F: FnMut(usize) -> R,
        R: ScaleBy,
    {
        let mut cache: BTreeMap<(usize, u32), R> = BTreeMap::new();
        let mut acc: Option<R> = None;
        for (m, c) in &self.terms {
            let mut t = one.clone();
            for (slot, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let key = (slot, e);
                cache.entry(key).or_insert_with(|| {
                    let g = gen_value(slot);
                    let mut p = g.clone();
                    for _ in 1..e {
                        p = p * g.clone();
                    }
                    p
                });
                t = t * cache[&key].clone();
            }
            let t = t.scale_by(c);
            acc = Some(match acc {
                None => t,
                Some(a) => a + t,
            });
        }
        acc.unwrap_or_else(|| one.scale_by(&Q::zero()))
    }

    pub fn parse(ring: Ring, s: &str) -> Result<Self> {
        parse_poly(ring, s)
    }
}

/// Scalar multiplication by a rational, used by [`GradedPoly::evaluate`].
pub trait ScaleBy {
    fn scale_by(&self, c: &Q) -> Self;
}

impl ScaleBy for GradedPoly {
    fn scale_by(&self, c: &Q) -> Self {
        self.scale(c)
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        self.try_add(&rhs).expect("ring mismatch in +")
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Q::one())
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: GradedPoly) -> GradedPoly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(&rhs.scale(&-Q::one())).expect("ring mismatch in -")
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        self.try_mul(&rhs).expect("ring mismatch in *")
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

fn factorial_q(n: u32) -> Q {
    Q::from_integer(crate::rational::factorial(n))
}

/// φ ⋆ v for φ ∈ N, v ∈ V.
pub fn star(phi: &GradedPoly, v: &GradedPoly) -> Result<GradedPoly> {
    expect_ring(phi, Ring::N)?;
    expect_ring(v, Ring::V)?;
    let mut out = GradedPoly::zero(Ring::N);
    for (mp, cp) in phi.terms() {
        for (mv, cv) in v.terms() {
            let (k, l) = (mp.exp(0), mv.exp(0));
            if l > k {
                continue;
            }
            let Some(rest) = mp.tail().div(&mv.tail()) else { continue };
            let f = factorial_q(k) / factorial_q(k - l);
            out.add_term(rest.mul(&Mono::pow0(k - l)), cp * cv * f);
        }
    }
    Ok(out)
}

/// ∂_z on N.
pub fn dzeta(phi: &GradedPoly) -> Result<GradedPoly> {
    expect_ring(phi, Ring::N)?;
    Ok(phi.d0())
}

fn expect_ring(p: &GradedPoly, r: Ring) -> Result<()> {
    if p.ring() != r {
        return Err(Error::RingMismatch { expected: r.name(), found: p.ring().name() });
    }
    Ok(())
}

/// Pairing of homogeneous elements of equal degree.
pub fn pair_coeff(phi: &GradedPoly, v: &GradedPoly) -> Result<Q> {
    expect_ring(phi, Ring::N)?;
    expect_ring(v, Ring::V)?;
    if !phi.is_homogeneous() || !v.is_homogeneous() {
        return Err(Error::Degree("pair_coeff needs homogeneous arguments".into()));
    }
    if let (Some(a), Some(b)) = (phi.max_degree(), v.max_degree()) {
        if a != b {
            return Err(Error::Degree(format!("pairing degree {a} against degree {b}")));
        }
    }
    Ok(pair_total(phi, v))
}

/// Degreewise pairing summed over all degrees.
pub fn pair_total(phi: &GradedPoly, v: &GradedPoly) -> Q {
    let mut acc = Q::zero();
    for (m, c) in phi.terms() {
        let w = v.coeff(m);
        if !w.is_zero() {
            acc += c * w * factorial_q(m.exp(0));
        }
    }
    acc
}

/// Whether a pairing touches x/p generators, whose normalization is a convention.
pub fn pairing_uses_convention(phi: &GradedPoly, v: &GradedPoly) -> bool {
    phi.terms().any(|(m, _)| m.tail() != Mono::one() && !v.coeff(m).is_zero())
}

/// Σ_{k ≤ trunc/2} z^k / k!.
pub fn exp_zeta(trunc: i64) -> Result<GradedPoly> {
    if trunc < 0 {
        return Err(Error::Degree(format!("negative truncation {trunc}")));
    }
    let mut out = GradedPoly::zero(Ring::N);
    for k in 0..=(trunc / 2) as u32 {
        out.add_term(Mono::pow0(k), factorial_q(k).recip());
    }
    Ok(out)
}

/// Truncated characteristic series in the Pontryagin generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSeries {
    pub trunc: i64,
    pub value: GradedPoly,
}

/// Coefficients of log((√z/2)/sinh(√z/2)) up to z^n.
fn log_ahat_coeffs(n: usize) -> Vec<Q> {
    // s(z) = sinh(y)/y with y² = z/4, i.e. Σ z^j / (4^j (2j+1)!)
    let s: Vec<Q> = (0..=n)
        .map(|j| {
            let den = BigInt::from(4).pow(j as u32) * crate::rational::factorial(2 * j as u32 + 1);
            Q::new(BigInt::one(), den)
        })
        .collect();
    // log s via l' = s'/s, then negate
    let mut l = vec![Q::zero(); n + 1];
    for k in 1..=n {
        // k s_k = Σ_{j=1}^{k} j l_j s_{k-j}
        let mut acc = qi(k as i64) * &s[k];
        for j in 1..k {
            acc -= qi(j as i64) * &l[j] * &s[k - j];
        }
        l[k] = acc / qi(k as i64);
    }
    l.into_iter().map(|x| -x).collect()
}

/// Power sums of the Pontryagin roots as polynomials in p_i, via Newton.
fn power_sums(n: usize) -> Vec<GradedPoly> {
    let mut s: Vec<GradedPoly> = vec![GradedPoly::zero(Ring::N); n + 1];
    for k in 1..=n {
        let mut acc = GradedPoly::zero(Ring::N);
        for i in 1..k {
            let term = &GradedPoly::gen(Ring::N, i) * &s[k - i];
            let sign = if i % 2 == 1 { Q::one() } else { -Q::one() };
            acc = &acc + &term.scale(&sign);
        }
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        acc = &acc + &GradedPoly::gen(Ring::N, k).scale(&(sign * qi(k as i64)));
        s[k] = acc;
    }
    s
}

fn exp_series(x: &GradedPoly, trunc: i64) -> GradedPoly {
    let mut out = GradedPoly::one(Ring::N);
    let mut term = GradedPoly::one(Ring::N);
    let mut k = 1i64;
    loop {
        term = (&term * x).truncate(trunc).scale(&qi(k).recip());
        if term.is_zero() {
            break;
        }
        out = &out + &term;
        k += 1;
    }
    out
}

/// Â through degree `trunc`.
pub fn ahat_series(trunc: i64) -> Result<CharSeries> {
    if trunc < 0 || trunc % 2 != 0 {
        return Err(Error::Degree(format!("truncation {trunc} must be even and non-negative")));
    }
    let n = (trunc / 4) as usize;
    let a = log_ahat_coeffs(n);
    let s = power_sums(n);
    let mut log = GradedPoly::zero(Ring::N);
    for k in 1..=n {
        log = &log + &s[k].scale(&a[k]);
    }
    Ok(CharSeries { trunc, value: exp_series(&log, trunc) })
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // lowest degree first, then monomial order
        let mut items: Vec<(&Mono, &Q)> = self.terms.iter().collect();
        items.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let body = m.fmt_in(self.ring);
            if body.is_empty() {
                f.write_str(&fmt_q(&a))?;
            } else if a.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), body)?;
            }
        }
        Ok(())
    }
}

/// Splits `a + b - c` into signed terms, ignoring signs inside exponents.
pub(crate) fn split_signed_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        let at_top = depth == 0;
        let after_op = matches!(prev, Some('^') | Some('*') | Some('/'));
        if at_top && (ch == '+' || ch == '-') && !after_op {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            } else if ch == '-' && out.is_empty() && cur.trim().is_empty() {
                neg = !neg;
                prev = Some(ch);
                continue;
            }
            cur.clear();
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

fn parse_gen(ring: Ring, sym: &str) -> Option<usize> {
    let (zero, prefix, scale) = match ring {
        Ring::V => ("u", "x", 4usize),
        Ring::N => ("z", "p", 1usize),
    };
    if sym == zero {
        return Some(0);
    }
    let n: usize = sym.strip_prefix(prefix)?.parse().ok()?;
    if n == 0 || !n.is_multiple_of(scale) {
        return None;
    }
    Some(n / scale)
}

fn parse_poly(ring: Ring, s: &str) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero(ring);
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse { line: 1, msg: "empty polynomial".into() });
    }
    for (neg, term) in split_signed_terms(s) {
        let mut c = if neg { -Q::one() } else { Q::one() };
        let mut exps: Vec<u32> = Vec::new();
        for factor in term.split('*') {
            let factor = factor.trim();
            if let Some(x) = parse_q(factor) {
                c *= x;
                continue;
            }
            let (sym, e) = match factor.split_once('^') {
                Some((a, b)) => (a.trim(), b.trim().parse::<u32>().map_err(|_| Error::Parse { line: 1, msg: format!("bad exponent in '{factor}'") })?),
                None => (factor, 1),
            };
            let slot = parse_gen(ring, sym).ok_or_else(|| Error::Parse { line: 1, msg: format!("unknown generator '{sym}' for ring {ring}") })?;
            if exps.len() <= slot {
                exps.resize(slot + 1, 0);
            }
            exps[slot] += e;
        }
        out.add_term(Mono::new(exps), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn n(s: &str) -> GradedPoly {
        GradedPoly::parse(Ring::N, s).unwrap()
    }
    fn v(s: &str) -> GradedPoly {
        GradedPoly::parse(Ring::V, s).unwrap()
    }

    #[test]
    fn add_and_mul() {
        assert_eq!(v("u") + v("u"), v("2*u"));
        assert_eq!(v("u^2 + x4") + v("-x4"), v("u^2"));
        assert_eq!(v("u") * v("u"), v("u^2"));
        assert_eq!((v("u") * v("u")).max_degree(), Some(4));
        assert_eq!((n("z") * n("p1")).max_degree(), Some(6));
        assert_eq!(n("1+z") * n("1+z"), n("1 + 2*z + z^2"));
        assert!(n("z").try_add(&v("u")).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&n("p1*z^2"), &v("u")).unwrap(), n("2*p1*z"));
        let phi = n("3/2*p1*z^2 + p2");
        assert_eq!(star(&phi, &v("1")).unwrap(), phi);
        let once = star(&n("p1*z"), &v("u")).unwrap();
        assert!(star(&once, &v("u")).unwrap().is_zero());
    }

    #[test]
    fn dzeta_examples() {
        assert_eq!(dzeta(&n("z^3")).unwrap(), n("3*z^2"));
        assert!(dzeta(&n("p2")).unwrap().is_zero());
        assert_eq!(dzeta(&n("p1*z^2")).unwrap(), n("2*p1*z"));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair_coeff(&n("z"), &v("u")).unwrap(), q(1, 1));
        assert_eq!(pair_coeff(&n("1"), &v("1")).unwrap(), q(1, 1));
        assert_eq!(pair_coeff(&n("z^2"), &v("u^2")).unwrap(), q(2, 1));
        assert!(pair_coeff(&n("z"), &v("u^2")).is_err());
    }

    #[test]
    fn series_examples() {
        assert_eq!(ahat_series(0).unwrap().value, n("1"));
        assert_eq!(ahat_series(4).unwrap().value, n("1 - 1/24*p1"));
        assert_eq!(ahat_series(8).unwrap().value, n("1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2"));
        assert_eq!(exp_zeta(0).unwrap(), n("1"));
        assert_eq!(exp_zeta(4).unwrap(), n("1 + z + 1/2*z^2"));
        assert_eq!(exp_zeta(6).unwrap(), n("1 + z + 1/2*z^2 + 1/6*z^3"));
    }

    #[test]
    fn print_round_trip() {
        for s in ["3/2*p1*z^2 + p2", "0", "-1/24*p1", "1 - z", "u^2 - 3*x8*u"] {
            let ring = if s.contains('u') || s.contains('x') { Ring::V } else { Ring::N };
            let p = GradedPoly::parse(ring, s).unwrap();
            let printed = p.to_string();
            assert_eq!(GradedPoly::parse(ring, &printed).unwrap(), p);
            assert_eq!(GradedPoly::parse(ring, &printed).unwrap().to_string(), printed);
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0).len(), 1);
        assert_eq!(monomials(8).len(), 4);
        assert_eq!(monomials(12).len(), 7);
        assert_eq!(p_only_count(8), 2);
        assert_eq!(p_only_count(12), 3);
        assert!(monomials(5).is_empty());
    }
}
