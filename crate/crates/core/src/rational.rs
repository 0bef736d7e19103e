// SPDX-License-Identifier: Apache-2.0
//! Exact rational scalars.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `7`, `-3/4`, `+2`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.trim_start_matches('+').parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Representative in `[0, 1)`.
pub fn mod1(x: &Q) -> Q {
    let fl = x.numer().div_floor(x.denom());
    x - Q::from_integer(fl)
}

pub fn fmt_mod1(x: &Q) -> String {
    format!("{} (mod 1)", fmt_q(&mod1(x)))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs_le(x: &Q, bound: i64) -> bool {
    x.abs() <= qi(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod1_ranges() {
        assert_eq!(mod1(&q(-1, 4)), q(3, 4));
        assert_eq!(mod1(&q(7, 2)), q(1, 2));
        assert_eq!(mod1(&qi(-3)), qi(0));
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "-3/4", "5", "12/7"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
        assert_eq!(parse_q("4/6").unwrap(), q(2, 3));
    }
}
