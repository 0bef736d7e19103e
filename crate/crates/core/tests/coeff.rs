// SPDX-License-Identifier: Apache-2.0
use num::{One, Zero};
use proptest::prelude::*;
use std::collections::BTreeMap;
use tdc_core::coeff::*;
use tdc_core::linalg::QMatrix;
use tdc_core::rational::{factorial, qi, Q};

fn n(s: &str) -> GradedPoly {
    GradedPoly::parse(Ring::N, s).unwrap()
}

fn mono(ring: Ring, m: &Mono) -> GradedPoly {
    GradedPoly::monomial(ring, m.clone(), Q::one())
}

#[test]
fn star_u_is_dzeta_and_adjoint_up_to_20() {
    let u = GradedPoly::gen0(Ring::V);
    let mut checked = 0;
    for d in (0..=20).step_by(2) {
        for mp in monomials(d) {
            let phi = mono(Ring::N, &mp);
            let lhs = star(&phi, &u).unwrap();
            assert_eq!(lhs, dzeta(&phi).unwrap(), "{phi}");
            for ma in monomials(d - 2) {
                let a = mono(Ring::V, &ma);
                let ua = &u * &a;
                assert_eq!(pair_coeff(&lhs, &a).unwrap(), pair_coeff(&phi, &ua).unwrap(), "{phi} vs {a}");
                checked += 1;
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn star_adjoint_to_multiplication_by_any_monomial() {
    for d in (0..=16).step_by(2) {
        for mp in monomials(d) {
            let phi = mono(Ring::N, &mp);
            for e in (0..=d).step_by(2) {
                for mv in monomials(e) {
                    let v = mono(Ring::V, &mv);
                    let s = star(&phi, &v).unwrap();
                    for ma in monomials(d - e) {
                        let a = mono(Ring::V, &ma);
                        assert_eq!(pair_total(&s, &a), pair_total(&phi, &(&v * &a)), "{phi} {v} {a}");
                    }
                }
            }
        }
    }
}

#[test]
fn gram_matrices_invertible_up_to_20() {
    for d in (0..=20).step_by(2) {
        let ms = monomials(d);
        let rows = ms
            .iter()
            .map(|a| ms.iter().map(|b| pair_coeff(&mono(Ring::N, a), &mono(Ring::V, b)).unwrap()).collect())
            .collect();
        let g = QMatrix::from_rows(ms.len(), rows);
        assert_eq!(g.rank(), ms.len(), "degree {d}");
    }
    // Σ_{j≤5} p(j)
    assert_eq!(monomials(20).len(), 19);
}

#[test]
fn dzeta_twice() {
    for k in 0..=10u32 {
        let zk = GradedPoly::monomial(Ring::N, Mono::pow0(k), Q::one());
        let dd = dzeta(&dzeta(&zk).unwrap()).unwrap();
        let expect = if k >= 2 {
            GradedPoly::monomial(Ring::N, Mono::pow0(k - 2), qi(k as i64 * (k as i64 - 1)))
        } else {
            GradedPoly::zero(Ring::N)
        };
        assert_eq!(dd, expect);
    }
    let u = GradedPoly::gen0(Ring::V);
    assert!(star(&star(&n("p1*z"), &u).unwrap(), &u).unwrap().is_zero());
}

#[test]
fn ring_mismatch_and_degree_errors() {
    let v = GradedPoly::gen0(Ring::V);
    assert!(star(&v, &v).is_err());
    assert!(dzeta(&v).is_err());
    assert!(pair_coeff(&n("z + p1"), &GradedPoly::parse(Ring::V, "u").unwrap()).is_err());
    assert!(ahat_series(3).is_err());
    assert!(exp_zeta(-2).is_err());
    assert!(GradedPoly::parse(Ring::N, "3*q1").is_err());
}

/// Coefficients of (√s/2)/sinh(√s/2) by direct series inversion.
fn q_series(n: usize) -> Vec<Q> {
    let s: Vec<Q> = (0..=n).map(|j| Q::new(1.into(), num::BigInt::from(4).pow(j as u32) * factorial(2 * j as u32 + 1))).collect();
    let mut inv = vec![Q::zero(); n + 1];
    inv[0] = Q::one();
    for k in 1..=n {
        let mut acc = Q::zero();
        for j in 1..=k {
            acc -= &s[j] * &inv[k - j];
        }
        inv[k] = acc;
    }
    inv
}

type ZPoly = BTreeMap<Vec<u32>, Q>;

fn zmul(a: &ZPoly, b: &ZPoly, maxdeg: u32) -> ZPoly {
    let mut out = ZPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() > maxdeg {
                continue;
            }
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Elementary symmetric polynomial e_i in m variables.
fn elementary(i: usize, m: usize) -> ZPoly {
    let mut out = ZPoly::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == i {
            out.insert((0..m).map(|j| (mask >> j) & 1).collect(), Q::one());
        }
    }
    out
}

#[test]
fn ahat_matches_symmetric_function_oracle() {
    for trunc in [0i64, 4, 8, 12, 16, 20] {
        let k = (trunc / 4) as usize;
        let m = k.max(1);
        let c = q_series(k);
        // Π_j Q(z_j), each z_j of degree 4
        let mut prod: ZPoly = [(vec![0; m], Q::one())].into_iter().collect();
        for j in 0..m {
            let factor: ZPoly = (0..=k)
                .map(|e| {
                    let mut v = vec![0; m];
                    v[j] = e as u32;
                    (v, c[e].clone())
                })
                .collect();
            prod = zmul(&prod, &factor, k as u32);
        }
        let a = ahat_series(trunc).unwrap().value;
        for (mo, _) in a.terms() {
            assert_eq!(mo.exp(0), 0, "Â has no z");
        }
        // substitute p_i = e_i(z)
        let mut sub = ZPoly::new();
        for (mo, co) in a.terms() {
            let mut t: ZPoly = [(vec![0; m], co.clone())].into_iter().collect();
            for (slot, &e) in mo.exps().iter().enumerate().skip(1) {
                for _ in 0..e {
                    t = zmul(&t, &elementary(slot, m), k as u32);
                }
            }
            for (e, c) in t {
                *sub.entry(e).or_insert_with(Q::zero) += c;
            }
        }
        sub.retain(|_, c| !c.is_zero());
        assert_eq!(sub, prod, "trunc {trunc}");
    }
}

fn arb_mono(max_deg: i64) -> impl Strategy<Value = Mono> {
    (0..=max_deg / 2).prop_flat_map(|h| {
        let ms = monomials(2 * h);
        (0..ms.len()).prop_map(move |i| ms[i].clone())
    })
}

proptest! {
    #[test]
    fn star_is_a_module_action(mp in arb_mono(20), m1 in arb_mono(10), m2 in arb_mono(10), c in -9i64..=9) {
        let phi = GradedPoly::monomial(Ring::N, mp, qi(c));
        let v1 = mono(Ring::V, &m1);
        let v2 = mono(Ring::V, &m2);
        let lhs = star(&star(&phi, &v1).unwrap(), &v2).unwrap();
        prop_assert_eq!(lhs, star(&phi, &(&v1 * &v2)).unwrap());
        prop_assert_eq!(star(&phi, &GradedPoly::one(Ring::V)).unwrap(), phi.clone());
        let u = GradedPoly::gen0(Ring::V);
        prop_assert_eq!(dzeta(&star(&phi, &u).unwrap()).unwrap(), star(&dzeta(&phi).unwrap(), &u).unwrap());
    }

    #[test]
    fn parse_print_round_trip(ms in proptest::collection::vec((arb_mono(12), -9i64..=9, 1i64..=4), 0..5), nring in any::<bool>()) {
        let ring = if nring { Ring::N } else { Ring::V };
        let mut p = GradedPoly::zero(ring);
        for (m, a, b) in ms {
            p.add_term(m, Q::new(a.into(), b.into()));
        }
        let s = p.to_string();
        let back = GradedPoly::parse(ring, &s).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), s);
    }
}
