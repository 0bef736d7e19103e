// SPDX-License-Identifier: Apache-2.0
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use tdc_core::cdga::{library, product_model, pullback_to_product, CdgaModel, Current, Form};
use tdc_core::coeff::{monomials, p_only_count, GradedPoly, Ring};
use tdc_core::rational::qi;
use tdc_core::twisted::*;
use tdc_core::Error;

const MODELS: [&str; 8] = ["pt", "s1", "t2", "s2", "t3", "s3", "s4", "cp2"];

fn n(s: &str) -> GradedPoly {
    GradedPoly::parse(Ring::N, s).unwrap()
}
fn v(s: &str) -> GradedPoly {
    GradedPoly::parse(Ring::V, s).unwrap()
}

/// Every (model, twist) of the test matrix.
fn configs() -> Vec<Twist> {
    let mut out = Vec::new();
    for name in MODELS {
        let m = library(name).unwrap();
        out.push(Twist::zero(&m));
        let top = match name {
            "s3" => Some("v"),
            "t3" => Some("dxdydz"),
            _ => None,
        };
        if let Some(h) = top {
            for k in 1..=3 {
                out.push(Twist::new(Form::sym(&m, h).unwrap().scale(&qi(k))).unwrap());
            }
        }
    }
    out
}

fn label(t: &Twist) -> String {
    format!("{} H={}", t.model().name(), t.form())
}

#[test]
fn all_differentials_square_to_zero() {
    let kinds = [ComplexKind::FormsN, ComplexKind::ChainsV, ComplexKind::CurrentsV, ComplexKind::CurrentsN, ComplexKind::Laurent { t_band: 6 }];
    for t in configs() {
        for kind in kinds {
            let c = TwistedComplex::new(kind, &t, 20);
            let bad: Vec<i64> = c.d_squared_zero().into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
            assert!(bad.is_empty(), "{} {}: {bad:?}", label(&t), kind.label());
            assert!(!c.degrees().is_empty());
        }
    }
}

#[test]
fn dh_examples() {
    let s3 = library("s3").unwrap();
    let h = Twist::parse(&s3, "v").unwrap();
    let one = Form::one(&s3);
    let vf = Form::sym(&s3, "v").unwrap();
    let out = apply_dh(&h, &CoeffForm::from_form(&one, &n("z"))).unwrap();
    assert_eq!(out, CoeffForm::from_form(&vf, &n("1")));
    let out = apply_dh(&h, &CoeffForm::from_form(&one, &n("z^2"))).unwrap();
    assert_eq!(out, CoeffForm::from_form(&vf, &n("2*z")));
    let out = apply_dh(&h, &CoeffForm::from_form(&one, &n("p2"))).unwrap();
    assert!(out.is_zero());

    // on the thick model dω ≠ 0
    let th = library("s3_thick").unwrap();
    let ht = Twist::parse(&th, "v").unwrap();
    let s = Form::sym(&th, "s").unwrap();
    let out = apply_dh(&ht, &CoeffForm::from_form(&s, &n("p2"))).unwrap();
    assert_eq!(out, CoeffForm::from_form(&s.dform(), &n("p2")));

    let fund = CoeffCurrent::from_current(&Current::fundamental(&s3), &v("1"));
    let pt_u = CoeffCurrent::from_current(&Current::point(&s3), &v("u"));
    assert_eq!(apply_dh_chain(&h, &fund).unwrap(), pt_u);
    assert!(apply_dh_chain(&Twist::zero(&s3), &fund).unwrap().is_zero());

    assert_eq!(pair(&CoeffForm::from_form(&vf, &n("1")), &fund).unwrap(), qi(1));
    let pt_u_coh = CoeffCurrent::from_current(&Current::point(&s3), &v("u"));
    assert_eq!(pair(&CoeffForm::from_form(&one, &n("z")), &pt_u_coh).unwrap(), qi(1));
    let fund_u = CoeffCurrent::from_current(&Current::fundamental(&s3), &v("u"));
    assert_eq!(pair(&CoeffForm::from_form(&vf, &n("z")), &fund_u).unwrap(), qi(1));
    assert!(pair(&CoeffForm::from_form(&vf, &n("z")), &fund).is_err());
}

#[test]
fn chain_side_is_a_complex_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in configs() {
        let m = t.model();
        for _ in 0..10 {
            let b = CoeffCurrent::random(m, Ring::V, 6, 12, 9, &mut rng);
            assert!(apply_dh_chain(&t, &apply_dh_chain(&t, &b).unwrap()).unwrap().is_zero());
            let a = CoeffForm::random(m, Ring::N, 4, 12, 9, &mut rng);
            assert!(apply_dh(&t, &apply_dh(&t, &a).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn adjointness_on_seeded_pairs() {
    for t in configs() {
        let rep = verify_adjoint(&t, 200, 7, 20).unwrap();
        assert!(rep.passed(), "{}: {:?}", label(&t), rep.failures);
        assert_eq!(rep.trials, 200);
        // minimal models have d = 0, so only the H-term can be nonzero
        if !t.form().is_zero() {
            assert!(rep.nontrivial > 50, "{}: only {} nontrivial", label(&t), rep.nontrivial);
        }
    }
}

#[test]
fn adjointness_with_nonzero_d() {
    let th = library("s3_thick").unwrap();
    for h in ["0", "v", "e", "2*v - e"] {
        let t = Twist::parse(&th, h).unwrap();
        let rep = verify_adjoint(&t, 200, 8, 20).unwrap();
        assert!(rep.passed(), "{h}: {:?}", rep.failures);
        assert!(rep.nontrivial > 50);
    }
}

#[test]
fn corrupted_sign_is_caught() {
    let s3 = library("s3").unwrap();
    let t = Twist::parse(&s3, "v").unwrap();
    let rep = verify_adjoint_with(&t, 100, 7, 20, true).unwrap();
    assert!(!rep.passed());
    // the untwisted complex does not see the corrupted term
    let rep = verify_adjoint_with(&Twist::zero(&s3), 50, 7, 20, true).unwrap();
    assert!(rep.passed());
}

#[test]
fn untwisted_cohomology_is_kuenneth() {
    for name in MODELS {
        let m = library(name).unwrap();
        let b = de_rham(&m).betti();
        let c = TwistedComplex::new(ComplexKind::FormsN, &Twist::zero(&m), 20);
        let ch = TwistedComplex::new(ComplexKind::ChainsV, &Twist::zero(&m), 20);
        for deg in 0..=12 {
            let expect: usize = b.iter().enumerate().map(|(p, bp)| bp * monomials(deg - p as i64).len()).sum();
            assert_eq!(c.cohomology(deg).unwrap().betti, expect, "{name} n={deg}");
            assert_eq!(ch.cohomology(deg).unwrap().betti, expect, "{name} chains n={deg}");
        }
    }
}

#[test]
fn perfect_pairing_up_to_8() {
    for t in configs() {
        for deg in 0..=8 {
            let (g, ok) = perfect_pairing(&t, deg, 20).unwrap();
            assert!(ok, "{} n={deg}: {}x{}", label(&t), g.rows, g.cols);
        }
    }
}

#[test]
fn s3_and_t3_oracles() {
    let s3 = library("s3").unwrap();
    for k in 1..=3 {
        let t = Twist::new(Form::sym(&s3, "v").unwrap().scale(&qi(k))).unwrap();
        let c = TwistedComplex::new(ComplexKind::FormsN, &t, 20);
        for deg in 0..=12 {
            assert_eq!(c.cohomology(deg).unwrap().betti, p_only_count(deg), "k={k} n={deg}");
        }
        assert_eq!(c.cohomology(3).unwrap().betti, 0);
        assert_eq!(c.cohomology(4).unwrap().betti, 1);
        let rep = ss_d3_check(&t, 12, 20).unwrap();
        assert!(rep.all_match(), "{:?}", rep.rows);
        assert_eq!(rep.rows.len(), 13);
    }
    let t3 = library("t3").unwrap();
    for k in 1..=3 {
        let t = Twist::new(Form::sym(&t3, "dxdydz").unwrap().scale(&qi(k))).unwrap();
        assert!(ss_d3_check(&t, 12, 20).unwrap().all_match());
    }
    for name in MODELS {
        let m = library(name).unwrap();
        let rep = ss_d3_check(&Twist::zero(&m), 12, 20).unwrap();
        assert!(rep.rows.iter().all(|r| r.e2 == r.e4 && r.matches()), "{name}");
    }
}

#[test]
fn cohomology_basis_is_closed_and_independent() {
    let s3 = library("s3").unwrap();
    let t = Twist::parse(&s3, "2*v").unwrap();
    let c = TwistedComplex::new(ComplexKind::FormsN, &t, 20);
    for deg in 0..=8 {
        let r = c.cohomology(deg).unwrap();
        assert_eq!(r.basis.len(), r.betti);
        for b in &r.basis {
            let w = c.to_coeff_form(deg, b).unwrap();
            assert!(apply_dh(&t, &w).unwrap().is_zero());
        }
    }
}

#[test]
fn band_violations_are_errors() {
    let s3 = library("s3").unwrap();
    let c = TwistedComplex::new(ComplexKind::FormsN, &Twist::zero(&s3), 20);
    assert!(matches!(c.cohomology(25), Err(Error::Band { .. })));
    assert!(matches!(ss_d3_check(&Twist::zero(&s3), 30, 20), Err(Error::Band { .. })));
    assert!(build_k_complex(&Twist::zero(&s3), 0).is_err());
    assert!(Twist::parse(&s3, "1").is_err());
    let thick = library("s3_thick").unwrap();
    assert!(Twist::parse(&thick, "c").is_err());
}

#[test]
fn k_complex() {
    let s3 = library("s3").unwrap();
    for k in 1..=3 {
        let t = Twist::new(Form::sym(&s3, "v").unwrap().scale(&qi(k))).unwrap();
        let c = build_k_complex(&t, 6).unwrap();
        let (lo, hi) = c.stable_band();
        assert!(hi > lo);
        for deg in lo..=hi {
            assert_eq!(c.cohomology(deg).unwrap().betti, 0, "k={k} n={deg}");
        }
    }
    for name in MODELS {
        let m = library(name).unwrap();
        let b = de_rham(&m).betti();
        let c = build_k_complex(&Twist::zero(&m), 6).unwrap();
        let (lo, hi) = c.stable_band();
        for deg in lo..=hi {
            let expect: usize = b.iter().enumerate().filter(|(p, _)| (*p as i64 - deg) % 2 == 0).map(|(_, x)| x).sum();
            assert_eq!(c.cohomology(deg).unwrap().betti, expect, "{name} n={deg}");
        }
    }
    // S³, H = 0: one class in each parity
    let c = build_k_complex(&Twist::zero(&s3), 6).unwrap();
    assert_eq!(c.cohomology(4).unwrap().betti + c.cohomology(5).unwrap().betti, 2);
}

fn product_pullback(base: &Arc<CdgaModel>) -> (Arc<CdgaModel>, tdc_core::cdga::CdgaMorphism) {
    let s1 = library("s1").unwrap();
    let total = product_model(base, &s1).unwrap();
    let pr = pullback_to_product(&total).unwrap();
    (total, pr)
}

#[test]
fn pullback_commutes_with_dh() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for t in configs() {
        let (_, pr) = product_pullback(t.model());
        let tp = t.pullback(&pr).unwrap();
        for deg in 0..8 {
            let a = CoeffForm::random(t.model(), Ring::N, deg, 12, 9, &mut rng);
            let lhs = apply_dh(&tp, &a.pullback(&pr).unwrap()).unwrap();
            let rhs = apply_dh(&t, &a).unwrap().pullback(&pr).unwrap();
            assert_eq!(lhs, rhs, "{}", label(&t));
        }
    }
}
