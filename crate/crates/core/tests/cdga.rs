// SPDX-License-Identifier: Apache-2.0
use num::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use tdc_core::cdga::*;
use tdc_core::chern::matform::MatForm;
use tdc_core::error::Error;
use tdc_core::rational::{q, qi, Q};

fn sym(m: &Arc<CdgaModel>, s: &str) -> Form {
    Form::sym(m, s).unwrap()
}

#[test]
fn shipped_models_load() {
    for name in library_names() {
        let m = library(name).unwrap();
        if m.dim() > 0 {
            assert_eq!(Form::one(&m).integrate(), Q::zero(), "{name}");
        }
        let top: Q = (0..m.len()).filter(|&i| m.deg(i) == m.dim()).map(|i| m.integral_of(i).clone()).sum();
        assert!(!top.is_zero(), "{name}");
    }
    assert_eq!(library("S_3").unwrap().name(), library("s3").unwrap().name());
    assert!(matches!(library("k3"), Err(Error::Unknown(_))));
}

#[test]
fn parse_examples_and_errors() {
    let s3 = parse_model("model S3\ndim 3\ngen v deg 3\nintegral v = 1\n").unwrap();
    assert_eq!(s3.dim(), 3);
    let bad = parse_model("model X\ndim 3\ngen v deg 3\nd v = v\nintegral v = 1\n");
    assert!(matches!(bad, Err(Error::Parse { line: 4, .. })), "{bad:?}");
    let bad = parse_model("model X\ndim 2\ngen a deg 1\nfrobnicate a\n");
    assert!(matches!(bad, Err(Error::Parse { line: 4, .. })), "{bad:?}");
    // non-commuting table
    let bad = parse_model("model X\ndim 2\ngen a deg 1\ngen b deg 1\ngen ab deg 2\nmul a*b = ab\nmul b*a = ab\nintegral ab = 1\n");
    assert!(bad.is_err());
    // Stokes
    let bad = parse_model("model X\ndim 1\ngen s deg 0\ngen r deg 1\nd s = r\nmul s*s = s\nmul s*r = r\nintegral r = 1\n");
    assert!(bad.is_err());
}

#[test]
fn torus_and_sphere_examples() {
    let t2 = library("t2").unwrap();
    let (dx, dy) = (sym(&t2, "dx"), sym(&t2, "dy"));
    assert!(dx.try_wedge(&dx).unwrap().is_zero());
    assert_eq!(dx.try_wedge(&dy).unwrap().integrate(), Q::one());
    assert_eq!(dy.try_wedge(&dx).unwrap().integrate(), -Q::one());
    let s3 = library("s3").unwrap();
    assert_eq!(sym(&s3, "v").integrate(), Q::one());
    assert!(dx.try_wedge(&sym(&s3, "v")).is_err());
    let fund = Current::fundamental(&s3);
    assert_eq!(fund.eval(&sym(&s3, "v")).unwrap(), Q::one());
    assert!(fund.boundary().is_zero());
}

#[test]
fn boundary_is_adjoint_of_d() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in library_names() {
        let m = library(name).unwrap();
        for _ in 0..20 {
            let t = Current::random(&m, None, 9, &mut rng);
            let a = Form::random(&m, None, 9, &mut rng);
            assert_eq!(t.boundary().eval(&a).unwrap(), t.eval(&a.dform()).unwrap(), "{name}");
        }
    }
}

#[test]
fn random_forms_satisfy_leibniz_and_commutativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for name in library_names() {
        let m = library(name).unwrap();
        for _ in 0..10 {
            for p in 0..=m.dim() {
                for r in 0..=m.dim() {
                    let a = Form::random(&m, Some(p), 9, &mut rng);
                    let b = Form::random(&m, Some(r), 9, &mut rng);
                    let ab = a.try_wedge(&b).unwrap();
                    let sign = if (p * r) % 2 == 0 { Q::one() } else { -Q::one() };
                    assert_eq!(ab, b.try_wedge(&a).unwrap().scale(&sign));
                    let s = if p % 2 == 0 { Q::one() } else { -Q::one() };
                    let rhs = a.dform().try_wedge(&b).unwrap().try_add(&a.try_wedge(&b.dform()).unwrap().scale(&s)).unwrap();
                    assert_eq!(ab.dform(), rhs);
                    assert!(a.dform().dform().is_zero());
                }
            }
        }
    }
}

#[test]
fn product_models() {
    let pt = library("pt").unwrap();
    let s1 = library("s1").unwrap();
    let p = product_model(&pt, &s1).unwrap();
    assert_eq!((p.dim(), p.len()), (1, 2));

    // S¹ × S¹ against the hand-built torus: same degrees, same integral pairing
    let t = product_model(&s1, &s1).unwrap();
    let t2 = library("t2").unwrap();
    assert_eq!(t.len(), t2.len());
    let degs = |m: &Arc<CdgaModel>| {
        let mut d: Vec<usize> = (0..m.len()).map(|i| m.deg(i)).collect();
        d.sort();
        d
    };
    assert_eq!(degs(&t), degs(&t2));
    // index i·|F| + j, so index 2 is the first factor
    let a = Form::basis(&t, 2);
    let b = Form::basis(&t, 1);
    assert_eq!(a.try_wedge(&b).unwrap().integrate(), Q::one());
    assert_eq!(b.try_wedge(&a).unwrap().integrate(), -Q::one());
    assert!(a.try_wedge(&a).unwrap().is_zero());

    let s3 = library("s3").unwrap();
    let x = product_model(&s3, &s1).unwrap();
    assert_eq!(x.dim(), 4);
    let v = pullback_to_product(&x).unwrap().apply(&sym(&s3, "v")).unwrap();
    let th = pullback_from_fiber(&x).unwrap().apply(&sym(&s1, "dth")).unwrap();
    assert_eq!(v.try_wedge(&th).unwrap().integrate(), Q::one());
}

#[test]
fn fiber_integration_examples() {
    let s1 = library("s1").unwrap();
    let s3 = library("s3").unwrap();
    let t2 = library("t2").unwrap();
    let n = product_model(&t2, &s1).unwrap();
    let pr = pullback_to_product(&n).unwrap();
    let th = pullback_from_fiber(&n).unwrap().apply(&sym(&s1, "dth")).unwrap();
    let w = sym(&t2, "dx").scale(&qi(3));
    let pw = pr.apply(&w).unwrap();
    assert_eq!(fiber_integrate(&n, &pw.try_wedge(&th).unwrap()).unwrap(), w);
    assert!(fiber_integrate(&n, &pw).unwrap().is_zero());

    let pt = library("pt").unwrap();
    let n = product_model(&pt, &s3).unwrap();
    let v = pullback_from_fiber(&n).unwrap().apply(&sym(&s3, "v")).unwrap();
    assert_eq!(fiber_integrate(&n, &v).unwrap(), Form::one(&pt));
    assert!(fiber_integrate(&n, &Form::one(&library("s1").unwrap())).is_err());
}

#[test]
fn projection_formula_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for x in ["pt", "s1", "s3"] {
        for f in ["s1", "s3"] {
            let (xm, fm) = (library(x).unwrap(), library(f).unwrap());
            let n = product_model(&xm, &fm).unwrap();
            let pr = pullback_to_product(&n).unwrap();
            for _ in 0..30 {
                let w = Form::random(&xm, None, 9, &mut rng);
                let b = Form::random(&n, None, 9, &mut rng);
                let lhs = fiber_integrate(&n, &pr.apply(&w).unwrap().try_wedge(&b).unwrap()).unwrap();
                let rhs = w.try_wedge(&fiber_integrate(&n, &b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{x} x {f}");
                // Fubini
                let top = Form::random(&n, Some(n.dim()), 9, &mut rng);
                assert_eq!(fiber_integrate(&n, &top).unwrap().integrate(), top.integrate());
            }
        }
    }
}

#[test]
fn morphisms_are_checked() {
    let s1 = library("s1").unwrap();
    let t2 = library("t2").unwrap();
    let f = CdgaMorphism::from_symbols(&t2, &s1, &[("dx".into(), "2*dth".into()), ("dy".into(), "0".into())]).unwrap();
    assert_eq!(f.apply(&sym(&t2, "dx")).unwrap(), sym(&s1, "dth").scale(&qi(2)));
    assert!(f.apply(&sym(&t2, "dxdy")).unwrap().is_zero());
    // dx ↦ dth, dy ↦ dth would need dxdy ↦ dth∧dth = 0, so images must be consistent
    let bad = CdgaMorphism::new(&t2, &s1, vec![Form::one(&s1), sym(&s1, "dth"), sym(&s1, "dth"), sym(&s1, "dth")]);
    assert!(bad.is_err());
}

#[test]
fn matrix_exponential() {
    let cp2 = library("cp2").unwrap();
    let h = sym(&cp2, "h");
    let zero = MatForm::zeros(&Form::zero(&cp2), 2);
    assert_eq!(zero.exp_nilpotent().unwrap(), MatForm::identity(&Form::zero(&cp2), 2));
    let one = MatForm::scalar(&h, 1);
    let e = one.exp_nilpotent().unwrap();
    let hh = h.try_wedge(&h).unwrap();
    let expect = Form::one(&cp2).try_add(&h).unwrap().try_add(&hh.scale(&q(1, 2))).unwrap();
    assert_eq!(e.trace(), expect);
    let d = MatForm::from_rows(vec![vec![h.clone(), Form::zero(&cp2)], vec![Form::zero(&cp2), h.scale(&-Q::one())]]).unwrap();
    let tr = d.exp_nilpotent().unwrap().trace().try_add(&Form::one(&cp2).scale(&qi(-2))).unwrap();
    assert_eq!(tr, hh);
    let bad = MatForm::scalar(&Form::one(&cp2), 1);
    assert!(bad.exp_nilpotent().is_err());
}
