// SPDX-License-Identifier: Apache-2.0
use tdc_core::cdga::{library, Form};
use tdc_core::chern::matform::MatForm;
use tdc_core::chern::{cs_transgression, ModuleConn};
use tdc_core::eta::*;
use tdc_core::rational::{mod1, q, Q};

fn eighths() -> Vec<Q> {
    (1..8).map(|k| q(k, 8)).collect()
}

#[test]
fn closed_form_matches_zeta_oracle() {
    for a in eighths() {
        let exact = to_f64(&eta_reduced(&CircleDirac::new(a.clone()).unwrap()));
        let approx = oracle::eta_reduced(to_f64(&a));
        assert!((exact - approx).abs() < 1e-9, "a = {a}: {exact} vs {approx}");
    }
    assert!((oracle::eta_reduced(0.0) - 0.5).abs() < 1e-12);
    // the oracle also reproduces ζ(0, a) = 1/2 − a
    assert!((oracle::hurwitz_zeta(1e-9, 0.3) - 0.2).abs() < 1e-7);
}

#[test]
fn reflection_and_symmetric_values() {
    for a in eighths() {
        let s = eta_reduced(&CircleDirac::new(a.clone()).unwrap()) + eta_reduced(&CircleDirac::new(Q::from_integer(1.into()) - &a).unwrap());
        assert_eq!(mod1(&s), Q::from_integer(0.into()));
    }
    assert_eq!(eta_reduced(&CircleDirac::new(q(1, 4)).unwrap()), mod1(&-eta_reduced(&CircleDirac::new(q(3, 4)).unwrap())));
    assert_eq!(eta_reduced(&CircleDirac::new(q(1, 2)).unwrap()), q(0, 1));
    assert_eq!(eta_reduced(&CircleDirac::new(q(0, 1)).unwrap()), q(1, 2));
}

#[test]
fn differences() {
    assert_eq!(eta_difference(&q(2, 5), &q(2, 5)), q(0, 1));
    for a in eighths() {
        assert_eq!(eta_difference(&a, &q(0, 1)), a);
    }
    assert_eq!(eta_difference(&q(3, 4), &q(1, 4)), q(1, 2));
    assert_eq!(eta_super(&[q(1, 4)], &[q(0, 1)], &q(1, 2)), q(1, 4));
}

#[test]
fn circle_cs_and_cylinder_shadow() {
    let s1 = library("s1").unwrap();
    let z = Form::zero(&s1);
    let conn = |h: &Q| ModuleConn::new(MatForm::scalar(&Form::parse(&s1, "dth").unwrap().scale(h), 1), z.clone(), z.clone()).unwrap();
    for a in eighths() {
        for b in eighths() {
            let cs = cs_transgression(&conn(&b), &conn(&a)).unwrap();
            assert_eq!(mod1(&cs.integrate()), eta_difference(&a, &b));
            let (integral, diff) = aps_cylinder(&a, &b);
            assert_eq!(mod1(&integral), diff);
        }
    }
}
