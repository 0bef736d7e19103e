// SPDX-License-Identifier: Apache-2.0
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use tdc_core::cdga::{library, CdgaModel, Form};
use tdc_core::chern::file::{kclass_names, load_kclass, parse_kclass, print_kclass};
use tdc_core::chern::matform::MatForm;
use tdc_core::chern::*;
use tdc_core::forms::DgForm;
use tdc_core::poly::PolyForm;
use tdc_core::rational::{q, qi};
use tdc_core::Error;

fn rand_theta(model: &Arc<CdgaModel>, r: usize, rng: &mut ChaCha8Rng) -> MatForm<Form> {
    let rows = (0..r).map(|_| (0..r).map(|_| Form::random(model, Some(1), 3, rng)).collect()).collect();
    MatForm::from_rows(rows).unwrap()
}

fn rand_poly_theta(n: usize, r: usize, rng: &mut ChaCha8Rng) -> MatForm<PolyForm> {
    let rows = (0..r).map(|_| (0..r).map(|_| PolyForm::random(n, 1, 1, 3, 0.4, rng)).collect()).collect();
    MatForm::from_rows(rows).unwrap()
}

/// Connection with H = 0 on a minimal model, or H = e = dc on the thickened S³.
fn conn(model: &Arc<CdgaModel>, theta: MatForm<Form>) -> ModuleConn<Form> {
    let k0 = if model.index_of("c").is_some() { Form::parse(model, "c").unwrap() } else { Form::zero(model) };
    let h = k0.d();
    ModuleConn::new(theta, k0, h).unwrap()
}

fn poly_conn(theta: MatForm<PolyForm>, k0: &PolyForm) -> ModuleConn<PolyForm> {
    ModuleConn::new(theta, k0.clone(), k0.d()).unwrap()
}

#[test]
fn curvature_basic_examples() {
    let t3 = library("t3").unwrap();
    let z = Form::zero(&t3);
    let m = ModuleConn::new(MatForm::zeros(&z, 2), z.clone(), z.clone()).unwrap();
    assert!(curvature_descended(&m).is_zero());
    assert_eq!(ch_twisted(&m), Form::one(&t3).scale(&qi(2)));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k0 = PolyForm::random(5, 2, 2, 3, 0.3, &mut rng);
    assert!(!k0.d().is_zero());
    let m = poly_conn(MatForm::zeros(&k0, 1), &k0);
    assert_eq!(curvature_descended(&m).get(0, 0), &k0);
    let want = PolyForm::one(5).add(&k0).add(&k0.wedge(&k0).scale(&q(1, 2)));
    assert_eq!(ch_twisted(&m), want);
}

#[test]
fn bianchi_and_closedness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for name in ["s1", "t2", "s3", "t3", "s3_thick"] {
        let model = library(name).unwrap();
        for r in 1..=3 {
            let m = conn(&model, rand_theta(&model, r, &mut rng));
            assert!(bianchi_residual(&m).is_zero(), "{name} rank {r}");
            assert!(twisted_d(m.twist(), &ch_twisted(&m)).is_zero());
        }
    }
    for _ in 0..5 {
        let k0 = PolyForm::random(4, 2, 2, 3, 0.3, &mut rng);
        let m = poly_conn(rand_poly_theta(4, 2, &mut rng), &k0);
        assert!(!m.twist().is_zero());
        assert!(bianchi_residual(&m).is_zero());
        let ch = ch_twisted(&m);
        assert!(twisted_d(m.twist(), &ch).is_zero());
        assert!(!ch.d().is_zero(), "nonzero twist should make ch non-closed");
    }
}

#[test]
fn transgression_identity_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for name in ["s1", "t2", "s3", "t3", "s3_thick"] {
        let model = library(name).unwrap();
        for i in 0..12 {
            let r = 1 + i % 3;
            let m0 = conn(&model, rand_theta(&model, r, &mut rng));
            let m1 = conn(&model, rand_theta(&model, r, &mut rng));
            let cs = cs_transgression(&m0, &m1).unwrap();
            let lhs = twisted_d(m0.twist(), &cs);
            assert_eq!(lhs, ch_twisted(&m1).minus(&ch_twisted(&m0)), "{name} pair {i}");
            // reversing the path negates the form
            assert_eq!(cs_transgression(&m1, &m0).unwrap(), cs.neg());
            checked += 1;
        }
    }
    for _ in 0..10 {
        let k0 = PolyForm::random(4, 2, 1, 3, 0.3, &mut rng);
        let m0 = poly_conn(rand_poly_theta(4, 2, &mut rng), &k0);
        let m1 = poly_conn(rand_poly_theta(4, 2, &mut rng), &k0);
        let cs = cs_transgression(&m0, &m1).unwrap();
        assert_eq!(twisted_d(m0.twist(), &cs), ch_twisted(&m1).minus(&ch_twisted(&m0)));
        checked += 1;
    }
    assert!(checked >= 50);
}

#[test]
fn transgression_hand_examples() {
    let s1 = library("s1").unwrap();
    let z = Form::zero(&s1);
    let theta = Form::parse(&s1, "3/7*dth").unwrap();
    let m0 = ModuleConn::new(MatForm::zeros(&z, 1), z.clone(), z.clone()).unwrap();
    let m1 = ModuleConn::new(MatForm::scalar(&theta, 1), z.clone(), z.clone()).unwrap();
    assert_eq!(cs_transgression(&m0, &m1).unwrap(), theta);
    assert!(cs_transgression(&m1, &m1).unwrap().is_zero());
    let m2 = ModuleConn::new(MatForm::zeros(&z, 2), z.clone(), z).unwrap();
    assert!(matches!(cs_transgression(&m0, &m2), Err(Error::Invariant(_))));
}

#[test]
fn super_character() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t3 = library("t3").unwrap();
    let a = conn(&t3, rand_theta(&t3, 2, &mut rng));
    let b = conn(&t3, rand_theta(&t3, 2, &mut rng));
    let same = SuperModuleConn::new(a.clone(), a.clone()).unwrap();
    assert!(ch_super(&same).is_zero());
    let triv = ModuleConn::trivial(&Form::zero(&t3), 2).unwrap();
    let s = SuperModuleConn::new(a.clone(), triv).unwrap();
    assert_eq!(ch_super(&s), ch_twisted(&a).minus(&Form::one(&t3).scale(&qi(2))));
    let s2 = SuperModuleConn::new(b.clone(), a.clone()).unwrap();
    assert!(ch_super(&s2).d().is_zero());
    assert_eq!(ch_super(&s.block_sum(&s2).unwrap()), ch_super(&s).plus(&ch_super(&s2)));
    let r1 = conn(&t3, rand_theta(&t3, 1, &mut rng));
    assert!(SuperModuleConn::new(a, r1).is_err());
}

#[test]
fn kclass_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let model = library("s3_thick").unwrap();
    let k0 = Form::parse(&model, "c").unwrap();
    let pair = |rng: &mut ChaCha8Rng| {
        SuperModuleConn::new(conn(&model, rand_theta(&model, 2, rng)), conn(&model, rand_theta(&model, 2, rng))).unwrap()
    };
    for _ in 0..5 {
        let rho = Form::random(&model, Some(1), 3, &mut rng).plus(&Form::random(&model, Some(3), 3, &mut rng));
        let k = DiffKClass::new(pair(&mut rng), rho.clone()).unwrap();
        let zero = DiffKClass::zero(&k0).unwrap();
        let kz = k.add(&zero).unwrap();
        assert_eq!(kz, k);
        assert_eq!(k.negate().negate(), k);
        assert_eq!(r_k(&k.negate()), r_k(&k).neg());
        let to = pair(&mut rng);
        let shifted = k.cs_shift(&to).unwrap();
        assert_eq!(r_k(&shifted), r_k(&k));
        let back = shifted.cs_shift(&k.gen).unwrap();
        assert_eq!(back.gen, k.gen);
        let drift = back.rho.minus(&k.rho);
        assert!(twisted_d(k.twist(), &drift).is_zero());
        assert_eq!(r_k(&back), r_k(&k));
        assert!(twisted_d(k.twist(), &r_k(&k)).is_zero());
        let a = a_k(&k0, &rho).unwrap();
        assert_eq!(r_k(&a), twisted_d(a.twist(), &rho));
        assert_eq!(i_k(&a), 0);
        let sum = k.add(&shifted).unwrap();
        assert_eq!(r_k(&sum), r_k(&k).plus(&r_k(&shifted)));
        assert_eq!(i_k(&sum), 0);
    }
    // flat equal-rank pair with ρ = 0
    let s1 = library("s1").unwrap();
    let z = Form::zero(&s1);
    let flat = ModuleConn::new(MatForm::scalar(&Form::parse(&s1, "1/3*dth").unwrap(), 1), z.clone(), z.clone()).unwrap();
    let k = DiffKClass::new(SuperModuleConn::new(flat, ModuleConn::trivial(&z, 1).unwrap()).unwrap(), z).unwrap();
    assert!(r_k(&k).is_zero());
    assert!(DiffKClass::new(k.gen.clone(), Form::one(&s1)).is_err());
}

#[test]
fn kappa_prime_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let k0 = PolyForm::random(4, 2, 2, 3, 0.3, &mut rng);
    let m = poly_conn(MatForm::zeros(&k0, 1), &k0);
    assert_eq!(kappa_prime(&GerbeModuleGeom::new(m, vec![]).unwrap()), k0);
    // su(2)-valued Θ: traceless, so tr F̃ = r κ₀
    let a = PolyForm::random(4, 1, 1, 3, 0.5, &mut rng);
    let b = PolyForm::random(4, 1, 1, 3, 0.5, &mut rng);
    let c = PolyForm::random(4, 1, 1, 3, 0.5, &mut rng);
    let th = MatForm::from_rows(vec![vec![a.clone(), b], vec![c, a.neg()]]).unwrap();
    let g = GerbeModuleGeom::new(poly_conn(th, &k0), vec![]).unwrap();
    assert_eq!(kappa_prime(&g), k0);
    for _ in 0..10 {
        let g = GerbeModuleGeom::new(poly_conn(rand_poly_theta(4, 3, &mut rng), &k0), vec![]).unwrap();
        assert_eq!(kappa_prime(&g).d(), k0.d());
    }
    let s4 = library("s4").unwrap();
    let bad = Form::parse(&s4, "w").unwrap();
    let m = ModuleConn::trivial(&Form::zero(&s4), 1).unwrap();
    assert!(GerbeModuleGeom::new(m.clone(), vec![bad]).is_ok());
    assert!(GerbeModuleGeom::new(m, vec![Form::one(&s4)]).is_err());
}

#[test]
fn non_exact_twist_is_rejected() {
    let s3 = library("s3").unwrap();
    let v = Form::parse(&s3, "v").unwrap();
    let z = Form::zero(&s3);
    assert!(matches!(ModuleConn::new(MatForm::zeros(&z, 1), z.clone(), v), Err(Error::Invariant(_))));
    let err = parse_kclass("kclass x on s3 twist v\ntheta+ = [[0]]\n").unwrap_err();
    assert!(matches!(err, Error::Refused(_)));
}

#[test]
fn kclass_files_round_trip() {
    for name in kclass_names() {
        let k = load_kclass(name).unwrap();
        let text = print_kclass(&k);
        let again = parse_kclass(&text).unwrap();
        assert_eq!(again.class, k.class);
        assert!(twisted_d(k.class.twist(), &r_k(&k.class)).is_zero());
    }
    let err = parse_kclass("kclass x on s1 twist 0\ntheta+ = [[dth, 0]]\n").unwrap_err();
    assert!(err.to_string().contains("line 2"));
}
