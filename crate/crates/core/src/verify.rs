// SPDX-License-Identifier: Apache-2.0
//! Seeded verification suites. A report lists one line per check and renders
//! byte-identically for equal seeds.

use crate::anomaly::file::load_battery;
use crate::anomaly::{
    a_spinc, anomaly_map, cs_integral, fiber_product, push_form, r_spinc, CobordCochain, CycleGeom, DiffCycle, EtaTerm,
};
use crate::cdga::{library, product_model, pullback_from_fiber, pullback_to_product, CdgaModel, CdgaMorphism, Form};
use crate::chern::file::load_kclass;
use crate::chern::matform::MatForm;
use crate::chern::{a_k, bianchi_residual, ch_twisted, cs_transgression, twisted_d, DiffKClass, ModuleConn, SuperModuleConn};
use crate::coeff::{ahat_series, dzeta, monomials, p_only_count, pair_coeff, star, GradedPoly, Mono, Ring};
use crate::deligne::cech::CechCochain;
use crate::deligne::construct::lambda_family;
use crate::deligne::file::load_cover;
use crate::deligne::{check_cocycle, check_simplex, curvature_pl, dd_class, kappa, DeligneCocycle, DeligneOneSimplex};
use crate::error::{Error, Result};
use crate::eta::{aps_cylinder, eta_difference, eta_reduced, oracle, to_f64, CircleDirac};
use crate::forms::DgForm;
use crate::linalg::QMatrix;
use crate::poly::PolyForm;
use crate::rational::{fmt_q, mod1, q, qi, Q};
use crate::twisted::{
    apply_dh, pair, perfect_pairing, ss_d3_check, verify_adjoint, verify_adjoint_with, CoeffCurrent, CoeffForm, ComplexKind,
    TwistedComplex, Twist,
};
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write;
use std::sync::Arc;

/// Suite names, in reporting order.
pub const SUITES: [&str; 9] = ["coeff", "complex", "duality", "twisted", "deligne", "chern", "anomaly", "eta", "pushforward"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "== {} (seed {}) ==", self.suite, self.seed);
        for c in &self.checks {
            let tag = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(s, "[{tag}] {}", c.name);
            } else if c.detail.starts_with('\n') {
                let _ = writeln!(s, "[{tag}] {}:{}", c.name, c.detail);
            } else {
                let _ = writeln!(s, "[{tag}] {}: {}", c.name, c.detail);
            }
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "{}: {n}/{} checks passed", self.suite, self.checks.len());
        s
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn new() -> Self {
        Suite { checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Records an error as a failed check instead of aborting the suite.
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let name = name.into();
        match f() {
            Ok((ok, d)) => self.check(name, ok, d),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn run_suite(name: &str, seed: u64, max_coeff: i64) -> Result<SuiteReport> {
    let idx = SUITES.iter().position(|s| *s == name).ok_or_else(|| Error::Unknown(format!("suite '{name}'")))?;
    let mut rng = rng_for(seed, idx as u64);
    let mut s = Suite::new();
    match name {
        "coeff" => coeff_suite(&mut s, &mut rng, max_coeff),
        "complex" => complex_suite(&mut s, max_coeff),
        "duality" => duality_suite(&mut s, &mut rng, max_coeff),
        "twisted" => twisted_suite(&mut s, max_coeff),
        "deligne" => deligne_suite(&mut s, &mut rng),
        "chern" => chern_suite(&mut s, &mut rng),
        "anomaly" => anomaly_suite(&mut s, &mut rng),
        "eta" => eta_suite(&mut s),
        _ => pushforward_suite(&mut s, &mut rng),
    }
    Ok(SuiteReport { suite: SUITES[idx], seed, checks: s.checks })
}

fn mono_poly(ring: Ring, m: &Mono) -> GradedPoly {
    GradedPoly::monomial(ring, m.clone(), Q::one())
}

fn coeff_suite(s: &mut Suite, rng: &mut ChaCha8Rng, max: i64) {
    let u = GradedPoly::gen0(Ring::V);
    s.run(format!("φ⋆u = ∂_z φ, all monomials of degree ≤ {max}"), || {
        let mut count = 0;
        let mut bad = Vec::new();
        for d in (0..=max).step_by(2) {
            for m in monomials(d) {
                let phi = mono_poly(Ring::N, &m);
                if star(&phi, &u)? != dzeta(&phi)? {
                    bad.push(phi.to_string());
                }
                count += 1;
            }
        }
        Ok((bad.is_empty(), format!("{count} monomials, {} mismatches", bad.len())))
    });
    s.run(format!("⟨φ⋆u, a⟩ = ⟨φ, u·a⟩, all monomial pairs of degree ≤ {max}"), || {
        let mut count = 0;
        let mut bad = 0;
        for d in (2..=max).step_by(2) {
            for m in monomials(d) {
                let phi = mono_poly(Ring::N, &m);
                let lhs = star(&phi, &u)?;
                for a in monomials(d - 2) {
                    let a = mono_poly(Ring::V, &a);
                    if pair_coeff(&lhs, &a)? != pair_coeff(&phi, &(&u * &a))? {
                        bad += 1;
                    }
                    count += 1;
                }
            }
        }
        Ok((bad == 0, format!("{count} pairs, {bad} mismatches")))
    });
    s.run("φ⋆(v₁v₂) = (φ⋆v₁)⋆v₂ and φ⋆1 = φ on 200 seeded triples", || {
        let all: Vec<Mono> = (0..=max).step_by(2).flat_map(monomials).collect();
        let small: Vec<Mono> = (0..=max / 2).step_by(2).flat_map(monomials).collect();
        let mut bad = 0;
        for _ in 0..200 {
            let phi = GradedPoly::monomial(Ring::N, all[rng.gen_range(0..all.len())].clone(), qi(rng.gen_range(1..=9)));
            let v1 = mono_poly(Ring::V, &small[rng.gen_range(0..small.len())]);
            let v2 = mono_poly(Ring::V, &small[rng.gen_range(0..small.len())]);
            if star(&star(&phi, &v1)?, &v2)? != star(&phi, &(&v1 * &v2))? || star(&phi, &GradedPoly::one(Ring::V))? != phi {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} mismatches")))
    });
    s.run(format!("pairing Gram matrices invertible in degrees ≤ {max}"), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for d in (0..=max).step_by(2) {
            let ms = monomials(d);
            let rows = ms
                .iter()
                .map(|a| ms.iter().map(|b| pair_coeff(&mono_poly(Ring::N, a), &mono_poly(Ring::V, b))).collect::<Result<Vec<Q>>>())
                .collect::<Result<Vec<_>>>()?;
            let r = QMatrix::from_rows(ms.len(), rows).rank();
            ok &= r == ms.len();
            parts.push(format!("{d}:{r}/{}", ms.len()));
        }
        Ok((ok, parts.join(" ")))
    });
    s.run("Â through degree 8", || {
        let a = ahat_series(8)?.value;
        let want = GradedPoly::parse(Ring::N, "1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2")?;
        Ok((a == want, a.to_string()))
    });
}

/// The model × twist matrix: H = 0 everywhere, H = k·(top 3-form) on S³ and T³.
pub fn twist_matrix() -> Result<Vec<Twist>> {
    let mut out = Vec::new();
    for name in ["pt", "s1", "t2", "s2", "t3", "s3", "s4", "cp2"] {
        let m = library(name)?;
        out.push(Twist::zero(&m));
        let top = match name {
            "s3" => Some("v"),
            "t3" => Some("dxdydz"),
            _ => None,
        };
        if let Some(h) = top {
            for k in 1..=3 {
                out.push(Twist::new(Form::sym(&m, h)?.scale(&qi(k)))?);
            }
        }
    }
    Ok(out)
}

fn twist_label(t: &Twist) -> String {
    format!("{} H={}", t.model().name(), t.form())
}

fn complex_suite(s: &mut Suite, max: i64) {
    let configs = match twist_matrix() {
        Ok(c) => c,
        Err(e) => return s.check("twist matrix", false, e.to_string()),
    };
    let kinds = [
        ("D_H", ComplexKind::FormsN),
        ("∂_H", ComplexKind::ChainsV),
        ("δ_H", ComplexKind::CurrentsV),
        ("D_H on currents", ComplexKind::CurrentsN),
        ("d_H", ComplexKind::Laurent { t_band: 6 }),
    ];
    for t in configs {
        let mut parts = Vec::new();
        let mut ok = true;
        for (lab, kind) in kinds {
            let c = TwistedComplex::new(kind, &t, max);
            let d2 = c.d_squared_zero();
            let bad = d2.iter().filter(|(_, z)| !z).count();
            ok &= bad == 0;
            parts.push(format!("{lab}²=0 on {} degrees", d2.len() - bad));
        }
        s.check(format!("squares vanish, {}", twist_label(&t)), ok, parts.join(", "));
    }
}

fn duality_suite(s: &mut Suite, rng: &mut ChaCha8Rng, max: i64) {
    let configs = match twist_matrix() {
        Ok(c) => c,
        Err(e) => return s.check("twist matrix", false, e.to_string()),
    };
    for t in &configs {
        let seed = rng.gen::<u64>();
        s.run(format!("⟨D_H α, β⟩ = ⟨α, ∂_H β⟩, {}", twist_label(t)), || {
            let rep = verify_adjoint(t, 200, seed, max)?;
            let mut d = format!("{} trials, {} nonzero, seed {seed}", rep.trials, rep.nontrivial);
            if let Some(f) = rep.failures.first() {
                d.push_str(&format!("; first failure {f}"));
            }
            Ok((rep.passed(), d))
        });
    }
    let seed = rng.gen::<u64>();
    s.run("corrupted ∂_H sign is detected on S3 H=v", || {
        let m = library("s3")?;
        let rep = verify_adjoint_with(&Twist::parse(&m, "v")?, 50, seed, max, true)?;
        Ok((!rep.passed(), format!("{} of 50 trials fail", rep.failures.len())))
    });
    for t in &configs {
        s.run(format!("perfect pairing n ≤ 8, {}", twist_label(t)), || {
            let mut parts = Vec::new();
            let mut ok = true;
            for n in 0..=8 {
                let (g, good) = perfect_pairing(t, n, max)?;
                ok &= good;
                parts.push(format!("{}x{}", g.rows, g.cols));
            }
            Ok((ok, parts.join(" ")))
        });
    }
}

fn twisted_suite(s: &mut Suite, max: i64) {
    for k in 1..=3 {
        s.run(format!("S3, H = {k}·v: rank H^n = dim Q[p1,p2,…]_n for n ≤ 12"), || {
            let m = library("s3")?;
            let t = Twist::new(Form::sym(&m, "v")?.scale(&qi(k)))?;
            let c = TwistedComplex::new(ComplexKind::FormsN, &t, max);
            let ss = ss_d3_check(&t, 12, max)?;
            let mut ok = ss.all_match();
            let mut rows = vec!["n | rank Z | rank B | betti | oracle | E4".to_string()];
            for row in &ss.rows {
                let r = c.cohomology(row.n)?;
                let want = p_only_count(row.n);
                ok &= r.betti == want && row.e4 == r.betti;
                rows.push(format!("{} | {} | {} | {} | {} | {}", row.n, r.rank_z, r.rank_b, r.betti, want, row.e4));
            }
            Ok((ok, format!("\n    {}", rows.join("\n    "))))
        });
    }
    for k in 1..=3 {
        s.run(format!("T3, H = {k}·dxdydz: E4 ranks agree with cohomology for n ≤ 12"), || {
            let m = library("t3")?;
            let t = Twist::new(Form::sym(&m, "dxdydz")?.scale(&qi(k)))?;
            let ss = ss_d3_check(&t, 12, max)?;
            let b: Vec<String> = ss.rows.iter().map(|r| r.betti.to_string()).collect();
            Ok((ss.all_match(), format!("betti {}", b.join(" "))))
        });
    }
}

fn deligne_suite(s: &mut Suite, rng: &mut ChaCha8Rng) {
    for k in 1..=3i64 {
        let name = format!("s3_{k}");
        let loaded = load_cover(&name);
        let (cover, c) = match loaded {
            Ok(x) => x,
            Err(e) => {
                s.check(format!("{name} loads"), false, e.to_string());
                continue;
            }
        };
        let rep = check_cocycle(&c);
        s.check(format!("{name} is a cocycle"), rep.passed(), rep.failures.first().map(|f| f.to_string()).unwrap_or_default());
        s.run(format!("{name} DD class"), || {
            let dd = dd_class(&c)?;
            Ok((dd.fundamental_pairing == Some(BigInt::from(k)) && dd.torsion.is_empty(), dd.to_string()))
        });
        s.run(format!("{name} ∫ curvature"), || {
            let i = curvature_pl(&c)?.integrate(cover.complex())?;
            Ok((i == qi(k), fmt_q(&i)))
        });
        let seed = rng.gen::<u64>();
        s.run(format!("{name} κ invariant under r-modification"), || {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let cx = cover.complex();
            let g = CechCochain::random(cx, 1, 0, 2, &mut r);
            let lam = CechCochain::random(cx, 0, 1, 2, &mut r);
            let beta = lambda_family(cx, &[(0, 1, 2), (3, 4, -1)]);
            let t = c.gauge(&g, &lam);
            let target = DeligneCocycle::new(&cover, t.f.clone(), t.a.clone(), t.b.add(&beta.d()))?;
            let simplex = DeligneOneSimplex::new(g, lam, c.clone(), target)?;
            let mut ok = check_simplex(&simplex, false).passed();
            let kap = kappa(&simplex)?;
            for _ in 0..3 {
                let rr = CechCochain::random(cx, 0, 0, 3, &mut r);
                let modified = simplex.modify(&rr);
                ok &= check_simplex(&modified, false).passed() && kappa(&modified)?.pl == kap.pl;
            }
            Ok((ok, format!("3 modifications, seed {seed}")))
        });
    }
}

fn rand_theta(model: &Arc<CdgaModel>, r: usize, rng: &mut ChaCha8Rng) -> MatForm<Form> {
    let rows = (0..r).map(|_| (0..r).map(|_| Form::random(model, Some(1), 3, rng)).collect()).collect();
    MatForm::from_rows(rows).expect("square")
}

fn rand_poly_theta(n: usize, r: usize, rng: &mut ChaCha8Rng) -> MatForm<PolyForm> {
    let rows = (0..r).map(|_| (0..r).map(|_| PolyForm::random(n, 1, 1, 3, 0.4, rng)).collect()).collect();
    MatForm::from_rows(rows).expect("square")
}

fn chern_suite(s: &mut Suite, rng: &mut ChaCha8Rng) {
    let models = ["s1", "t2", "s3", "t3"];
    s.run("Bianchi residual and (d − H) ch on random connections", || {
        let mut count = 0;
        let mut ok = true;
        for name in models {
            let m = library(name)?;
            for r in 1..=3 {
                let conn = ModuleConn::new(rand_theta(&m, r, rng), Form::zero(&m), Form::zero(&m))?;
                ok &= bianchi_residual(&conn).is_zero() && twisted_d(conn.twist(), &ch_twisted(&conn)).is_zero();
                count += 1;
            }
        }
        for _ in 0..5 {
            let k0 = PolyForm::random(4, 2, 2, 3, 0.3, rng);
            let conn = ModuleConn::new(rand_poly_theta(4, 2, rng), k0.clone(), k0.d())?;
            ok &= bianchi_residual(&conn).is_zero() && twisted_d(conn.twist(), &ch_twisted(&conn)).is_zero();
            count += 1;
        }
        Ok((ok, format!("{count} connections, H ≠ 0 on 5 polynomial patches")))
    });
    s.run("CS transgression on seeded random pairs over S1, T2, S3, T3", || {
        let mut count = 0;
        let mut bad = 0;
        for name in models {
            let m = library(name)?;
            for i in 0..13 {
                let r = 1 + i % 3;
                let z = Form::zero(&m);
                let m0 = ModuleConn::new(rand_theta(&m, r, rng), z.clone(), z.clone())?;
                let m1 = ModuleConn::new(rand_theta(&m, r, rng), z.clone(), z)?;
                let cs = cs_transgression(&m0, &m1)?;
                if twisted_d(m0.twist(), &cs) != ch_twisted(&m1).minus(&ch_twisted(&m0)) {
                    bad += 1;
                }
                count += 1;
            }
        }
        Ok((bad == 0 && count >= 50, format!("{count} pairs, {bad} nonzero residuals")))
    });
    s.run("CS transgression with H ≠ 0 on polynomial patches", || {
        let mut bad = 0;
        for _ in 0..5 {
            let k0 = PolyForm::random(4, 2, 1, 3, 0.3, rng);
            let m0 = ModuleConn::new(rand_poly_theta(4, 2, rng), k0.clone(), k0.d())?;
            let m1 = ModuleConn::new(rand_poly_theta(4, 2, rng), k0.clone(), k0.d())?;
            let cs = cs_transgression(&m0, &m1)?;
            if twisted_d(m0.twist(), &cs) != ch_twisted(&m1).minus(&ch_twisted(&m0)) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("5 pairs, {bad} nonzero residuals")))
    });
}

/// K-classes used by the anomaly suite, with the twist of the space they live on.
fn anomaly_kclasses(rng: &mut ChaCha8Rng) -> Result<Vec<(String, Twist, DiffKClass<Form>)>> {
    let hq = load_kclass("holonomy_quarter")?;
    let thick = load_kclass("thick_rank2")?;
    let x = thick.model.clone();
    let h = Twist::parse(&x, "-e")?;
    let k0 = Form::parse(&x, "c")?;
    let rho = Form::random(&x, Some(1), 4, rng).try_add(&Form::random(&x, Some(3), 4, rng))?;
    let ak = a_k(&k0, &rho)?;
    let theta = MatForm::from_rows(vec![vec![Form::parse(&x, "r")?]]).expect("square");
    let other = SuperModuleConn::new(
        ModuleConn::new(theta.block_sum(&MatForm::zeros(&k0, 1)), k0.clone(), k0.dform())?,
        ModuleConn::trivial(&k0, 2)?,
    )?;
    let hz = Twist::zero(&hq.model);
    Ok(vec![
        ("holonomy_quarter".into(), hz.clone(), hq.class.clone()),
        ("−holonomy_quarter".into(), hz, hq.class.negate()),
        ("thick_rank2".into(), h.clone(), thick.class.clone()),
        ("a_K(ρ)".into(), h.clone(), ak.clone()),
        ("thick_rank2 + a_K(ρ)".into(), h.clone(), thick.class.add(&ak)?),
        ("thick_rank2 shifted".into(), h.clone(), thick.class.cs_shift(&other)?),
        ("0".into(), h, DiffKClass::zero(&k0)?),
    ])
}

fn anomaly_suite(s: &mut Suite, rng: &mut ChaCha8Rng) {
    let classes = match anomaly_kclasses(rng) {
        Ok(c) => c,
        Err(e) => return s.check("test K-classes", false, e.to_string()),
    };
    for (name, h, k) in &classes {
        s.run(format!("D_H ω = 0 for {name}, n = 0..8"), || {
            let mut ok = true;
            for n in (0..=8).step_by(2) {
                ok &= apply_dh(h, anomaly_map(k, h, n)?.omega())?.is_zero();
            }
            Ok((ok, String::new()))
        });
    }
    s.run("h∘a = ⟨−, ω⟩ mod 1 on the cycle batteries", || {
        let mut count = 0;
        let mut ok = true;
        for (bat, kname, n) in [("circle_battery", "holonomy_quarter", 2), ("thick_battery", "thick_rank2", 4)] {
            let (_, h, k) = classes.iter().find(|(nm, ..)| nm == kname).expect("listed");
            let p = anomaly_map(k, h, n)?;
            for c in load_battery(bat)? {
                if c.phi().is_zero() || c.phi().total_degrees() != vec![n] {
                    continue;
                }
                ok &= p.compatibility_defect(c.phi())? == Some(Q::zero());
                let a = a_spinc(h, c.phi())?;
                ok &= p.evaluate(&a)?.value() == Some(mod1(&pair(p.omega(), c.phi())?));
                count += 1;
            }
        }
        for (_, h, k) in &classes {
            for n in [2, 4] {
                let p = anomaly_map(k, h, n)?;
                for _ in 0..5 {
                    let phi = CoeffCurrent::random(h.model(), Ring::V, n, 8, 5, rng);
                    ok &= p.compatibility_defect(&phi)? == Some(Q::zero());
                    count += 1;
                }
            }
        }
        Ok((ok, format!("{count} currents")))
    });
    s.run("CS descent on the circle battery", || {
        let hq = load_kclass("holonomy_quarter")?;
        let s1 = hq.model.clone();
        let h = Twist::zero(&s1);
        let z = Form::zero(&s1);
        let dth = Form::parse(&s1, "dth")?;
        let line = |a: Q| ModuleConn::new(MatForm::scalar(&dth.scale(&a), 1), z.clone(), z.clone());
        let p = anomaly_map(&hq.class, &h, 2)?;
        let mut ok = true;
        let mut lines = Vec::new();
        for (a, b) in [(q(3, 4), Q::zero()), (q(5, 4), q(1, 8)), (q(-2, 3), q(2, 5))] {
            let to = SuperModuleConn::new(line(a.clone())?, line(b.clone())?)?;
            let k1 = hq.class.cs_shift(&to)?;
            let p1 = anomaly_map(&k1, &h, 2)?;
            ok &= p1.omega() == p.omega();
            for c in load_battery("circle_battery")? {
                let (e0, e1) = (p.evaluate(&c)?, p1.evaluate(&c)?);
                let cs = mod1(&cs_integral(&hq.class.gen, &to, &c)?);
                let eta_diff = match (&e0.eta, &e1.eta) {
                    (EtaTerm::Value(x0), EtaTerm::Value(x1)) => Some(mod1(&(x1 - x0))),
                    (EtaTerm::Absent, EtaTerm::Absent) => Some(Q::zero()),
                    _ => None,
                };
                ok &= e0.value() == e1.value() && eta_diff.as_ref() == Some(&cs);
                if c.name() == "w1" {
                    lines.push(format!("to ({}, {}): η̄ diff on w1 = {} = ∫CS", fmt_q(&a), fmt_q(&b), fmt_q(&cs)));
                }
            }
        }
        Ok((ok, lines.join("; ")))
    });
    s.run("h(w1) for holonomy_quarter", || {
        let hq = load_kclass("holonomy_quarter")?;
        let p = anomaly_map(&hq.class, &Twist::zero(&hq.model), 2)?;
        let w1 = load_battery("circle_battery")?.into_iter().find(|c| c.name() == "w1").ok_or_else(|| Error::Unknown("w1".into()))?;
        let v = p.evaluate(&w1)?;
        Ok((v.value() == Some(q(1, 4)), v.fmt_value()))
    });
}

fn eta_suite(s: &mut Suite) {
    let eighths: Vec<Q> = (1..8).map(|k| q(k, 8)).collect();
    s.run("closed form against the Hurwitz zeta oracle", || {
        let mut worst = 0.0f64;
        for a in &eighths {
            let exact = to_f64(&eta_reduced(&CircleDirac::new(a.clone())?));
            worst = worst.max((exact - oracle::eta_reduced(to_f64(a))).abs());
        }
        Ok((worst < 1e-9, format!("max |diff| < 1e-9: {}", worst < 1e-9)))
    });
    s.run("η̄(a) + η̄(1 − a) ≡ 0 mod 1", || {
        let mut ok = true;
        for a in &eighths {
            let x = eta_reduced(&CircleDirac::new(a.clone())?) + eta_reduced(&CircleDirac::new(Q::one() - a)?);
            ok &= mod1(&x).is_zero();
        }
        Ok((ok, "a = 1/8, …, 7/8".into()))
    });
    s.run("circle APS shadow: ∫ CS = η̄(a) − η̄(b) mod 1", || {
        let s1 = library("s1")?;
        let z = Form::zero(&s1);
        let dth = Form::parse(&s1, "dth")?;
        let conn = |h: &Q| ModuleConn::new(MatForm::scalar(&dth.scale(h), 1), z.clone(), z.clone());
        let mut ok = true;
        let mut count = 0;
        for a in &eighths {
            for b in &eighths {
                let cs = cs_transgression(&conn(b)?, &conn(a)?)?;
                ok &= mod1(&cs.integrate()) == eta_difference(a, b);
                let (integral, diff) = aps_cylinder(a, b);
                ok &= mod1(&integral) == diff;
                count += 1;
            }
        }
        Ok((ok, format!("{count} pairs")))
    });
}

fn pushforward_cochains(rng: &mut ChaCha8Rng) -> Result<Vec<(Twist, CobordCochain)>> {
    let mut out = Vec::new();
    for (base, hx) in [("s3", "0"), ("t2", "0"), ("s3_thick", "-e")] {
        let x = library(base)?;
        for fib in ["s1", "s3"] {
            out.push((Twist::parse(&x, hx)?, CobordCochain::trivial(&x, &library(fib)?)?));
        }
    }
    let x = library("s3_thick")?;
    for fib in ["s1", "s3"] {
        let f = library(fib)?;
        let n = product_model(&x, &f)?;
        let kappa = pullback_to_product(&n)?.apply(&Form::parse(&x, "c")?)?;
        let mut alpha = CoeffForm::zero(&n, Ring::V);
        for b in 0..n.len() {
            for mono in monomials(n.deg(b) as i64 + 1) {
                let c = rng.gen_range(-3..=3);
                if c != 0 {
                    alpha.add_term(b, mono, qi(c));
                }
            }
        }
        out.push((Twist::parse(&x, "-e")?, CobordCochain::new(&n, Twist::parse(&x, "e")?, vec![], kappa, alpha)?));
    }
    Ok(out)
}

fn point_cycle(x: &Arc<CdgaModel>, h: &Twist) -> Result<DiffCycle> {
    let pt = library("pt")?;
    let f = CdgaMorphism::from_symbols(x, &pt, &[])?;
    DiffCycle::geometric("pt", h.clone(), CycleGeom { m: pt.clone(), pullback: f, pont: vec![], kappa: Form::zero(&pt), spin_shift: Q::zero() })
}

fn t2_cycle(x: &Arc<CdgaModel>, h: &Twist) -> Result<DiffCycle> {
    let t2 = library("t2")?;
    let f = CdgaMorphism::from_symbols(x, &t2, &[])?;
    DiffCycle::geometric("t2", h.clone(), CycleGeom { m: t2.clone(), pullback: f, pont: vec![], kappa: Form::parse(&t2, "2*dxdy")?, spin_shift: Q::zero() })
}

fn pushforward_suite(s: &mut Suite, rng: &mut ChaCha8Rng) {
    let cochains = match pushforward_cochains(rng) {
        Ok(c) => c,
        Err(e) => return s.check("cochains", false, e.to_string()),
    };
    for (_, c) in &cochains {
        s.run(format!("projection formula on {}", c.total().name()), || {
            let pr = pullback_to_product(c.total())?;
            let mut ok = true;
            for _ in 0..5 {
                let beta = Form::random(c.base(), None, 4, rng);
                let w = CoeffForm::random(c.total(), Ring::N, 4, 8, 4, rng);
                let lhs = push_form(c, &w.wedge_left(&pr.apply(&beta)?)?)?;
                ok &= lhs == push_form(c, &w)?.wedge_left(&beta)?;
            }
            Ok((ok, "5 seeded pairs".into()))
        });
    }
    for (hx, c) in &cochains {
        s.run(format!("⟨ω, R(c × ĉ)⟩ = ⟨p_!(ω ∧⋆ C), R(c)⟩ on {}", c.total().name()), || {
            let r = c.fiber().dim() as i64;
            let mut ok = true;
            let mut count = 0;
            for cyc in [point_cycle(c.base(), hx)?, t2_cycle(c.base(), hx)?] {
                let d = cyc.degree().unwrap_or(0);
                let cyc = cyc.with_phi(CoeffCurrent::random(c.base(), Ring::V, d + 1, 8, 5, rng))?;
                let prod = fiber_product(&cyc, c)?;
                let (rn, rx) = (r_spinc(&prod)?, r_spinc(&cyc)?);
                for _ in 0..3 {
                    let w = CoeffForm::random(c.total(), Ring::N, d + r, 8, 4, rng);
                    ok &= pair(&w, &rn)? == pair(&push_form(c, &w)?, &rx)?;
                    count += 1;
                }
            }
            Ok((ok, format!("{count} seeded forms")))
        });
    }
    s.run("S1 integration: ∫∘pr* = 0, ∫(pr*ω ∧ dθ) = ω", || {
        let s1 = library("s1")?;
        let mut ok = true;
        let mut count = 0;
        for base in ["s3", "t2", "cp2", "s3_thick"] {
            let x = library(base)?;
            let c = CobordCochain::trivial(&x, &s1)?;
            let n = c.total().clone();
            let pr = pullback_to_product(&n)?;
            let dth = pullback_from_fiber(&n)?.apply(&Form::parse(&s1, "dth")?)?;
            for _ in 0..5 {
                let w0 = CoeffForm::random(&x, Ring::N, 3, 8, 5, rng);
                let pulled = w0.pullback(&pr)?;
                ok &= push_form(&c, &pulled)?.is_zero();
                // p*ω ∧ dθ, written as (−1)^{|ω|} dθ ∧ p*ω
                let mut wedged = CoeffForm::zero(&n, Ring::N);
                for a in 0..x.len() {
                    let sgn = if x.deg(a) % 2 == 0 { Q::one() } else { -Q::one() };
                    let part = CoeffForm::elementary(&x, a, w0.comp(a).scale(&sgn)).pullback(&pr)?.wedge_left(&dth)?;
                    wedged = wedged.try_add(&part)?;
                }
                ok &= push_form(&c, &wedged)? == w0;
                count += 1;
            }
        }
        Ok((ok, format!("{count} seeded forms over S3, T2, CP2, S3thick")))
    });
}

/// All suites in order.
pub fn run_all(seed: u64, max_coeff: i64) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, seed, max_coeff)).collect()
}
