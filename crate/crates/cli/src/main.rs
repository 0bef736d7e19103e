// SPDX-License-Identifier: Apache-2.0
//! `tdc`: twisted differential cohomology computations from the command line.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, Table};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use tdc_core::anomaly::file::{load_battery, parse_cycles};
use tdc_core::anomaly::{anomaly_map, fiber_product, push_form, r_spinc, CobordCochain, DiffCycle};
use tdc_core::cdga::{library, parse_model, CdgaModel};
use tdc_core::chern::file::{load_kclass, parse_kclass, KClassFile};
use tdc_core::chern::{ch_super, r_k, twisted_d};
use tdc_core::coeff::Ring;
use tdc_core::deligne::cech::CechCochain;
use tdc_core::deligne::construct::lambda_family;
use tdc_core::deligne::file::{load_cover, parse_cover};
use tdc_core::deligne::{check_cocycle, curvature, curvature_pl, dd_class, kappa, Cover, DeligneCocycle, DeligneOneSimplex};
use tdc_core::eta::{eta_difference, eta_reduced, oracle, to_f64, CircleDirac};
use tdc_core::rational::{fmt_mod1, fmt_q, parse_q};
use tdc_core::twisted::{build_k_complex, pair, perfect_pairing, CoeffForm, ComplexKind, TwistedComplex, Twist};
use tdc_core::verify::{run_suite, SUITES};
use tdc_core::Error;

#[derive(Parser, Debug)]
#[command(name = "tdc", version, about = "Twisted differential cohomology on rational models")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "TDC_SEED", default_value_t = 7)]
    seed: u64,
    #[arg(long, global = true, env = "TDC_FORMAT", value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Coefficient truncation degree.
    #[arg(long, global = true, env = "TDC_MAX_COEFF_DEGREE", default_value_t = 20)]
    max_coeff_degree: i64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Ranks of twisted cohomology per total degree.
    Cohomology(CohomologyArgs),
    /// Run the seeded invariant suites.
    Verify(VerifyArgs),
    /// Dixmier–Douady class, curvature and κ of a cover cocycle.
    Deligne(DeligneArgs),
    /// Twisted Chern character of a differential K-class.
    Chern(ChernArgs),
    /// Evaluate the anomaly pair of a K-class on cycles.
    Anomaly(AnomalyArgs),
    /// Pairing between twisted cohomology and homology.
    Pair(PairArgs),
    /// Check ⟨ω, R(c × ĉ)⟩ = ⟨p_!ω, R(c)⟩ on seeded forms.
    Pushforward(PushforwardArgs),
    /// Reduced eta invariant of the circle Dirac operator.
    Eta(EtaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coeff {
    /// Forms with N coefficients, differential D_H.
    N,
    /// Chains with V coefficients, differential ∂_H.
    V,
    /// Laurent-periodic complex, differential d_H.
    K,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    /// Library model name or model file.
    #[arg(long)]
    model: String,
    #[arg(long, default_value = "0")]
    twist: String,
    #[arg(long, value_enum, default_value_t = Coeff::N)]
    coeff: Coeff,
    /// Degree range `a..b`, inclusive.
    #[arg(long, default_value = "0..8")]
    range: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Args, Debug)]
struct DeligneArgs {
    /// Shipped cover name or cover file.
    #[arg(long)]
    cover: String,
    #[arg(long)]
    dd: bool,
    #[arg(long)]
    curvature: bool,
    #[arg(long)]
    check: bool,
    /// κ of a seeded gauge 1-simplex out of the cocycle.
    #[arg(long)]
    kappa: bool,
}

#[derive(Args, Debug)]
struct ChernArgs {
    /// Shipped K-class name or K-class file.
    #[arg(long)]
    kclass: String,
}

#[derive(Args, Debug)]
struct AnomalyArgs {
    #[arg(long)]
    kclass: String,
    /// Shipped battery name or cycle file.
    #[arg(long)]
    cycles: String,
    /// Degree of the pair; defaults to the even degree above the model dimension.
    #[arg(long)]
    degree: Option<i64>,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    model: String,
    #[arg(long, default_value = "0")]
    twist: String,
    #[arg(long, default_value = "0..8")]
    range: String,
}

#[derive(Args, Debug)]
struct PushforwardArgs {
    #[arg(long)]
    cycles: String,
    #[arg(long, default_value = "s1")]
    fiber: String,
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

#[derive(Args, Debug)]
struct EtaArgs {
    /// Holonomy p/q, read mod 1.
    #[arg(long)]
    holonomy: String,
    /// Second holonomy for η̄(a) − η̄(b).
    #[arg(long)]
    against: Option<String>,
}

enum Fail {
    /// Bad input: exit 2.
    Usage(String),
    /// A check came out false: exit 1.
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Fail::Check(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type Out = std::result::Result<String, Fail>;

/// Contents of `arg` if it names a file.
fn file_text(arg: &str) -> std::result::Result<Option<String>, Fail> {
    let p = Path::new(arg);
    if !p.is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(p).map(Some).map_err(|e| Fail::Usage(format!("{arg}: {e}")))
}

fn with_path<T>(arg: &str, r: tdc_core::Result<T>) -> std::result::Result<T, Fail> {
    r.map_err(|e| Fail::Usage(format!("{arg}: {e}")))
}

fn model(arg: &str) -> std::result::Result<Arc<CdgaModel>, Fail> {
    match file_text(arg)? {
        Some(t) => Ok(Arc::new(with_path(arg, parse_model(&t))?)),
        None => Ok(library(arg)?),
    }
}

fn cover(arg: &str) -> std::result::Result<(Arc<Cover>, DeligneCocycle), Fail> {
    match file_text(arg)? {
        Some(t) => with_path(arg, parse_cover(&t)),
        None => Ok(load_cover(arg)?),
    }
}

fn kclass(arg: &str) -> std::result::Result<KClassFile, Fail> {
    match file_text(arg)? {
        Some(t) => with_path(arg, parse_kclass(&t)),
        None => Ok(load_kclass(arg)?),
    }
}

fn cycles(arg: &str) -> std::result::Result<Vec<DiffCycle>, Fail> {
    match file_text(arg)? {
        Some(t) => with_path(arg, parse_cycles(&t)),
        None => Ok(load_battery(arg)?),
    }
}

fn range(s: &str) -> std::result::Result<(i64, i64), Fail> {
    let bad = || Fail::Usage(format!("bad range '{s}', expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn rational(s: &str) -> std::result::Result<tdc_core::Q, Fail> {
    parse_q(s.trim()).ok_or_else(|| Fail::Usage(format!("bad rational '{s}'")))
}

/// Key/value report: one `key = value` line per entry in table form.
fn kv(rows: &[(String, String)], fmt: Format) -> String {
    match fmt {
        Format::Table => rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
        Format::Csv => {
            let mut t = Table::new(&["key", "value"]);
            for (k, v) in rows {
                t.push(vec![k.clone(), v.clone()]);
            }
            t.render(fmt)
        }
    }
}

fn cmd_cohomology(cli: &Cli, a: &CohomologyArgs) -> Out {
    let m = model(&a.model)?;
    let t = Twist::parse(&m, &a.twist)?;
    let (lo, hi) = range(&a.range)?;
    let c = match a.coeff {
        Coeff::N => TwistedComplex::new(ComplexKind::FormsN, &t, cli.max_coeff_degree),
        Coeff::V => TwistedComplex::new(ComplexKind::ChainsV, &t, cli.max_coeff_degree),
        Coeff::K => build_k_complex(&t, 6)?,
    };
    let mut tab = Table::new(&["n", "rank Z", "rank B", "betti"]);
    for n in lo..=hi {
        let r = c.cohomology(n)?;
        tab.push(vec![n.to_string(), r.rank_z.to_string(), r.rank_b.to_string(), r.betti.to_string()]);
    }
    Ok(tab.render(cli.format))
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Out {
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else {
        a.suite.split(',').map(str::trim).collect()
    };
    let mut out = String::new();
    let mut tab = Table::new(&["suite", "check", "result", "detail"]);
    let mut failed = Vec::new();
    for name in names {
        let rep = run_suite(name, cli.seed, cli.max_coeff_degree)?;
        out.push_str(&rep.render());
        for c in &rep.checks {
            tab.push(vec![rep.suite.to_string(), c.name.clone(), if c.passed { "pass" } else { "fail" }.into(), c.detail.clone()]);
        }
        if !rep.passed() {
            failed.push(rep.suite);
        }
    }
    let text = match cli.format {
        Format::Table => out,
        Format::Csv => tab.render(Format::Csv),
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Fail::Check(format!("failed suites: {}", failed.join(", "))))
    }
}

fn cmd_deligne(cli: &Cli, a: &DeligneArgs) -> Out {
    let (cov, c) = cover(&a.cover)?;
    let all = !(a.dd || a.curvature || a.check || a.kappa);
    let mut rows = Vec::new();
    let mut ok = true;
    if a.check || all {
        let rep = check_cocycle(&c);
        ok &= rep.passed();
        let v = match rep.failures.first() {
            None => "ok".to_string(),
            Some(f) => format!("{} failures, first: {f}", rep.failures.len()),
        };
        rows.push(("cocycle".to_string(), v));
    }
    if a.dd || all {
        let dd = dd_class(&c)?;
        let s = dd.to_string();
        // Display already reads "DD = k"
        let v = s.strip_prefix("DD = ").unwrap_or(&s).to_string();
        rows.push(("DD".into(), v));
    }
    if a.curvature || all {
        let h = curvature(&c)?;
        rows.push(("curvature".into(), h.to_string()));
        let int = match curvature_pl(&c)?.integrate(cov.complex()) {
            Ok(x) => fmt_q(&x),
            Err(Error::Unsupported(m)) => format!("unavailable ({m})"),
            Err(e) => return Err(e.into()),
        };
        rows.push(("∫ curvature".into(), int));
    }
    if a.kappa {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let cx = cov.complex();
        let g = CechCochain::random(cx, 1, 0, 2, &mut rng);
        let lam = CechCochain::random(cx, 0, 1, 2, &mut rng);
        // gauge transform, then shift the curving by an exact global 2-form
        let t = c.gauge(&g, &lam);
        let beta = lambda_family(cx, &[(0, 1, 2), (3, 4, -1)]);
        let target = DeligneCocycle::new(&cov, t.f.clone(), t.a.clone(), t.b.add(&beta.d()))?;
        let s = DeligneOneSimplex::new(g, lam, c.clone(), target)?;
        let k = kappa(&s)?;
        let v = match &k.model {
            Some(f) => f.to_string(),
            None => "piecewise polynomial 2-form".into(),
        };
        rows.push(("kappa".into(), v));
        // source and target have the same curvature
        rows.push(("d kappa".into(), if k.pl.d().is_zero() { "0" } else { "nonzero" }.into()));
        let r = CechCochain::random(cx, 0, 0, 3, &mut rng);
        let same = kappa(&s.modify(&r))?.pl == k.pl;
        ok &= same;
        rows.push(("kappa after r-modification".into(), if same { "unchanged" } else { "changed" }.into()));
    }
    let text = kv(&rows, cli.format);
    if ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(Fail::Check("cocycle check failed".into()))
    }
}

fn cmd_chern(cli: &Cli, a: &ChernArgs) -> Out {
    let k = kclass(&a.kclass)?;
    let g = &k.class.gen;
    let h = g.twist().clone();
    let ch = ch_super(g);
    let rk = r_k(&k.class);
    let closed = twisted_d(&h, &ch).is_zero() && twisted_d(&h, &rk).is_zero();
    let rows = vec![
        ("model".to_string(), k.model.name().to_string()),
        ("kappa0".into(), g.kappa0().to_string()),
        ("H".into(), h.to_string()),
        ("rank".into(), format!("{} - {}", g.plus.rank(), g.minus.rank())),
        ("ch".into(), ch.to_string()),
        ("rho".into(), k.class.rho.to_string()),
        ("R".into(), rk.to_string()),
        ("(d - H) ch".into(), if closed { "0" } else { "nonzero" }.into()),
    ];
    let text = kv(&rows, cli.format);
    if closed {
        Ok(text)
    } else {
        print!("{text}");
        Err(Fail::Check("Chern character is not closed".into()))
    }
}

fn cmd_anomaly(cli: &Cli, a: &AnomalyArgs) -> Out {
    let k = kclass(&a.kclass)?;
    let m = k.model.clone();
    // a class over the inverse twist lives on the space with H = −dκ₀
    let h = Twist::new(k.class.gen.kappa0().dform().scale(&-tdc_core::Q::from_integer(1.into())))?;
    let n = a.degree.unwrap_or((m.dim() as i64 + 2) / 2 * 2);
    let p = anomaly_map(&k.class, &h, n)?;
    let mut tab = Table::new(&["cycle", "form-terms", "eta-term", "h (mod 1)"]);
    for c in cycles(&a.cycles)? {
        let e = p.evaluate(&c)?;
        tab.push(vec![c.name().to_string(), e.fmt_form_terms(), e.eta.to_string(), e.fmt_value()]);
    }
    let head = match cli.format {
        Format::Table => format!("omega = {}\n", p.omega()),
        Format::Csv => String::new(),
    };
    Ok(head + &tab.render(cli.format))
}

fn cmd_pair(cli: &Cli, a: &PairArgs) -> Out {
    let m = model(&a.model)?;
    let t = Twist::parse(&m, &a.twist)?;
    let (lo, hi) = range(&a.range)?;
    let forms = TwistedComplex::new(ComplexKind::FormsN, &t, cli.max_coeff_degree);
    let chains = TwistedComplex::new(ComplexKind::ChainsV, &t, cli.max_coeff_degree);
    let mut tab = Table::new(&["n", "cohomology", "homology", "gram", "perfect"]);
    let mut ok = true;
    for n in lo..=hi {
        let (g, good) = perfect_pairing(&t, n, cli.max_coeff_degree)?;
        ok &= good;
        tab.push(vec![
            n.to_string(),
            forms.cohomology(n)?.betti.to_string(),
            chains.cohomology(n)?.betti.to_string(),
            format!("{}x{} rank {}", g.rows, g.cols, g.rank()),
            if good { "yes" } else { "no" }.into(),
        ]);
    }
    let text = tab.render(cli.format);
    if ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(Fail::Check("pairing is degenerate".into()))
    }
}

fn cmd_pushforward(cli: &Cli, a: &PushforwardArgs) -> Out {
    let fib = model(&a.fiber)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut tab = Table::new(&["cycle", "trial", "<omega, R(c x F)>", "<p_! omega, R(c)>"]);
    let mut ok = true;
    for c in cycles(&a.cycles)? {
        let Some(d) = c.degree() else { continue };
        let cc = CobordCochain::trivial(c.model(), &fib)?;
        let prod = fiber_product(&c, &cc)?;
        let (rn, rx) = (r_spinc(&prod)?, r_spinc(&c)?);
        for i in 0..a.trials {
            let w = CoeffForm::random(cc.total(), Ring::N, d + fib.dim() as i64, 8, 4, &mut rng);
            let (l, r) = (pair(&w, &rn)?, pair(&push_form(&cc, &w)?, &rx)?);
            ok &= l == r;
            tab.push(vec![c.name().to_string(), i.to_string(), fmt_q(&l), fmt_q(&r)]);
        }
    }
    let text = tab.render(cli.format);
    if ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(Fail::Check("pushforward does not respect the pairing".into()))
    }
}

fn cmd_eta(cli: &Cli, a: &EtaArgs) -> Out {
    let x = rational(&a.holonomy)?;
    let d = CircleDirac::from_holonomy(&x);
    let mut rows = vec![
        ("holonomy".to_string(), fmt_mod1(d.holonomy())),
        ("eta".into(), fmt_mod1(&eta_reduced(&d))),
        ("eta (zeta oracle)".into(), format!("{:.9}", oracle::eta_reduced(to_f64(d.holonomy())))),
    ];
    if let Some(b) = &a.against {
        let y = rational(b)?;
        rows.push(("eta difference".into(), fmt_mod1(&eta_difference(&x, &y))));
    }
    Ok(kv(&rows, cli.format))
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Cohomology(a) => cmd_cohomology(cli, a),
        Cmd::Verify(a) => cmd_verify(cli, a),
        Cmd::Deligne(a) => cmd_deligne(cli, a),
        Cmd::Chern(a) => cmd_chern(cli, a),
        Cmd::Anomaly(a) => cmd_anomaly(cli, a),
        Cmd::Pair(a) => cmd_pair(cli, a),
        Cmd::Pushforward(a) => cmd_pushforward(cli, a),
        Cmd::Eta(a) => cmd_eta(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.max_coeff_degree < 0 {
        eprintln!("error: --max-coeff-degree must be non-negative");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Fail::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
