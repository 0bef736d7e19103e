// SPDX-License-Identifier: Apache-2.0
use std::io::Write;
use std::process::{Command, Output};

fn tdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdc"))
        .args(args)
        .env_remove("TDC_SEED")
        .env_remove("TDC_FORMAT")
        .env_remove("TDC_MAX_COEFF_DEGREE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn deligne_dd() {
    for k in 1..=3 {
        let o = tdc(&["deligne", "--cover", &format!("s3_{k}"), "--dd"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), format!("DD = {k}\n"));
    }
    let o = tdc(&["deligne", "--cover", "s3_2"]);
    let s = stdout(&o);
    assert!(s.contains("cocycle = ok") && s.contains("curvature = 2*v") && s.contains("∫ curvature = 2"), "{s}");
    let o = tdc(&["deligne", "--cover", "s3_2", "--kappa"]);
    assert!(stdout(&o).contains("kappa after r-modification = unchanged"));
}

#[test]
fn cohomology_tables() {
    let o = tdc(&["cohomology", "--model", "s3", "--twist", "2*v", "--coeff", "n", "--range", "0..8"]);
    assert!(o.status.success());
    let betti: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit(" | ").next().unwrap().to_string()).collect();
    assert_eq!(betti, ["1", "0", "0", "0", "1", "0", "0", "0", "2"]);
    assert!(stdout(&o).starts_with("n | rank Z | rank B | betti\n"));

    // untwisted: Künneth with Q[z, p1, ...]
    let o = tdc(&["cohomology", "--model", "s3", "--range", "0..4"]);
    let betti: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit(" | ").next().unwrap().to_string()).collect();
    assert_eq!(betti, ["1", "0", "1", "1", "2"]);
}

#[test]
fn csv_twin_has_identical_numerics() {
    let cases: [&[&str]; 6] = [
        &["cohomology", "--model", "t3", "--twist", "dxdydz", "--range", "0..6"],
        &["anomaly", "--kclass", "holonomy_quarter", "--cycles", "circle_battery"],
        &["pair", "--model", "s3", "--twist", "v"],
        &["pushforward", "--cycles", "circle_battery", "--fiber", "s3"],
        &["eta", "--holonomy", "3/8"],
        &["deligne", "--cover", "s3_3"],
    ];
    for args in cases {
        let t = tdc(args);
        let mut a = args.to_vec();
        a.extend(["--format", "csv"]);
        let c = tdc(&a);
        assert!(t.status.success() && c.status.success(), "{args:?}");
        let cells = |s: String, sep: &str| -> Vec<String> {
            s.lines().filter(|l| !l.starts_with("omega = ")).flat_map(|l| l.split(sep).map(str::to_string).collect::<Vec<_>>()).collect()
        };
        let sep = if args[0] == "eta" || args[0] == "deligne" { " = " } else { " | " };
        let mut tc = cells(stdout(&t), sep);
        let mut cc: Vec<String> = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(c.stdout.as_slice())
            .records()
            .flat_map(|r| r.unwrap().iter().map(str::to_string).collect::<Vec<_>>())
            .collect();
        if sep == " = " {
            // the CSV twin carries a key,value header
            cc.drain(..2);
        }
        tc.sort();
        cc.sort();
        assert_eq!(tc, cc, "{args:?}");
    }
}

#[test]
fn anomaly_table() {
    let o = tdc(&["anomaly", "--kclass", "holonomy_quarter", "--cycles", "circle_battery"]);
    let s = stdout(&o);
    assert!(s.contains("cycle | form-terms | eta-term | h (mod 1)"));
    assert!(s.contains("w1 | 0 | 1/4 (mod 1) | 1/4 (mod 1)"), "{s}");
    let o = tdc(&["anomaly", "--kclass", "thick_rank2", "--cycles", "thick_battery"]);
    assert!(stdout(&o).contains("unavailable"));
}

#[test]
fn eta_verb() {
    let s = stdout(&tdc(&["eta", "--holonomy", "1/2"]));
    assert!(s.contains("eta = 0 (mod 1)"), "{s}");
    let s = stdout(&tdc(&["eta", "--holonomy", "3/4", "--against", "1/4"]));
    assert!(s.contains("eta difference = 1/2 (mod 1)"), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(tdc(&["cohomology", "--model", "k3"]).status.code(), Some(2));
    assert_eq!(tdc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tdc(&["cohomology", "--model", "s3", "--range", "5..1"]).status.code(), Some(2));
    assert_eq!(tdc(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "model X\ndim 3\ngen v deg 3\nd v = v\nintegral v = 1\n").unwrap();
    let o = tdc(&["cohomology", "--model", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(tdc(&["verify", "--suite", "eta"]).status.code(), Some(0));
}

#[test]
fn model_files_are_accepted() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "model S3\ndim 3\ngen v deg 3\nintegral v = 1\n").unwrap();
    let a = tdc(&["cohomology", "--model", f.path().to_str().unwrap(), "--twist", "v"]);
    let b = tdc(&["cohomology", "--model", "s3", "--twist", "v"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn env_overrides_mirror_flags() {
    let a = Command::new(env!("CARGO_BIN_EXE_tdc"))
        .args(["pushforward", "--cycles", "circle_battery"])
        .env("TDC_SEED", "11")
        .env("TDC_FORMAT", "csv")
        .output()
        .unwrap();
    let b = tdc(&["pushforward", "--cycles", "circle_battery", "--seed", "11", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, tdc(&["pushforward", "--cycles", "circle_battery", "--format", "csv"]).stdout);
}
