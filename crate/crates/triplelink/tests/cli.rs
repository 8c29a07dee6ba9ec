use std::f64::consts::PI;
use std::fs;
use std::process::Command;

use serde_json::Value;
use triplelink::cli::run;

const BIN: &str = env!("CARGO_BIN_EXE_triplelink");

/// In-process run: (exit code, stdout, stderr).
fn tl(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("triplelink").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out, err) = tl(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn exit_code(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let o = Command::new(BIN).args(args).envs(env.iter().copied()).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn process_exit_codes() {
    assert_eq!(exit_code(&["mu", "--link", "unlink", "--grid", "16"], &[]).0, 0);
    // Pairwise linked: refused with a validation error.
    let (code, _, err) = exit_code(&["mu", "--link", "great-circles", "--grid", "32"], &[]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("hint:"));
    // Under-resolved degrees are a numerical failure.
    let (code, _, err) = exit_code(&["mu", "--link", "lpqr:5,3,-2", "--grid", "32"], &[]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(exit_code(&["mu", "--link", "no-such-link"], &[]).0, 2);
    assert_eq!(exit_code(&["mu"], &[]).0, 2);
    assert_eq!(exit_code(&["frobnicate"], &[]).0, 2);
    assert_eq!(exit_code(&["mu", "--link", "borromean", "--grid", "32", "--nmax", "20"], &[]).0, 2);
    assert_eq!(exit_code(&["mu", "--link", "borromean", "--grid", "32", "--formula", "double"], &[]).0, 2);
    assert_eq!(exit_code(&["phi-plot", "--out", ""], &[]).0, 2);
    assert_eq!(exit_code(&["--help"], &[]).0, 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["mu", "--link", "borromean", "--grid", "24"];
    let one = exit_code(&args, &[("TRIPLELINK_THREADS", "1")]);
    let four = exit_code(&args, &[("TRIPLELINK_THREADS", "4")]);
    assert_eq!(one.0, 0);
    assert_eq!(one.1, four.1);
}

#[test]
fn mu_reports() {
    let (code, out, _) = tl(&["mu", "--link", "unlink", "--grid", "32"]);
    assert_eq!(code, 0);
    assert!(out.contains("degrees   p=0 q=0 r=0"));
    assert!(out.contains("nearest   0"));

    let f = json(&["mu", "--link", "borromean", "--grid", "32"]);
    let c = json(&["mu", "--link", "borromean", "--grid", "32", "--formula", "convolution"]);
    let (a, b) = (f["mu"]["estimate"].as_f64().unwrap(), c["mu"]["estimate"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-10, "{a} {b}");
    assert_eq!(f["mu"]["nearest"], -1);
    assert_eq!(f["mu"]["nmax"], 15);

    let d = json(&["mu", "--link", "borromean", "--grid", "12", "--formula", "double"]);
    assert_eq!(d["mu"]["nearest"], -1);
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["mu", "--link", "generic-borromean", "--grid", "24"][..],
        &["phi-plot", "--nmax", "3", "--points", "31"][..],
        &["nu-bicycle", "--link", "clasp"][..],
    ] {
        assert_eq!(tl(args), tl(args));
    }
}

fn phi_rows(text: &str) -> Vec<[f64; 3]> {
    text.lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

#[test]
fn phi_plot_closed_form_and_symmetry() {
    let (code, out, _) = tl(&["phi-plot", "--dim", "2", "--nmax", "1", "--points", "25"]);
    assert_eq!(code, 0);
    let rows = phi_rows(&out);
    assert_eq!(rows.len(), 25 * 25);
    for [x, y, v] in &rows {
        let hand = (2.0 * x.cos() + 2.0 * y.cos() + (x + y).cos() + (x - y).cos()) / (4.0 * PI * PI);
        assert!((v - hand).abs() < 1e-12, "({x},{y}) {v} {hand}");
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.dat");
    let (code, out, _) = tl(&["phi-plot", "--nmax", "10", "--points", "61", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let text = fs::read_to_string(&path).unwrap();
    // gnuplot grid blocks
    assert_eq!(text.matches("\n\n").count(), 61);
    let rows = phi_rows(&text);
    let p = 61;
    let at = |i: usize, j: usize| rows[i * p + j];
    let mut top = f64::NEG_INFINITY;
    for i in 0..p {
        for j in 0..p {
            let a = at(i, j);
            let b = at(p - 1 - i, j);
            let c = at(i, p - 1 - j);
            assert_eq!(a[0], -b[0]);
            assert!((a[2] - b[2]).abs() < 1e-12 && (a[2] - c[2]).abs() < 1e-12);
            assert!((a[2] - at(j, i)[2]).abs() < 1e-12);
            top = top.max(a[2]);
        }
    }
    // The maximum sits on the lattice 2πℤ², where the kernel is singular.
    let origin = at(30, 30);
    assert_eq!([origin[0], origin[1]], [0.0, 0.0]);
    assert_eq!(origin[2], top);
    for r in &rows {
        if r[2] > top - 1e-12 {
            for c in [r[0], r[1]] {
                let k = c / (2.0 * PI);
                assert!((k - k.round()).abs() < 1e-9, "max at ({}, {})", r[0], r[1]);
            }
        }
    }

    let (code, out, _) = tl(&["phi-plot", "--dim", "3", "--nmax", "2", "--points", "7"]);
    assert_eq!(code, 0);
    assert_eq!(phi_rows(&out).len(), 49);
    assert_eq!(tl(&["phi-plot", "--dim", "4"]).0, 2);
}

#[test]
fn dumps() {
    let (code, out, _) = tl(&["field-dump", "--link", "unlink", "--grid", "8"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "s,t,u,a,b,c");
    assert_eq!(lines.len(), 1 + 512);
    assert!(lines[2].starts_with("0,0,0.7853981633974483,"));

    let (_, out, _) = tl(&["field-dump", "--link", "unlink", "--grid", "8", "--slice", "3"]);
    assert_eq!(out.lines().count(), 1 + 64);
    assert_eq!(tl(&["field-dump", "--link", "unlink", "--grid", "8", "--slice", "8"]).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let (code, _, _) = tl(&["coeff-dump", "--link", "borromean", "--grid", "16", "--nmax", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut r = csv::Reader::from_path(&path).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["n1", "n2", "n3", "re_a", "im_a", "re_b", "im_b", "re_c", "im_c"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7 * 7 * 7);
    // Real field: c₋ₙ is the conjugate of cₙ.
    let first: Vec<f64> = rows[0].iter().map(|x| x.parse().unwrap()).collect();
    let last: Vec<f64> = rows[rows.len() - 1].iter().map(|x| x.parse().unwrap()).collect();
    assert_eq!(&first[..3], &[-3.0, -3.0, -3.0]);
    for k in 0..3 {
        assert!((first[3 + 2 * k] - last[3 + 2 * k]).abs() < 1e-15);
        assert!((first[4 + 2 * k] + last[4 + 2 * k]).abs() < 1e-15);
    }
}

#[test]
fn words() {
    let (code, out, _) = tl(&["mword", "--word", "x y x^-1 y^-1", "--pair", "xy"]);
    assert_eq!((code, out.trim()), (0, "m_xy(x y x^-1 y^-1) = 1"));
    assert_eq!(json(&["mword", "--word", "x x y^-1", "--pair", "xy"])["count"], -2);
    assert_eq!(tl(&["mword", "--word", "x", "--pair", "xx"]).0, 2);
    assert_eq!(tl(&["mword", "--word", "q", "--pair", "xy"]).0, 2);

    let v = json(&["mu-words", "--wx", "y^-2 z^3", "--wy", "z^5 x^-2", "--wz", "x^3 y^5", "--t", "0", "--pqr", "5,3,-2"]);
    assert_eq!((v["value"].as_i64(), v["modulus"].as_u64()), (Some(0), Some(1)));
    let (_, out, _) = tl(&["mu-words", "--wx", "", "--wy", "", "--wz", "x y x^-1 y^-1", "--t", "-1", "--pqr", "0,0,0"]);
    assert_eq!(out.trim(), "mu = 2 in Z");
}

#[test]
fn diagram_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    // A (1,0) line with r = 1 and an upward marked point.
    fs::write(
        &path,
        r#"{"curves": [{"vertices": [[0,1],[2,1],[4,1]], "framing": 0, "vertical_winding": 1}],
            "points": [{"at": [3, 3], "sign": 1, "framing": 0}]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["nu-diagram", "--file", p]);
    assert_eq!((v["p"].as_i64(), v["q"].as_i64(), v["r"].as_i64()), (Some(1), Some(0), Some(2)));
    assert_eq!(v["modulus"], 2);
    let (code, out, _) = tl(&["nu-diagram", "--file", p, "--basepoint", "3.5,2.0"]);
    assert_eq!(code, 0);
    assert!(out.contains("basepoint (3.5, 2)"), "{out}");
    // Basepoint on the curve.
    assert_ne!(tl(&["nu-diagram", "--file", p, "--basepoint", "1.0,1.0"]).0, 0);
    assert_eq!(tl(&["nu-diagram", "--file", p, "--basepoint", "1.0"]).0, 2);
    assert_eq!(tl(&["nu-diagram", "--file", "/nonexistent.json"]).0, 2);
}

#[test]
fn bicycle_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ic.csv");
    let v = json(&["nu-bicycle", "--link", "generic-borromean", "--dump-icycles", path.to_str().unwrap()]);
    assert_eq!(v["nu"], -2);
    assert_eq!(v["modulus"], 0);
    let mut ms: Vec<i64> = v["icycles"].as_array().unwrap().iter().map(|c| c["m"].as_i64().unwrap()).collect();
    ms.sort();
    assert_eq!(ms, vec![-1, 1]);
    let mut r = csv::Reader::from_path(&path).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["icycle", "s", "t"]);
    let ids: std::collections::BTreeSet<String> = r.records().map(|x| x.unwrap()[0].to_string()).collect();
    assert_eq!(ids.len(), 2);

    let (code, out, _) = tl(&["nu-bicycle", "--link", "lpqr:5,3,-2"]);
    assert_eq!(code, 0);
    assert!(out.contains("(p,q,r)  (5,3,-2)") && out.contains("nu       0 mod 2"), "{out}");
    assert_eq!(tl(&["nu-bicycle", "--link", "borromean"]).0, 2);
}

#[test]
fn verify_tables() {
    let (code, out, _) = tl(&["verify", "--link", "lpqr:5,3,-2", "--grid", "128"]);
    assert_eq!(code, 0, "{out}");
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.starts_with("PASS")), "{out}");

    let (code, out, _) = tl(&["verify", "--link", "borromean", "--grid", "32"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS  degrees") && out.contains("PASS  mu") && out.contains("SKIP  bicycle-degrees"));
    assert!(out.contains("note:"));

    let v = json(&["verify", "--link", "generic-borromean", "--grid", "64"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["nu"], serde_json::json!([-2, 0]));
    let checks = v["report"]["checks"].as_array().unwrap();
    let row = checks.iter().find(|c| c["name"] == "nu-vs-mu").unwrap();
    assert_eq!(row["status"], "PASS");

    // Unresolved degrees fail the report without aborting it.
    let (code, out, _) = tl(&["verify", "--link", "lpqr:5,3,-2", "--grid", "32"]);
    assert_eq!(code, 3);
    assert!(out.contains("FAIL  degrees") && out.contains("bicycle-degrees"));
}
