use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use alphacert::poly::{parse_points, serialize_points};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_alphacert"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn sys() -> PathBuf {
    root().join("crates/core/tests/data/illustrative.sys")
}

fn pts() -> PathBuf {
    root().join("crates/core/tests/data/illustrative_points.pts")
}

fn run(args: &[&str], paths: &[&Path]) -> Output {
    let mut cmd = bin();
    cmd.args(paths).args(args);
    cmd.output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn outcomes(out: &Output) -> Vec<String> {
    records(out)
        .iter()
        .map(|r| r["outcome"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn certify_against_each_set() {
    let out = run(&["certify"], &[]);
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .arg("certify")
        .arg(sys())
        .arg(pts())
        .arg("--real")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(outcomes(&out), ["not_in_v", "in_v"]);
    let r = &records(&out)[1];
    assert_eq!(r["index"], 1);
    assert!(r["beta"][0].as_str().unwrap().starts_with("1.4665"));

    let out = bin()
        .arg("certify")
        .arg(sys())
        .arg(pts())
        .args(["--structure", "3,0,1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(outcomes(&out), ["in_v", "not_in_v"]);

    let out = bin().arg("certify").arg(sys()).arg(pts()).output().unwrap();
    assert_eq!(
        outcomes(&out),
        ["approx_solution_only", "approx_solution_only"]
    );
}

#[test]
fn rounding_and_jobs_do_not_change_outcomes() {
    let base = bin()
        .arg("certify")
        .arg(sys())
        .arg(pts())
        .arg("--real")
        .output()
        .unwrap();
    let again = bin()
        .arg("certify")
        .arg(sys())
        .arg(pts())
        .args(["--real", "--jobs", "1"])
        .output()
        .unwrap();
    assert_eq!(base.stdout, again.stdout);
    let rounded = bin()
        .arg("certify")
        .arg(sys())
        .arg(pts())
        .args(["--real", "--round-bits", "64", "--max-iters", "3"])
        .output()
        .unwrap();
    assert_eq!(outcomes(&rounded), outcomes(&base));
}

#[test]
fn bad_points_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.pts");
    std::fs::write(
        &p,
        "2 5\n0 1 0 1\n0 1 0 1\n0 1 0 1\n0 1 0 1\n0 1 0 1\n\n5 1 0 1\n1 1 0 1\n1 1 0 1\n1 1 1 1\n1 1 -1 1\n",
    )
    .unwrap();
    let out = bin()
        .arg("certify")
        .arg(sys())
        .arg(&p)
        .arg("--real")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        outcomes(&out),
        ["singular_jacobian", "not_approximate_solution"]
    );
    assert!(records(&out)[1]["beta_sq"].is_string());
}

#[test]
fn input_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.pts");
    std::fs::write(&p, "1 5\n0 1 0 1\n0 1 0\n").unwrap();
    let out = bin().arg("certify").arg(sys()).arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("broken.pts") && err.contains("line 3"),
        "{err}"
    );

    let out = bin()
        .arg("certify")
        .arg(dir.path().join("missing.sys"))
        .arg(pts())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Points of the wrong dimension.
    let out = bin()
        .arg("tritangent")
        .arg(root().join("data/curves/ex41.curve"))
        .arg(pts())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("expected 18"));
}

#[test]
fn validate_exit_codes() {
    let out = bin()
        .arg("validate")
        .arg(sys())
        .args(["--structure", "3,0,1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS"));
    let out = bin()
        .arg("validate")
        .arg(sys())
        .args(["--structure", "2,1,1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("FAIL"));
    let out = bin()
        .arg("validate")
        .arg(sys())
        .args(["--structure", "3,0,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn refine_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("refined.pts");
    let out = bin()
        .arg("refine")
        .arg(sys())
        .arg(pts())
        .args(["--iters", "2", "--round-bits", "96", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let refined = parse_points(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(refined.len(), 2);
    let out = bin()
        .arg("certify")
        .arg(sys())
        .arg(&out_path)
        .arg("--real")
        .output()
        .unwrap();
    assert_eq!(outcomes(&out), ["not_in_v", "in_v"]);
    let beta = |o: &Output, i: usize| records(o)[i]["beta"][1].as_str().unwrap().to_string();
    let e = |s: String| s.split('e').nth(1).unwrap().parse::<i32>().unwrap();
    assert!(e(beta(&out, 1)) < -20);
}

#[test]
fn tritangent_partial_set_exits_three() {
    let all =
        parse_points(&std::fs::read_to_string(root().join("data/candidates/ex41.pts")).unwrap())
            .unwrap();
    let mut some: Vec<_> = all[..6].to_vec();
    some.push(all[0].clone());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("few.pts");
    std::fs::write(&p, serialize_points(&some)).unwrap();
    let out = bin()
        .arg("tritangent")
        .arg(root().join("data/curves/ex41.curve"))
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let lines = records(&out);
    assert_eq!(lines.len(), 1 + some.len());
    let summary = &lines[0];
    assert_eq!(summary["summary"]["distinct"], 6);
    assert_eq!(summary["complete"], false);
    let s = &summary["summary"];
    assert_eq!(
        s["nonreal"].as_u64().unwrap()
            + s["real"].as_u64().unwrap()
            + s["unresolved"].as_u64().unwrap(),
        6
    );
    assert_eq!(lines[7]["status"], "duplicate");
    assert_eq!(lines[7]["of"], 0);
}

#[test]
fn solve_is_deterministic() {
    let curve = root().join("data/curves/ex41.curve");
    let go = || {
        bin()
            .arg("solve")
            .arg(&curve)
            .args(["--starts", "40", "--seed", "5"])
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let found = parse_points(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert!(found.iter().all(|p| p.len() == 18));
}

#[test]
fn tritangent_system_validates_for_both_structures() {
    use alphacert::poly::serialize_system;
    use alphacert::tritangent::{build_tritangent_system, parse_curve};
    let curve =
        parse_curve(&std::fs::read_to_string(root().join("data/curves/ex41.curve")).unwrap())
            .unwrap();
    let (f, _) = build_tritangent_system(&curve);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("tritangent.sys");
    std::fs::write(&p, serialize_system(&f)).unwrap();
    for s in ["3,3,0,5", "3,1,1,5"] {
        let out = bin()
            .arg("validate")
            .arg(&p)
            .args(["--structure", s])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{s}");
    }
    let out = bin()
        .arg("validate")
        .arg(&p)
        .args(["--structure", "3,3,0,4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_candidate_set_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("none.pts");
    std::fs::write(&p, "0 18\n").unwrap();
    let out = bin()
        .arg("tritangent")
        .arg(root().join("data/curves/c2.curve"))
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let lines = records(&out);
    assert_eq!(lines.len(), 1);
    for k in [
        "distinct",
        "nonreal",
        "real",
        "totally_real",
        "real_not_totally",
        "unresolved",
    ] {
        assert_eq!(lines[0]["summary"][k], 0, "{k}");
    }
}

#[test]
fn refine_square_root_of_two() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("sqrt2.sys");
    std::fs::write(&s, "1 1\n2\n1 1 0 1 2\n-2 1 0 1 0\n").unwrap();
    let p = dir.path().join("start.pts");
    std::fs::write(&p, "2 1\n3 2 0 1\n\n2 1 0 1\n").unwrap();
    let refine = |iters: &str, extra: &[&str]| {
        let out = bin()
            .arg("refine")
            .arg(&s)
            .arg(&p)
            .args(["--iters", iters])
            .args(extra)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        parse_points(&String::from_utf8(out.stdout).unwrap()).unwrap()
    };
    let r = refine("3", &[]);
    assert_eq!(
        r[0][0].re,
        alphacert::arith::Rational::new(665857.into(), 470832.into())
    );
    let r = refine("2", &["--round-bits", "128"]);
    let two128 = num_bigint::BigInt::from(1) << 128;
    for x in &r {
        assert!((&two128 % x[0].re.denom()) == 0.into());
    }

    // An exact root is a fixed point; a zero derivative is passed through.
    std::fs::write(&s, "1 1\n2\n1 1 0 1 2\n-4 1 0 1 0\n").unwrap();
    std::fs::write(&p, "2 1\n2 1 0 1\n\n0 1 0 1\n").unwrap();
    let out = bin()
        .arg("refine")
        .arg(&s)
        .arg(&p)
        .args(["--iters", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        std::fs::read_to_string(&p).unwrap()
    );
    assert!(String::from_utf8(out.stderr).unwrap().contains("point 1"));
}

#[test]
fn tritangent_solve_reports_are_byte_identical() {
    let go = || {
        bin()
            .arg("tritangent")
            .arg(root().join("data/curves/c1.curve"))
            .args(["--solve", "--starts", "30", "--seed", "2"])
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(3));
    assert_eq!(a.stdout, b.stdout);
}
