use std::path::Path;
use std::process::{Command, Output};

use shl_core::{q, Report, Verdict};

fn shl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shl")).args(args).output().expect("binary runs")
}

fn shl_report(args: &[&str], dir: &Path, name: &str) -> (i32, Report, String) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json-out", &p]);
    let out = shl(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("no report for {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), Report::from_json(&text).unwrap(), text)
}

#[test]
fn eval_f_prints_exact_value() {
    let out = shl(&["eval", "f", "--lambda", "[1,0]", "--t", "1/3", "--s", "0", "--u", "1/5,1/7"]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    // (1-t)^2 (u1 + u2)
    assert_eq!(report.lhs.unwrap().exact, q(4, 9) * (q(1, 5) + q(1, 7)));
    assert!(String::from_utf8_lossy(&out.stderr).contains("F[1,0] = 16/105"));
}

#[test]
fn json_round_trip_is_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, text) = shl_report(&["verify", "littlewood", "--n", "1", "--seed", "3"], dir.path(), "r.json");
    assert_eq!(code, 0);
    let back = Report::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    assert_eq!(report.to_json() + "\n", text);
    // exact fields travel as strings, not floats
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(raw["lhs"]["exact"].is_string());
    assert!(raw["rhs"]["exact"].is_string());
    assert!(raw["residual"]["exact"].is_string());
    for key in ["suite", "params", "plan", "lhs", "rhs", "residual", "trace", "verdict", "runtime_ms", "version"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn frozen_n2_residual_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, text) = shl_report(&["verify", "frozen", "--n", "2", "--seed", "5"], dir.path(), "f.json");
    assert_eq!(code, 0);
    assert!(report.residual.unwrap().exact.is_zero());
    assert!(text.contains("\"exact\": \"0\""));
}

#[test]
fn deterministic_except_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "pfp", "--n", "2", "--seed", "11"];
    let (_, a, _) = shl_report(&args, dir.path(), "a.json");
    let (_, b, _) = shl_report(&args, dir.path(), "b.json");
    assert_eq!(a.without_runtime().to_json(), b.without_runtime().to_json());
}

#[test]
fn exit_codes_follow_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], Verdict)] = &[
        (&["verify", "z-properties", "--n", "1", "--seed", "7"], Verdict::Pass),
        (&["verify", "frozen", "--n", "1", "--t", "1/3", "--gamma", "2", "--s", "1/5", "--printed"], Verdict::Fail),
        (&["verify", "littlewood", "--t", "1/3", "--gamma", "2", "--s", "1/5", "--u", "19/20,1/7"], Verdict::Error),
        (&["verify", "lemma-plus", "--mu", "[2,1]", "--seed", "2"], Verdict::Unsupported),
    ];
    for (i, (args, verdict)) in cases.iter().enumerate() {
        let (code, report, _) = shl_report(args, dir.path(), &format!("{i}.json"));
        assert_eq!(report.verdict, *verdict, "{args:?}: {}", report.to_json());
        assert_eq!(code, verdict.exit_code(), "{args:?}");
    }
}

#[test]
fn inadmissible_point_explains_bound() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, _) = shl_report(
        &["verify", "littlewood", "--t", "1/3", "--gamma", "2", "--s", "1/5", "--u", "19/20,1/7"],
        dir.path(),
        "e.json",
    );
    assert_eq!(code, 2);
    let msg = report.message.unwrap();
    assert!(msg.contains("admissibility") && msg.contains("u_1") && msg.contains("9/10"), "{msg}");
}

#[test]
fn every_suite_exit_code_matches_report() {
    let dir = tempfile::tempdir().unwrap();
    let suites: &[&[&str]] = &[
        &["verify", "littlewood", "--seed", "4"],
        &["verify", "class", "--seed", "4"],
        &["verify", "unrefined", "--seed", "4"],
        &["verify", "pfp", "--seed", "4"],
        &["verify", "z-properties", "--seed", "4"],
        &["verify", "frozen", "--seed", "4"],
        &["verify", "ybe", "--seed", "4", "--cutoff", "3"],
        &["verify", "lattice-vs-sym", "--seed", "4", "--max-part", "2"],
        &["verify", "lemma-plus", "--seed", "4"],
        &["eval", "pf", "--seed", "4"],
        &["eval", "f", "--lambda", "[2,1]", "--seed", "4"],
        // class needs s = 0, so this is a precondition error
        &["verify", "class", "--t", "1/3", "--s", "1/5", "--u", "1/7,1/9"],
    ];
    for (i, args) in suites.iter().enumerate() {
        let (code, report, _) = shl_report(args, dir.path(), &format!("{i}.json"));
        assert_eq!(code, report.verdict.exit_code(), "{args:?}");
        if i + 1 < suites.len() {
            assert_eq!(report.verdict, Verdict::Pass, "{args:?}: {}", report.to_json());
        } else {
            assert_eq!(report.verdict, Verdict::Error);
        }
    }
}

#[test]
fn usage_errors_name_the_flag() {
    for (args, flag) in [
        (vec!["verify", "littlewood", "--t", "1/0", "--u", "1/5,1/7"], "--t"),
        (vec!["verify", "littlewood", "--t", "1/3", "--u", "1/5,1/7,1/9"], "--u"),
        (vec!["eval", "f", "--t", "1/3", "--u", "1/5"], "--lambda"),
        (vec!["verify", "ybe", "--seed", "1", "--gamma", "2"], "--seed"),
    ] {
        let out = shl(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(flag), "{args:?}");
    }
}

#[test]
fn thread_count_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_shl"))
            .args(["verify", "littlewood", "--n", "2", "--seed", "9"])
            .env("SHL_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    let strip = |o: &Output| Report::from_json(&String::from_utf8_lossy(&o.stdout)).unwrap().without_runtime();
    assert_eq!(strip(&one), strip(&four));
    assert_eq!(run("zero").status.code(), Some(2));
}
