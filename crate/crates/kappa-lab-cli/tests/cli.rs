use std::process::{Command, Output};

use kappa_lab::Report;
use proptest::prelude::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa-lab"))
        .args(args)
        .env_remove("KAPPA_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn status(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let rep = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), rep)
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn fibonacci_verifies() {
    assert_eq!(status(&["verify", "fusion", "builtin:fibonacci"]), 0);
}

#[test]
fn broken_pentagon_exits_one() {
    let (code, rep) = json(&["verify", "fusion", "builtin:broken:fibonacci-F"]);
    assert_eq!(code, 1);
    assert!(!rep.check("pentagon").unwrap().pass);
}

#[test]
fn load_errors_exit_two() {
    assert_eq!(status(&["verify", "fusion", "builtin:lucas"]), 2);
    assert_eq!(status(&["verify", "fusion", "/nonexistent/file.json"]), 2);
    assert_eq!(status(&["verify", "module", "builtin:fibonacci"]), 2);
    assert_eq!(status(&["frobnicate"]), 2);
    assert_eq!(
        status(&["--abs-eps", "0", "verify", "fusion", "builtin:trivial"]),
        2
    );
    assert_eq!(
        status(&["two-adjoint", "builtin:regular:fibonacci", "--seed", "1"]),
        2
    );
}

#[test]
fn help_exits_zero() {
    assert_eq!(status(&["--help"]), 0);
}

#[test]
fn unknown_name_lists_catalog_on_stderr() {
    let out = run(&["verify", "fusion", "builtin:lucas"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("fibonacci") && err.contains("ising"), "{err}");
}

#[test]
fn unknown_check_id_is_a_usage_error() {
    let out = run(&[
        "--checks",
        "pentagon,bogus",
        "verify",
        "fusion",
        "builtin:fibonacci",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("zigzag"));
}

#[test]
fn checks_filter_keeps_only_listed_ids() {
    let (code, rep) = json(&[
        "--checks",
        "zigzag",
        "verify",
        "fusion",
        "builtin:broken:fibonacci-F",
    ]);
    assert_eq!(code, 0);
    assert_eq!(rep.checks.len(), 1);
    assert_eq!(rep.checks[0].id, "zigzag");
}

#[test]
fn json_is_stable_apart_from_timing() {
    let strip = |mut r: Report| {
        r.wall_time_ms = 0.0;
        r
    };
    let args = ["--seed", "3", "enrich", "builtin:regular:fibonacci"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(strip(a.clone()), strip(b));
    assert_eq!(a.seed, Some(vec![3]));
}

#[test]
fn text_lists_every_check_with_its_worst_tuple() {
    let out = stdout(&["verify", "fusion", "builtin:broken:fibonacci-F"]);
    assert!(out.starts_with("suite fusion:broken:fibonacci-F"));
    let pent = out.lines().find(|l| l.contains("pentagon")).unwrap();
    assert!(
        pent.contains("FAIL") && pent.contains("worst (tau,tau,tau,tau)"),
        "{pent}"
    );
    assert!(out.lines().last().unwrap().starts_with("overall FAIL"));
}

#[test]
fn tighter_tolerance_can_only_fail_more() {
    let (_, loose) = json(&["--abs-eps", "1e-6", "verify", "fusion", "builtin:ising"]);
    let (_, tight) = json(&[
        "--abs-eps",
        "1e-18",
        "--rel-eps",
        "0",
        "verify",
        "fusion",
        "builtin:ising",
    ]);
    assert!(loose.overall);
    assert!(tight.failed().len() >= loose.failed().len());
}

#[test]
fn export_then_reload() {
    let dir = std::env::temp_dir().join(format!("kappa-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, cmd) in [
        ("ising", vec!["verify", "fusion"]),
        ("regular:fibonacci", vec!["roundtrip"]),
        ("central:semion", vec!["monoidal"]),
    ] {
        let path = dir.join(format!("{}.json", name.replace(':', "_")));
        let p = path.to_str().unwrap();
        assert_eq!(status(&["export", name, p]), 0);
        let mut args = cmd.clone();
        args.push(p);
        let (code, from_file) = json(&args);
        let mut args = cmd;
        let b = format!("builtin:{name}");
        args.push(&b);
        let (_, builtin) = json(&args);
        assert_eq!(code, 0, "{name}");
        let ids = |r: &Report| {
            r.checks
                .iter()
                .map(|c| (c.id.clone(), c.pass))
                .collect::<Vec<_>>()
        };
        assert_eq!(ids(&from_file), ids(&builtin), "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_to_stdout_matches_file_format() {
    let text = stdout(&["export", "builtin:semion", "-"]);
    let fd: kappa_lab::Fusion64 = kappa_lab::format::fusion_from_str(&text).unwrap();
    assert_eq!(fd.name, "semion");
}

#[test]
fn list_names_every_kind() {
    let out = stdout(&["list"]);
    assert!(out
        .lines()
        .any(|l| l.starts_with("fusion") && l.ends_with("fibonacci")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("module") && l.ends_with("vec-over-z2")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("central") && l.ends_with("central:ising")));
}

#[test]
fn invalid_thread_count_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_kappa-lab"))
        .args(["verify", "fusion", "builtin:trivial"])
        .env("KAPPA_LAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_kappa-lab"))
        .args(["verify", "fusion", "builtin:trivial"])
        .env("KAPPA_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

fn fusion_source() -> impl Strategy<Value = (String, i32)> {
    prop_oneof![
        Just(("builtin:trivial".to_string(), 0)),
        Just(("builtin:semion".to_string(), 0)),
        Just(("builtin:zn:2:0:1".to_string(), 0)),
        Just(("builtin:broken:fibonacci-F".to_string(), 1)),
        Just(("builtin:regular:semion".to_string(), 2)),
        "[a-z]{3,8}".prop_map(|s| (format!("builtin:{s}"), 2)),
        (13usize..40).prop_map(|n| (format!("builtin:zn:{n}:0:0"), 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exit_status_reflects_the_outcome((src, want) in fusion_source()) {
        prop_assume!(!["trivial", "semion", "ising"].contains(&src.trim_start_matches("builtin:")));
        prop_assert_eq!(status(&["verify", "fusion", &src]), want);
    }
}
