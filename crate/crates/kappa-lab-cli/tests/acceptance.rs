//! Acceptance criteria, one line each. Runs without the test harness so the
//! table prints in order; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use kappa_lab::catalog::{self, broken_fixtures, Payload};
use kappa_lab::enrich::{
    build_enriched, crosscheck_self_enrichment, self_enrichment, verify_dagger_enriched, HomBasis,
};
use kappa_lab::fusion::verify_fusion;
use kappa_lab::modulecat::ModuleData;
use kappa_lab::monoidal::{build_monoidal_enriched, verify_monoidal};
use kappa_lab::roundtrip::{
    action_dagger_test, build_roundtrip, two_adjoint_test, two_adjoint_test_with, verify_roundtrip,
};
use kappa_lab::{Fusion64, Module64, Report, Tol};

/// Residual bound of every passing identity.
const EXACT: f64 = 1e-9;
/// Residual a broken fixture must exceed on its target check.
const BROKEN_MIN: f64 = 1e-4;
/// Residual the non-orthonormal comparison must exceed.
const NON_ORTHONORMAL_MIN: f64 = 1e-2;
const NON_ORTHONORMAL_GRAM: f64 = 4.0;
/// Largest allowed ratio of residuals across basis choices.
const BASIS_RATIO: f64 = 10.0;
/// Residuals below this count as exact zero when forming ratios.
const RATIO_FLOOR: f64 = 1e-12;

const FUSION: [&str; 7] = [
    "trivial",
    "zn:2:0:0",
    "zn:2:1:0",
    "zn:3:0:1",
    "semion",
    "fibonacci",
    "ising",
];
const FUSION_IDS: [&str; 9] = [
    "pentagon",
    "f-unitarity",
    "zigzag",
    "r-unitarity",
    "hexagon-1",
    "hexagon-2",
    "phi-monoidal",
    "nu-unitality",
    "nu-associativity",
];
const ENRICH_IDS: [&str; 11] = [
    "kappa1",
    "kappa2",
    "kappa3",
    "kappa4",
    "enriched-unitality",
    "enriched-associativity",
    "lemma-eta-kappa-inv",
    "lemma-kappa-mate",
    "v-adjoint-1",
    "v-adjoint-2",
    "mate-inverse",
];
const ROUNDTRIP_IDS: [&str; 11] = [
    "modulator-natural",
    "modulator-associative",
    "modulator-inverse",
    "modulator-unitary",
    "omega-v-natural",
    "identity-mate",
    "gh-inverse",
    "dagger-left",
    "dagger-right",
    "alpha-unitary",
    "dagger-functorial",
];
const MONOIDAL_IDS: [&str; 8] = [
    "braided-interchange",
    "kappa5",
    "z1-mu-unitary",
    "z2-e-unitary",
    "reverse-hexagon",
    "nu-delta-mu",
    "mate-of-kappa",
    "self-tensor",
];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn payload(name: &str) -> Payload<f64> {
    catalog::builtin::<f64>(name)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .payload
}

fn fusion(name: &str) -> Fusion64 {
    match payload(name) {
        Payload::Fusion(fd) => fd,
        _ => panic!("{name} is not fusion data"),
    }
}

fn module(name: &str) -> Module64 {
    match payload(name) {
        Payload::Module(md) => md,
        _ => panic!("{name} is not module data"),
    }
}

fn modules() -> Vec<Module64> {
    let mut v: Vec<Module64> = FUSION
        .iter()
        .map(|n| module(&format!("regular:{n}")))
        .collect();
    v.push(module("vec-over-z2"));
    v
}

/// Every listed id is present, every check passes and stays below `EXACT`.
fn clean(rep: &Report, ids: &[&str]) -> Result<f64, String> {
    if let Some(missing) = ids.iter().find(|id| rep.check(id).is_none()) {
        return Err(format!("{} lacks '{missing}'", rep.suite));
    }
    if !rep.overall || rep.max_residual() >= EXACT {
        return Err(format!(
            "{} failed {:?} (max {:.1e})",
            rep.suite,
            rep.failed(),
            rep.max_residual()
        ));
    }
    Ok(rep.max_residual())
}

fn all_clean(reps: &[Report], ids: &[&str], budget_s: f64, secs: f64) -> Outcome {
    let mut worst = 0.0f64;
    for r in reps {
        match clean(r, ids) {
            Ok(m) => worst = worst.max(m),
            Err(e) => return outcome(false, e),
        }
    }
    outcome(
        secs < budget_s,
        format!(
            "{} suites, max residual {worst:.1e}, {secs:.2} s (budget {budget_s} s)",
            reps.len()
        ),
    )
}

fn enrich_report(md: &ModuleData<f64>, basis: HomBasis<f64>) -> Report {
    verify_dagger_enriched(&build_enriched(md, basis).unwrap(), Tol::default())
}

fn roundtrip_report(md: &ModuleData<f64>, basis: HomBasis<f64>) -> Report {
    let e = build_enriched(md, basis).unwrap();
    let rt = build_roundtrip(md, &e).unwrap();
    Report::merge(
        "roundtrip",
        vec![
            verify_roundtrip(&rt, Tol::default()),
            action_dagger_test(md, &e, Tol::default()),
        ],
    )
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let reps: Vec<Report> = FUSION
        .iter()
        .map(|n| verify_fusion(&fusion(n), Tol::default()))
        .collect();
    let secs = t.elapsed().as_secs_f64();
    // The trivial category has no nontrivial braiding checks to require beyond the shared ids.
    all_clean(&reps, &FUSION_IDS, 2.0, secs)
}

fn criterion_2() -> Outcome {
    let mods = modules();
    let t = Instant::now();
    let reps: Vec<Report> = mods
        .iter()
        .map(|md| enrich_report(md, HomBasis::canonical(md)))
        .collect();
    all_clean(&reps, &ENRICH_IDS, 5.0, t.elapsed().as_secs_f64())
}

fn criterion_3() -> Outcome {
    let mods = modules();
    let t = Instant::now();
    let reps: Vec<Report> = mods
        .iter()
        .map(|md| roundtrip_report(md, HomBasis::canonical(md)))
        .collect();
    all_clean(&reps, &ROUNDTRIP_IDS, 5.0, t.elapsed().as_secs_f64())
}

fn criterion_4() -> Outcome {
    let md = module("regular:fibonacci");
    let mut worst = 0.0f64;
    for (a, b) in [(1, 2), (7, 11)] {
        let rep = two_adjoint_test(&md, a, b, Tol::default());
        for id in ["psi-unitary", "two-unit-identity", "two-alpha-identity"] {
            match rep.check(id) {
                Some(c) if c.pass && c.residual < EXACT => worst = worst.max(c.residual),
                _ => return outcome(false, format!("seeds ({a},{b}): '{id}' not clean")),
            }
        }
    }
    let skew = HomBasis::non_orthonormal(&md, 2, 3.0);
    let gram = skew.gram_condition();
    let rep = two_adjoint_test_with(
        &md,
        HomBasis::random_orthonormal(&md, 1),
        skew,
        Tol::default(),
    );
    let psi = rep.check("psi-unitary").unwrap();
    let ok = gram > NON_ORTHONORMAL_GRAM && !psi.pass && psi.residual > NON_ORTHONORMAL_MIN;
    outcome(
        ok,
        format!(
            "orthonormal max {worst:.1e}; Gram condition {gram:.1} gives psi-unitary residual {:.2e} ({})",
            psi.residual,
            if psi.pass { "pass" } else { "fail" }
        ),
    )
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let reps: Vec<Report> = ["semion", "fibonacci", "ising"]
        .iter()
        .map(|n| {
            let Payload::Central(cs) = payload(&format!("central:{n}")) else {
                unreachable!()
            };
            let me = build_monoidal_enriched(&cs, HomBasis::canonical(cs.module())).unwrap();
            verify_monoidal(&me, Tol::default())
        })
        .collect();
    all_clean(&reps, &MONOIDAL_IDS, 10.0, t.elapsed().as_secs_f64())
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for b in broken_fixtures() {
        let src = format!("builtin:{}", b.name);
        let mut args: Vec<&str> = vec!["--format", "json"];
        args.extend(b.command.split(' '));
        args.push(&src);
        let out = Command::new(env!("CARGO_BIN_EXE_kappa-lab"))
            .args(&args)
            .output()
            .unwrap();
        if out.status.code() != Some(1) {
            return outcome(false, format!("{}: exit {:?}", b.name, out.status.code()));
        }
        let rep: Report = match serde_json::from_slice(&out.stdout) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("{}: no report ({e})", b.name)),
        };
        let failed: BTreeSet<&str> = rep.failed().into_iter().collect();
        let mut want: BTreeSet<&str> = b.forced.iter().copied().collect();
        want.insert(b.check);
        let r = rep.check(b.check).map_or(0.0, |c| c.residual);
        if failed != want || r <= BROKEN_MIN {
            return outcome(
                false,
                format!(
                    "{}: failed {failed:?}, {} residual {r:.1e}",
                    b.name, b.check
                ),
            );
        }
        notes.push(format!(
            "{} {} {r:.1e} (+{} forced)",
            b.name.trim_start_matches("broken:"),
            b.check,
            b.forced.len()
        ));
    }
    outcome(true, notes.join("; "))
}

fn ratio(a: f64, b: f64) -> f64 {
    let (a, b) = (a.max(RATIO_FLOOR), b.max(RATIO_FLOOR));
    a.max(b) / a.min(b)
}

fn criterion_7() -> Outcome {
    let seeds = [3u64, 17, 101];
    let mut worst = 1.0f64;
    for md in modules() {
        for (label, run) in [
            (
                "enrich",
                enrich_report as fn(&ModuleData<f64>, HomBasis<f64>) -> Report,
            ),
            ("roundtrip", roundtrip_report),
        ] {
            let reps: Vec<Report> = seeds
                .iter()
                .map(|&s| run(&md, HomBasis::random_orthonormal(&md, s)))
                .collect();
            let passes = |r: &Report| {
                r.checks
                    .iter()
                    .map(|c| (c.id.clone(), c.pass))
                    .collect::<Vec<_>>()
            };
            if reps.iter().any(|r| passes(r) != passes(&reps[0])) {
                return outcome(false, format!("{label} on {}: pass sets differ", md.name));
            }
            for (i, c) in reps[0].checks.iter().enumerate() {
                for r in &reps[1..] {
                    let q = ratio(c.residual, r.checks[i].residual);
                    worst = worst.max(q);
                    if q > BASIS_RATIO {
                        return outcome(
                            false,
                            format!("{label} on {}: '{}' ratio {q:.1}", md.name, c.id),
                        );
                    }
                }
            }
        }
    }
    outcome(
        true,
        format!("seeds {seeds:?}: pass sets identical, worst residual ratio {worst:.2}"),
    )
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0f64;
    for n in FUSION {
        let rep = crosscheck_self_enrichment(&self_enrichment(&fusion(n)), Tol::default());
        match clean(
            &rep,
            &[
                "self-comp",
                "self-kappa",
                "self-unit",
                "self-action",
                "self-dagger",
            ],
        ) {
            Ok(m) => worst = worst.max(m),
            Err(e) => return outcome(false, e),
        }
    }
    for n in ["semion", "fibonacci", "ising"] {
        let Payload::Central(cs) = payload(&format!("central:{n}")) else {
            unreachable!()
        };
        let me = build_monoidal_enriched(&cs, HomBasis::canonical(cs.module())).unwrap();
        let rep = verify_monoidal(&me, Tol::default());
        match rep.check("self-tensor") {
            Some(c) if c.pass && c.residual < EXACT => worst = worst.max(c.residual),
            _ => return outcome(false, format!("self-tensor on {n}")),
        }
    }
    outcome(
        true,
        format!("comp, kappa, unit, action, dagger and tensor closed forms agree, max {worst:.1e}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("fusion suites", criterion_1),
        ("dagger enrichment suites", criterion_2),
        ("round-trip suites", criterion_3),
        ("two-adjoint comparison", criterion_4),
        ("monoidal suites", criterion_5),
        ("negative controls", criterion_6),
        ("basis independence", criterion_7),
        ("closed-form cross-checks", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failures += 1;
        }
        println!(
            "criterion {}  {}  {name}: {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
