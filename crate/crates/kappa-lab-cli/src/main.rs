//! `kappa-lab`: load fusion, module and central data, run the verification
//! suites and report residuals.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! usage, load or validation errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kappa_lab::catalog::{self, Payload};
use kappa_lab::enrich::{build_enriched, verify_dagger_enriched, HomBasis};
use kappa_lab::fusion::{verify_fusion, FusionData};
use kappa_lab::modulecat::{verify_module, ModuleData};
use kappa_lab::monoidal::{build_monoidal_enriched, verify_monoidal, CentralStructure};
use kappa_lab::roundtrip::{
    action_dagger_test, build_roundtrip, two_adjoint_test, verify_roundtrip,
};
use kappa_lab::{format, Report, Tol};

const THREADS_VAR: &str = "KAPPA_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "kappa-lab",
    version,
    about = "Verify dagger enriched categories built from fusion data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Absolute residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    abs_eps: f64,
    /// Relative tolerance, scaled by the operand norms.
    #[arg(long, global = true, default_value_t = 1e-12)]
    rel_eps: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Seed of a random orthonormal hom basis; the canonical basis otherwise.
    /// `two-adjoint` takes it twice.
    #[arg(long, global = true)]
    seed: Vec<u64>,
    /// Only report these check ids.
    #[arg(long, global = true, value_delimiter = ',')]
    checks: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the fusion or module axiom suite.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        /// `builtin:<name>` or a data file.
        src: String,
    },
    /// Build the enriched category of a module and run the dagger suite.
    Enrich { src: String },
    /// Rebuild the action from the enrichment and compare with the original.
    Roundtrip { src: String },
    /// Compare the enrichments of two random orthonormal bases.
    TwoAdjoint { src: String },
    /// Run the braided-central and monoidal suites of a central structure.
    Monoidal { src: String },
    /// Write a catalog entry as a data file (`-` for standard output).
    Export { name: String, path: PathBuf },
    /// List catalog entries.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Fusion,
    Module,
}

/// Usage, load or validation failure; reported with exit status 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Fatal> {
    init_threads()?;
    let tol = Tol::new(cli.abs_eps, cli.rel_eps)?;
    let seed = || -> Result<Option<u64>, Fatal> {
        match cli.seed.as_slice() {
            [] => Ok(None),
            [s] => Ok(Some(*s)),
            _ => Err(Fatal("--seed is given more than once".into())),
        }
    };
    let report = match &cli.command {
        Command::List => {
            print_list(cli.format);
            return Ok(0);
        }
        Command::Export { name, path } => {
            export(name, path)?;
            return Ok(0);
        }
        Command::Verify {
            what: VerifyKind::Fusion,
            src,
        } => verify_fusion(&load_fusion(src)?, tol),
        Command::Verify {
            what: VerifyKind::Module,
            src,
        } => verify_module(&load_module(src)?, tol),
        Command::Enrich { src } => {
            let md = load_module(src)?;
            let e = build_enriched(&md, basis(&md, seed()?))?;
            verify_dagger_enriched(&e, tol)
        }
        Command::Roundtrip { src } => {
            let md = load_module(src)?;
            let e = build_enriched(&md, basis(&md, seed()?))?;
            let rt = build_roundtrip(&md, &e)?;
            let parts = vec![verify_roundtrip(&rt, tol), action_dagger_test(&md, &e, tol)];
            let name = parts[0].suite.clone();
            Report::merge(&name, parts)
        }
        Command::TwoAdjoint { src } => {
            let [a, b] = cli.seed.as_slice() else {
                return Err(Fatal("two-adjoint needs exactly two --seed values".into()));
            };
            two_adjoint_test(&load_module(src)?, *a, *b, tol)
        }
        Command::Monoidal { src } => {
            let cs = load_central(src)?;
            let me = build_monoidal_enriched(&cs, basis(cs.module(), seed()?))?;
            verify_monoidal(&me, tol)
        }
    };
    let report = filter(report, &cli.checks)?;
    match cli.format {
        OutputFormat::Text => print!("{}", render_text(&report)),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(if report.overall { 0 } else { 1 })
}

/// Sizes the global pool from the environment; 0 or unset means automatic.
fn init_threads() -> Result<(), Fatal> {
    let n = match std::env::var(THREADS_VAR) {
        Err(_) => 0,
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            Fatal(format!(
                "{THREADS_VAR} must be a non-negative integer, got '{v}'"
            ))
        })?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn basis(md: &ModuleData<f64>, seed: Option<u64>) -> HomBasis<f64> {
    match seed {
        Some(s) => HomBasis::random_orthonormal(md, s),
        None => HomBasis::canonical(md),
    }
}

fn filter(mut report: Report, ids: &[String]) -> Result<Report, Fatal> {
    if ids.is_empty() {
        return Ok(report);
    }
    if let Some(bad) = ids.iter().find(|id| report.check(id).is_none()) {
        let known: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        return Err(Fatal(format!(
            "unknown check '{bad}'; this suite has: {}",
            known.join(", ")
        )));
    }
    report.retain(ids);
    Ok(report)
}

enum Source<'a> {
    Builtin(&'a str),
    File(&'a Path),
}

fn source(src: &str) -> Source<'_> {
    match src.strip_prefix("builtin:") {
        Some(name) => Source::Builtin(name),
        None => Source::File(Path::new(src)),
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("cannot read {}: {e}", path.display())))
}

fn builtin(name: &str) -> Result<Payload<f64>, Fatal> {
    Ok(catalog::builtin::<f64>(name)?.payload)
}

fn wrong_kind(name: &str, found: &Payload<f64>, wanted: &str) -> Fatal {
    Fatal(format!(
        "'{name}' is {} data, expected {wanted} data",
        found.kind()
    ))
}

fn load_fusion(src: &str) -> Result<FusionData<f64>, Fatal> {
    match source(src) {
        Source::Builtin(name) => match builtin(name)? {
            Payload::Fusion(fd) => Ok(fd),
            other => Err(wrong_kind(name, &other, "fusion")),
        },
        Source::File(p) => Ok(format::fusion_from_str(&read(p)?)?),
    }
}

fn load_module(src: &str) -> Result<ModuleData<f64>, Fatal> {
    match source(src) {
        Source::Builtin(name) => match builtin(name)? {
            Payload::Module(md) => Ok(md),
            other => Err(wrong_kind(name, &other, "module")),
        },
        Source::File(p) => Ok(format::module_from_str(&read(p)?)?),
    }
}

fn load_central(src: &str) -> Result<CentralStructure<f64>, Fatal> {
    match source(src) {
        Source::Builtin(name) => match builtin(name)? {
            Payload::Central(cs) => Ok(cs),
            other => Err(wrong_kind(name, &other, "central")),
        },
        Source::File(p) => Ok(format::central_from_str(&read(p)?)?),
    }
}

fn export(name: &str, path: &Path) -> Result<(), Fatal> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    let text = format::payload_to_string(&builtin(name)?);
    if path.as_os_str() == "-" {
        print!("{text}");
    } else {
        std::fs::write(path, text)
            .map_err(|e| Fatal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_list(fmt: OutputFormat) {
    let entries = catalog::list();
    match fmt {
        OutputFormat::Text => {
            for (name, kind) in entries {
                println!("{kind:<8} {name}");
            }
        }
        OutputFormat::Json => {
            let v: Vec<_> = entries
                .iter()
                .map(|(name, kind)| serde_json::json!({ "name": name, "kind": kind.as_str() }))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("list serializes")
            );
        }
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let seed = match &r.seed {
        Some(s) => s.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        None => "-".into(),
    };
    let _ = writeln!(
        out,
        "suite {}  (kappa-lab {}, seed {seed}, {:.1} ms)",
        r.suite, r.version, r.wall_time_ms
    );
    let width = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &r.checks {
        let _ = write!(
            out,
            "  {}  {:<width$}  residual {:.3e}  threshold {:.3e}",
            if c.pass { "pass" } else { "FAIL" },
            c.id,
            c.residual,
            c.threshold,
        );
        if !c.context.is_empty() {
            let _ = write!(out, "  worst {}", c.context);
        }
        out.push('\n');
    }
    let failed = r.failed();
    let _ = if failed.is_empty() {
        writeln!(out, "overall pass ({} checks)", r.checks.len())
    } else {
        writeln!(
            out,
            "overall FAIL ({} of {} checks failed: {})",
            failed.len(),
            r.checks.len(),
            failed.join(", ")
        )
    };
    out
}
