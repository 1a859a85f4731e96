use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use ellreg_cli::modfile::ModuleFile;
use ellreg_cli::{golden, report, selftest, CliError, BASE_RADIUS, DEFAULT_SEED};
use ellreg_core::dahacheck::builtin_modules;
use ellreg_core::{Error, RootDatum, TypeLabel};
use serde_json::{json, Value};

/// Batch verifier for elliptic regular slopes, alcove clans and module relations.
#[derive(Parser)]
#[command(name = "ellreg", version)]
struct Cli {
    /// Seed for random representatives and evaluation points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Elliptic numbers with centralizer, torsion and orbit data per m.
    Classify {
        #[arg(value_name = "TYPE")]
        label: String,
        rank: usize,
        /// Also enumerate conjugacy classes above one million elements.
        #[arg(long)]
        deep: bool,
    },
    /// Compare both sides of the localization identity for the Euler form.
    Verify334 {
        #[arg(value_name = "TYPE")]
        label: String,
        rank: usize,
        m: i64,
        k: i64,
    },
    /// Clan table of alcoves up to a length radius.
    Clans {
        #[arg(value_name = "TYPE")]
        label: String,
        rank: usize,
        k: i64,
        m: i64,
        #[arg(long, default_value_t = BASE_RADIUS)]
        radius: usize,
    },
    /// Per-clan and total Euler characteristics.
    Chi {
        #[arg(value_name = "TYPE")]
        label: String,
        rank: usize,
        k: i64,
        m: i64,
        #[arg(long, default_value_t = BASE_RADIUS)]
        radius: usize,
        /// Grow the radius until the outermost shell contributes nothing.
        #[arg(long)]
        grow: bool,
    },
    /// Check every defining relation for a module file.
    Checkmod { file: PathBuf },
    /// Print a catalog module in the module-file format, or list the catalog.
    Catalog { name: Option<String> },
    /// Run the full golden suite.
    Selftest {
        #[arg(long)]
        deep: bool,
        /// Print every check, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

fn datum(label: &str, rank: usize) -> Result<RootDatum, CliError> {
    Ok(RootDatum::build(TypeLabel::from_str(label)?, rank)?)
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    // A closed pipe (e.g. `| head`) is not an error.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Exit status: 0 pass, 1 mismatch.
fn run(cli: Cli) -> Result<bool, CliError> {
    let seed = cli.seed;
    match cli.cmd {
        Cmd::Classify { label, rank, deep } => {
            let d = datum(&label, rank)?;
            let mut progress = |s: &str| eprintln!("[classify] {s}");
            print(&report::classify(&d, seed, deep, &mut progress)?);
            Ok(true)
        }
        Cmd::Verify334 { label, rank, m, k } => {
            let d = datum(&label, rank)?;
            let (ok, v) = report::euler_identity(&d, &selftest::slope(k, m)?, seed)?;
            print(&v);
            Ok(ok)
        }
        Cmd::Clans {
            label,
            rank,
            k,
            m,
            radius,
        } => {
            let d = datum(&label, rank)?;
            print(&report::clans(&d, &selftest::slope(k, m)?, radius)?);
            Ok(true)
        }
        Cmd::Chi {
            label,
            rank,
            k,
            m,
            radius,
            grow,
        } => {
            let d = datum(&label, rank)?;
            let s = selftest::slope(k, m)?;
            if grow {
                let reps = report::chi_until_stable(&d, &s, radius, seed)?;
                let docs: Vec<Value> = reps.iter().map(|r| report::chi_json(&d, r)).collect();
                print(&json!(docs));
            } else {
                let rep = ellreg_core::localize::total_chi(&d, &s, radius, seed)?;
                print(&report::chi_json(&d, &rep));
            }
            Ok(true)
        }
        Cmd::Checkmod { file } => {
            let text = std::fs::read_to_string(&file).map_err(|source| CliError::Io {
                path: file.display().to_string(),
                source,
            })?;
            let module = ModuleFile::parse(&text)?.to_module()?;
            let (ok, v) = report::checkmod(&module)?;
            print(&v);
            if let Some(f) = v["first_failure"].as_str() {
                eprintln!("relation fails: {f}");
            }
            Ok(ok)
        }
        Cmd::Catalog { name } => {
            let cat = builtin_modules();
            match name {
                None => print(&json!(cat
                    .iter()
                    .map(|c| c.name.clone())
                    .collect::<Vec<_>>())),
                Some(n) => {
                    let cm = cat
                        .iter()
                        .find(|c| c.name == n)
                        .ok_or_else(|| CliError::Module(format!("no catalog module named {n}")))?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&ModuleFile::from_module(&cm.module)?)?
                    );
                }
            }
            Ok(true)
        }
        Cmd::Selftest { deep, verbose } => {
            let g = golden::load();
            let mut progress = |s: &str| eprintln!("[selftest] {s}");
            let res = selftest::run(&g, seed, deep, &mut progress)?;
            for c in &res.checks {
                if verbose || !c.pass {
                    eprintln!("{}", c.line());
                }
            }
            for d in &res.deferred {
                eprintln!("deferred (needs --deep): {d}");
            }
            let failures: Vec<_> = res.failures().collect();
            print(&json!({
                "checks": res.checks.len(),
                "failures": failures,
                "deferred": res.deferred,
                "passes": res.passes(),
            }));
            Ok(res.passes())
        }
    }
}

fn is_usage(e: &CliError) -> bool {
    match e {
        CliError::Core(c) => matches!(
            c,
            Error::InvalidType { .. }
                | Error::InvalidSlope { .. }
                | Error::BadIndex { .. }
                | Error::Parse(_)
                | Error::NotElliptic
                | Error::NoEllipticRep { .. }
        ),
        CliError::Json(_) | CliError::Io { .. } | CliError::Module(_) => true,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
