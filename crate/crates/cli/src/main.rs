//! `cartan`: validation and theorem checks over model files.
//!
//! Every command prints a JSON report on stdout. Exit status is 0 when all
//! checks pass, 1 when a check fails and 2 on usage errors or missing files.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use cartan_core::corpus::standard_fixtures;
use cartan_core::semicrossed::FiniteDynamicalSystem;
use cartan_core::spec_file::{self, Model};
use clap::{Parser, Subcommand};

use crate::report::{digest, Check, Report, Status};

#[derive(Parser)]
#[command(name = "cartan", version, about = "Checks for finite groupoid algebras and their triangular subalgebras")]
struct Cli {
    /// Directory that model names are resolved against.
    #[arg(long, global = true, env = "CARTAN_FIXTURES", default_value = "fixtures")]
    fixtures: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the groupoid, its cocycle and its order.
    Validate { spec: String },
    /// Orbits, isotropy, order flags and density dimensions.
    Analyze { spec: String },
    /// GNS representation at a point with masa and expectation checks.
    Rep {
        spec: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Invariant subspace lattices at every point.
    NestCheck { spec: String },
    /// Operator norm against the supremum of GNS norms on random elements.
    NormCheck {
        spec: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniqueness of state extensions at every point.
    ExtensionCheck { spec: String },
    /// Two distinct extensions of a point evaluation in a finite crossed product.
    DemoSemicrossed {
        #[arg(long)]
        size: usize,
        /// Permutation in cycle notation, e.g. "1 2 3" or "(1 2)(3 4)".
        #[arg(long)]
        perm: String,
        #[arg(long, default_value = "1")]
        point: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        degree: i64,
    },
    /// Write the standard fixture corpus.
    GenerateFixtures {
        /// Output directory; defaults to the fixtures root.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct UsageError(String);

fn resolve(spec: &str, root: &Path) -> Result<PathBuf, UsageError> {
    let candidates = [root.join(spec), root.join(format!("{spec}.toml")), PathBuf::from(spec)];
    candidates
        .into_iter()
        .find(|p| p.is_file())
        .ok_or_else(|| UsageError(format!("no model file {spec:?} (searched {})", root.display())))
}

/// Loads a model; a malformed or invalid file becomes a failed report.
fn load(command: &str, spec: &str, root: &Path, params: &[&str]) -> Result<Result<(Model, String), Report>, UsageError> {
    let path = resolve(spec, root)?;
    let bytes = std::fs::read(&path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut parts: Vec<&[u8]> = vec![command.as_bytes(), &bytes];
    parts.extend(params.iter().map(|p| p.as_bytes()));
    let d = digest(&parts);
    let text = String::from_utf8_lossy(&bytes);
    Ok(match spec_file::parse(&text) {
        Ok(model) => Ok((model, d)),
        Err(e) => Err(Report::new(
            command,
            d,
            vec![Check::new("load", Status::Fail).witnesses([e.to_string()])],
        )),
    })
}

fn run(cli: Cli) -> Result<Report, UsageError> {
    let root = cli.fixtures;
    macro_rules! with_model {
        ($name:expr, $spec:expr, $params:expr, |$m:ident| $body:expr) => {
            match load($name, $spec, &root, $params)? {
                Ok(($m, d)) => Report::new($name, d, $body),
                Err(report) => report,
            }
        };
    }
    Ok(match cli.command {
        Command::Validate { spec } => with_model!("validate", &spec, &[], |m| commands::validate(&m)),
        Command::Analyze { spec } => with_model!("analyze", &spec, &[], |m| commands::analyze(&m)),
        Command::Rep { spec, point, seed } => {
            let seed_s = seed.to_string();
            match load("rep", &spec, &root, &[&point, &seed_s])? {
                Ok((m, d)) => {
                    let x0 = m
                        .groupoid
                        .point(&point)
                        .map_err(|_| UsageError(format!("unknown point {point:?}")))?;
                    Report::new("rep", d, commands::rep(&m, x0, seed))
                }
                Err(report) => report,
            }
        }
        Command::NestCheck { spec } => with_model!("nest-check", &spec, &[], |m| commands::nest_check(&m)),
        Command::NormCheck { spec, trials, seed } => {
            let (t, s) = (trials.to_string(), seed.to_string());
            with_model!("norm-check", &spec, &[&t, &s], |m| commands::norm_check(&m, trials, seed))
        }
        Command::ExtensionCheck { spec } => {
            with_model!("extension-check", &spec, &[], |m| commands::extension_check(&m))
        }
        Command::DemoSemicrossed {
            size,
            perm,
            point,
            trials,
            seed,
            degree,
        } => {
            let sys = FiniteDynamicalSystem::from_cycles(size, &perm).map_err(|e| UsageError(e.to_string()))?;
            let sys = Arc::new(sys);
            let x0 = sys.point(&point).map_err(|e| UsageError(e.to_string()))?;
            let args = commands::DemoArgs {
                size,
                perm,
                point,
                trials,
                seed,
                degree,
            };
            let params = format!("{size}|{}|{}|{trials}|{seed}|{degree}", args.perm, args.point);
            let d = digest(&[b"demo-semicrossed", params.as_bytes()]);
            Report::new("demo-semicrossed", d, commands::demo_semicrossed(&sys, x0, &args))
        }
        Command::GenerateFixtures { out } => {
            let dir = out.unwrap_or(root);
            std::fs::create_dir_all(&dir).map_err(|e| UsageError(format!("cannot create {}: {e}", dir.display())))?;
            let mut checks = Vec::new();
            let mut all = Vec::new();
            for spec in standard_fixtures() {
                let text = spec.serialize().map_err(|e| UsageError(e.to_string()))?;
                let file = format!("{}.toml", spec.name);
                std::fs::write(dir.join(&file), &text)
                    .map_err(|e| UsageError(format!("cannot write {file}: {e}")))?;
                all.extend_from_slice(text.as_bytes());
                checks.push(Check::new(format!("wrote {file}"), Status::Pass).value("bytes", text.len()));
            }
            Report::new("generate-fixtures", digest(&[b"generate-fixtures", &all]), checks)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{}", report.to_json());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
