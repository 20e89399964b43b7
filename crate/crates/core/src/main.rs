use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fvknot::fuzz::{fuzz_invariance, trial_from, FuzzReport};
use fvknot::phimap::{parse_curve_file, phi, PhiError};
use fvknot::statesum::{flat_virtual_jones_with, state_table, StateSumError, DEFAULT_STATE_CAP};
use fvknot::{parse_diagram, serialize_diagram, Diagram};

/// Exit codes.
const PARSE: u8 = 2;
const INVALID: u8 = 3;
const CAP: u8 = 4;
const GENERICITY: u8 = 5;
/// Fuzzing found a counterexample.
const VIOLATIONS: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Parser)]
#[command(name = "fvknot", version, about = "Flat-virtual link diagrams and their Jones-type invariant")]
struct Cli {
    /// Refuse state sums over more classical crossings than this.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    cap: usize,
    /// State-sum worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print X(D) for a diagram file.
    Invariant {
        file: PathBuf,
        /// Also print every state with its counts and summand.
        #[arg(long)]
        table: bool,
    },
    /// Build the flat-virtual diagram of a curve file.
    Phi {
        file: PathBuf,
        /// Print X of the result instead of the diagram.
        #[arg(long)]
        invariant: bool,
        /// Also write the diagram to this file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Apply random moves to random diagrams and check that X is unchanged.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Forbid the R3 move with three flat crossings.
        #[arg(long)]
        restricted: bool,
        /// Start every trial from this diagram instead of a random one.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Crossing cap for generated diagrams (the state-sum cap is --cap).
        #[arg(long, default_value_t = 12)]
        max_crossings: usize,
    },
    /// Make every classical crossing flat.
    Forget { file: PathBuf },
    /// Print the number of components.
    Components { file: PathBuf },
    /// Print the writhe.
    Writhe { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    let d = parse_diagram(&read(path)?).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))?;
    let report = d.validate();
    if !report.is_ok() {
        return Err(fail(INVALID, format!("{}: {report}", path.display())));
    }
    Ok(d)
}

fn phi_failure(e: PhiError) -> Failure {
    let code = match e {
        PhiError::Parse { .. } => PARSE,
        PhiError::NonGenericProjection(_) | PhiError::NonGenericSubgroup(_) => GENERICITY,
        PhiError::InvalidCurve(_) | PhiError::SpaceMismatch { .. } => INVALID,
    };
    fail(code, e.to_string())
}

fn workers(cli: &Cli) -> usize {
    cli.workers
        .map(|w| w as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn invariant_text(cli: &Cli, d: &Diagram) -> Result<String, Failure> {
    let classical = d.classical_count();
    if classical > cli.cap {
        return Err(fail(CAP, StateSumError::CapExceeded { classical, cap: cli.cap }.to_string()));
    }
    let x = flat_virtual_jones_with(d, workers(cli)).map_err(|e| fail(INVALID, e.to_string()))?;
    Ok(x.to_string())
}

fn cmd_invariant(cli: &Cli, file: &Path, table: bool) -> Result<String, Failure> {
    let d = load_diagram(file)?;
    let x = invariant_text(cli, &d)?;
    let rows = if table {
        state_table(&d, cli.cap).map_err(|e| fail(CAP, e.to_string()))?
    } else {
        Vec::new()
    };
    let mut out = String::new();
    match cli.format {
        Format::Text => {
            out.push_str(&x);
            out.push('\n');
            for r in &rows {
                let bits: String = r.state.bits().values().map(|b| char::from(b'0' + b)).collect();
                out.push_str(&format!(
                    "{bits}\talpha={} beta={} even={} odd={}\t{}\n",
                    r.counts.alpha, r.counts.beta, r.counts.gamma_even, r.counts.gamma_odd, r.contribution
                ));
            }
        }
        Format::Records => {
            out.push_str(&json!({ "x": x, "writhe": d.writhe(), "components": d.component_count() }).to_string());
            out.push('\n');
            for r in &rows {
                let bits: serde_json::Map<String, serde_json::Value> =
                    r.state.bits().iter().map(|(id, b)| (id.to_string(), json!(b))).collect();
                out.push_str(&json!({ "state": bits, "counts": r.counts, "summand": r.contribution.to_string() }).to_string());
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn cmd_phi(cli: &Cli, file: &Path, invariant: bool, output: Option<&Path>) -> Result<String, Failure> {
    let f = parse_curve_file(&read(file)?).map_err(phi_failure)?;
    let res = phi(&f.curve, f.group).map_err(phi_failure)?;
    let mut text = String::new();
    if res.restricted_eligible {
        text.push_str("# restricted-eligible\n");
    }
    text.push_str(&serialize_diagram(&res.diagram));
    if let Some(path) = output {
        std::fs::write(path, &text).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))?;
    }
    if invariant {
        let x = invariant_text(cli, &res.diagram)?;
        return Ok(match cli.format {
            Format::Text => format!("{x}\n"),
            Format::Records => format!("{}\n", json!({ "x": x, "restricted_eligible": res.restricted_eligible })),
        });
    }
    Ok(match cli.format {
        Format::Text => text,
        Format::Records => format!(
            "{}\n",
            json!({
                "diagram": serialize_diagram(&res.diagram),
                "classical": res.diagram.classical_count(),
                "flat": res.diagram.flat_count(),
                "restricted_eligible": res.restricted_eligible,
            })
        ),
    })
}

fn cmd_fuzz(
    cli: &Cli,
    seed: u64,
    steps: usize,
    trials: usize,
    restricted: bool,
    from: Option<&Path>,
    max_crossings: usize,
) -> Result<(String, bool), Failure> {
    let report = match from {
        Some(path) => {
            let d = load_diagram(path)?;
            let trials = (0..trials as u64)
                .map(|i| trial_from(&d, seed.wrapping_add(i), steps, max_crossings.max(d.crossing_count()), restricted))
                .collect();
            FuzzReport { trials }
        }
        None => fuzz_invariance(seed, trials, steps, max_crossings, restricted),
    };
    let clean = report.violations() == 0;
    let out = match cli.format {
        Format::Text => report.to_string(),
        Format::Records => {
            let mut s = String::new();
            for t in &report.trials {
                s.push_str(&serde_json::to_string(t).expect("serializable"));
                s.push('\n');
            }
            s
        }
    };
    Ok((out, clean))
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Command::Invariant { file, table } => ok(cmd_invariant(cli, file, *table)?),
        Command::Phi { file, invariant, output } => ok(cmd_phi(cli, file, *invariant, output.as_deref())?),
        Command::Fuzz { seed, steps, trials, restricted, from, max_crossings } => {
            cmd_fuzz(cli, *seed, *steps, *trials, *restricted, from.as_deref(), *max_crossings)
        }
        Command::Forget { file } => ok(serialize_diagram(&load_diagram(file)?.forget())),
        Command::Components { file } => ok(format!("{}\n", load_diagram(file)?.component_count())),
        Command::Writhe { file } => ok(format!("{}\n", load_diagram(file)?.writhe())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, clean)) => {
            print!("{out}");
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(VIOLATIONS)
            }
        }
        Err(f) => {
            eprintln!("fvknot: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
