use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gstab::cli::{
    cmd_conjecture, cmd_cover, cmd_estimate, cmd_exact, cmd_gen, cmd_test, decision_exit_code,
    exit_code, parse_quantity, read_state, read_subgroup, ExactQuantity, GenSpec, TesterConfig,
    EXIT_OK,
};
use gstab::combinatorics::ConjectureConfig;
use gstab::sampling::{write_shot_records_csv, EstimatorConfig};
use gstab::stabilizer::CoveringMode;
use gstab::state::CharTable;
use gstab::Result;

#[derive(Parser)]
#[command(name = "gstab", version, about = "Gowers norms and stabilizer testing of quantum states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Stabilizer,
    Phase,
    Haar,
    Noisy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Mub,
    Paulis,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a state file.
    Gen {
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Phase-polynomial degree.
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Phase polynomial, e.g. "x1x2 + 2x3".
        #[arg(long)]
        poly: Option<String>,
        /// Infidelity of the noisy stabilizer state.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact gowers3, weylq, chartable or fidelity.
    Exact {
        state: PathBuf,
        #[arg(long, default_value = "gowers3")]
        quantity: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shot-based estimate of gowers3 or weylq.
    Estimate {
        state: PathBuf,
        #[arg(long, default_value = "gowers3")]
        quantity: String,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `csv` writes one row per shot instead of the summary.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tolerant stabilizer test; exits 0 on close and 3 on far.
    Test {
        state: PathBuf,
        #[arg(long)]
        eps1: f64,
        #[arg(long)]
        eps2: Option<f64>,
        #[arg(long, default_value_t = 6.0)]
        exponent: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stabilizer covering of a subgroup file.
    Cover {
        subgroup: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Mub)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for small-doubling sets with large nac(2S); writes CSV.
    Conjecture {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16.0)]
        k_max: f64,
        #[arg(long, default_value_t = 3.0)]
        exponent: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut w = sink(out)?;
    writeln!(w, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn load(path: &Path) -> Result<gstab::state::StateVector> {
    read_state(path)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gen { kind, n, seed, d, poly, eps, out } => {
            let spec = match kind {
                Kind::Stabilizer => GenSpec::Stabilizer { n, seed },
                Kind::Haar => GenSpec::Haar { n, seed },
                Kind::Noisy => GenSpec::Noisy { n, eps, seed },
                Kind::Phase => GenSpec::Phase {
                    n,
                    d,
                    poly: poly.ok_or_else(|| {
                        gstab::Error::InvalidConfig("phase states need --poly".into())
                    })?,
                },
            };
            emit_json(&out, &cmd_gen(&spec)?)?;
        }
        Cmd::Exact { state, quantity, format, out } => {
            let q: ExactQuantity = quantity.parse()?;
            let psi = load(&state)?;
            match (q, format) {
                (ExactQuantity::CharTable, Format::Csv) => {
                    CharTable::from_state(&psi)?.write_csv(sink(&out)?)?
                }
                _ => emit_json(&out, &cmd_exact(&psi, q)?)?,
            }
        }
        Cmd::Estimate { state, quantity, delta, shots, seed, format, out } => {
            let mut cfg = EstimatorConfig::new(delta, seed);
            cfg.shots = shots;
            let psi = load(&state)?;
            let want = matches!(format, Format::Csv);
            let (est, records) = cmd_estimate(&psi, parse_quantity(&quantity)?, &cfg, want)?;
            match records {
                Some(r) => write_shot_records_csv(sink(&out)?, &r)?,
                None => emit_json(&out, &est)?,
            }
        }
        Cmd::Test { state, eps1, eps2, exponent, delta, shots, seed, out } => {
            let cfg = TesterConfig {
                eps1,
                eps2,
                exponent_c: exponent,
                delta,
                shots,
                seed,
            };
            let verdict = cmd_test(&load(&state)?, &cfg)?;
            emit_json(&out, &verdict)?;
            return Ok(decision_exit_code(verdict.decision));
        }
        Cmd::Cover { subgroup, mode, out } => {
            let mode = match mode {
                Mode::Mub => CoveringMode::Mub,
                Mode::Paulis => CoveringMode::Paulis,
            };
            emit_json(&out, &cmd_cover(&read_subgroup(&subgroup)?, mode)?)?;
        }
        Cmd::Conjecture { n, trials, seed, k_max, exponent, out } => {
            let mut cfg = ConjectureConfig::new(n, trials, seed);
            cfg.k_max = k_max;
            cfg.exponent = exponent;
            let report = cmd_conjecture(&cfg)?;
            report.write_csv(sink(&out)?)?;
            eprintln!(
                "{} of {} trials flagged against (K nac(S))^{} (reference polynomial, not a proven bound)",
                report.flagged(),
                trials,
                exponent
            );
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("gstab: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
