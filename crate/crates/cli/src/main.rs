//! `k1`: command-line front end for the k1-core library.
//!
//! Structured results go to stdout (or `--out`) as JSON or a single value;
//! human summaries go to stderr. Exit codes: 0 success, 1 negative answer,
//! 2 malformed input, 3 unsupported ring or level.

mod input;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use k1_core::colimit::chain_discrepancy_witness;
use k1_core::matrix::{sample_gl, seeded_rng};
use k1_core::{
    class_of_matrix, commutation_witness, elem, elementary_witness, general_embedding_witness,
    sl_factor, truncated_coequalizer, verify_witness, Error, InvertibleMatrix, RingDescriptor,
    Verdict, Witness,
};
use log::info;

/// Seed used by every randomized subcommand unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(
    name = "k1",
    version,
    about = "Exact K1 computations, stabilization certificates and their verifier"
)]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the K1 class (determinant unit) of an invertible matrix.
    K1 {
        #[arg(long)]
        ring: Option<RingDescriptor>,
        #[arg(long)]
        matrix: PathBuf,
        /// Print the class as JSON instead of the bare unit.
        #[arg(long)]
        json: bool,
    },
    /// Factor a determinant-1 matrix into elementary matrices, or print `No`.
    Factor {
        #[arg(long)]
        ring: Option<RingDescriptor>,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Build a relator-product witness.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Check a witness file; exit 1 names the failing term.
    Verify {
        #[arg(long)]
        witness: PathBuf,
    },
    /// Order of GL(level, Z/m) modulo the normal closure of its stabilization relators.
    Coeq {
        #[arg(long)]
        ring: RingDescriptor,
        #[arg(long)]
        level: usize,
    },
    /// Run the randomized invariant suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Samples per ring and check.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// i_last(X) commutes with i_first(Y) modulo relators: target [L(X), L(Y)].
    Commutation {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long)]
        y: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The stabilized elementary matrix e_pq(r) lies in the relator closure.
    Elementary {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// i_j(X) and i_last(X) agree modulo relators.
    Embedding {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First and last stabilizations of Y agree modulo relators.
    Chain {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Ring and size for randomly generated inputs; the ring also types bare row arrays.
#[derive(Args)]
struct Source {
    #[arg(long)]
    ring: Option<RingDescriptor>,
    #[arg(long, default_value_t = 3)]
    level: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug)]
pub enum Failure {
    Negative(String),
    Malformed(String),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::LevelTooSmall { .. } => {
                Failure::Unsupported(e.to_string())
            }
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Malformed(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Negative(msg) => println!("{msg}"),
                Failure::Malformed(msg) | Failure::Unsupported(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::K1 { ring, matrix, json } => {
            let x = input::read_invertible(&matrix, ring)?;
            let class = class_of_matrix(&x)?;
            if json {
                println!("{}", to_json(&class));
            } else {
                println!("{}", class.unit());
            }
            Ok(())
        }
        Command::Factor { ring, matrix } => {
            let a = input::read_invertible(&matrix, ring)?;
            match sl_factor(&a) {
                Ok(f) => {
                    eprintln!("{} elementary factors", f.len());
                    println!("{}", to_json(&f));
                    Ok(())
                }
                Err(Error::NotSpecialLinear(det)) => {
                    eprintln!("determinant {det} is not 1");
                    Err(Failure::Negative("No".into()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Witness { kind } => witness(kind),
        Command::Verify { witness } => {
            let w = input::read_witness(&witness)?;
            match verify_witness(&w)? {
                Verdict::Verified => {
                    eprintln!("{} terms at level {}", w.len(), w.level());
                    println!("verified");
                    Ok(())
                }
                Verdict::Failed {
                    failing_term: Some(i),
                } => Err(Failure::Negative(format!("failed at term {i}"))),
                Verdict::Failed { failing_term: None } => Err(Failure::Negative("failed".into())),
            }
        }
        Command::Coeq { ring, level } => {
            let report = truncated_coequalizer(ring, level)?;
            eprintln!(
                "|GL({level}, {ring})| = {}, normal closure of relators has order {}",
                report.group_order, report.closure_order
            );
            println!("{}", report.quotient_order);
            Ok(())
        }
        Command::Selftest { seed, count } => selftest::run(seed, count),
    }
}

fn witness(kind: WitnessKind) -> Result<(), Failure> {
    let (w, out) = match kind {
        WitnessKind::Commutation { source, x, y, out } => {
            let mut draw = sampler(&source);
            let x = operand(&source, x.as_deref(), &mut draw)?;
            let y = operand(&source, y.as_deref(), &mut draw)?;
            (commutation_witness(&x, &y)?, out)
        }
        WitnessKind::Elementary {
            source,
            p,
            q,
            r,
            out,
        } => {
            let ring = require_ring(&source)?;
            let r: k1_core::BigInt = r
                .parse()
                .map_err(|_| Failure::Malformed(format!("bad entry --r {r:?}")))?;
            (
                elementary_witness(&elem(ring, source.level, p, q, r)?)?,
                out,
            )
        }
        WitnessKind::Embedding {
            source,
            matrix,
            j,
            out,
        } => {
            let x = operand(&source, matrix.as_deref(), &mut sampler(&source))?;
            (general_embedding_witness(&x, j)?, out)
        }
        WitnessKind::Chain {
            source,
            matrix,
            out,
        } => {
            let y = operand(&source, matrix.as_deref(), &mut sampler(&source))?;
            (chain_discrepancy_witness(&y)?, out)
        }
    };
    info!("witness with {} terms at level {}", w.len(), w.level());
    emit(&w, out.as_deref())
}

/// Draws seeded random matrices of the requested ring and level; the ring is
/// checked lazily so file-only invocations need no `--ring`.
fn sampler(source: &Source) -> impl FnMut() -> Result<InvertibleMatrix, Failure> {
    let (ring, level) = (source.ring, source.level);
    let mut rng = seeded_rng(source.seed);
    move || {
        let ring = ring.ok_or_else(missing_ring)?;
        Ok(sample_gl(ring, level, &mut rng))
    }
}

/// A matrix from `path`, or the next random one.
fn operand(
    source: &Source,
    path: Option<&Path>,
    draw: &mut impl FnMut() -> Result<InvertibleMatrix, Failure>,
) -> Result<InvertibleMatrix, Failure> {
    match path {
        Some(path) => input::read_invertible(path, source.ring),
        None => draw(),
    }
}

fn require_ring(source: &Source) -> Result<RingDescriptor, Failure> {
    source.ring.ok_or_else(missing_ring)
}

fn missing_ring() -> Failure {
    Failure::Malformed("--ring is required when no matrix file is given".into())
}

fn emit(w: &Witness, out: Option<&Path>) -> Result<(), Failure> {
    let text = to_json(w);
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n"))
                .map_err(|e| Failure::Malformed(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {} terms to {}", w.len(), path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("library types serialize infallibly")
}
