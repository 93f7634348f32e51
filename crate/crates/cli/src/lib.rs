//! Command-line front end: reads JSON problem, datum and Galois files, runs
//! the core pipelines and prints deterministic JSON on standard output.
//!
//! Exit codes: 0 on success, 2 on malformed input, 3 when a datum fails the
//! sum condition or the prime scan contradicts an exact decider.

pub mod formats;
pub mod oracle;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use hasse_core::galois;
use hasse_core::hasse::{independence_group, obstruction_group, validate_datum};
use hasse_core::{decide, Error, EtaleProblem, Existence, InvValue, LocalDatum, ObstructionGroup};

use formats::{DatumFile, GaloisFile, PlaceSpec, ProblemFile};
use oracle::{oracle_scan, ScanError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Printed with every verdict.
pub const CONDITIONAL_NOTE: &str =
    "assumes an oriented embedding exists at every place and that the datum comes from such local embeddings";

#[derive(Parser, Debug)]
#[command(
    name = "hasse",
    version,
    about = "Local-global obstructions for étale algebras with involution over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Obstruction group from the relation V_i ∩ V_j ≠ ∅
    Obstruction { problem: PathBuf },
    /// Group from the field-independence relation
    Indep { problem: PathBuf },
    /// Values of ρ on the basis of the obstruction group
    Rho { problem: PathBuf, datum: PathBuf },
    /// Embedding verdict, optionally using a local datum
    Decide { problem: PathBuf, datum: Option<PathBuf> },
    /// Partition computed from abstract Galois data (unramified places only)
    Galois { file: PathBuf },
    /// Prime scan cross-checking the exact deciders
    Oracle {
        problem: PathBuf,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Serialize)]
struct GroupJson {
    partition: Vec<Vec<usize>>,
    dimension: usize,
    basis: Vec<Vec<u8>>,
}

impl From<&ObstructionGroup> for GroupJson {
    fn from(g: &ObstructionGroup) -> Self {
        GroupJson {
            partition: g.partition.classes().to_vec(),
            dimension: g.dimension,
            basis: g
                .basis
                .iter()
                .map(|c| c.values.iter().map(|&b| b as u8).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct RhoJson {
    #[serde(flatten)]
    group: GroupJson,
    rho: Vec<String>,
}

#[derive(Serialize)]
struct VerdictJson {
    exists: &'static str,
    group: GroupJson,
    indep_group: GroupJson,
    rho_on_basis: Option<Vec<String>>,
    witness: Option<Vec<u8>>,
    note: &'static str,
}

#[derive(Serialize)]
struct GaloisJson {
    #[serde(flatten)]
    group: GroupJson,
    generic_pairs: Vec<[usize; 2]>,
    independent_pairs: Vec<[usize; 2]>,
    /// Ramified places are invisible to Galois data, so a split class only
    /// means the intersection is generically empty.
    generically_empty_only: bool,
}

#[derive(Serialize)]
struct ViolationJson {
    error: &'static str,
    total: String,
    places: Vec<PlaceSpec>,
}

enum Failure {
    Malformed(String),
    Violation(String, Option<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation(report) => {
                let body = ViolationJson {
                    error: "validity violation",
                    total: report.total.to_string(),
                    places: report.places.iter().map(|&v| PlaceSpec(v)).collect(),
                };
                Failure::Violation(format!("validity violation: {report}"), Some(to_json(&body)))
            }
            other => Failure::Malformed(other.to_string()),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<EtaleProblem, Failure> {
    Ok(read_json::<ProblemFile>(path)?.to_problem()?)
}

fn load_datum(path: &Path) -> Result<LocalDatum, Failure> {
    Ok(read_json::<DatumFile>(path)?.to_datum()?)
}

fn inv_strings(values: &[InvValue]) -> Vec<String> {
    values.iter().map(|x| x.to_string()).collect()
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Obstruction { problem } => {
            let p = load_problem(&problem)?;
            Ok(to_json(&GroupJson::from(&obstruction_group(&p)?)))
        }
        Command::Indep { problem } => {
            let p = load_problem(&problem)?;
            Ok(to_json(&GroupJson::from(&independence_group(&p)?)))
        }
        Command::Rho { problem, datum } => {
            let p = load_problem(&problem)?;
            let a = load_datum(&datum)?;
            let group = obstruction_group(&p)?;
            let inv = validate_datum(&p, &a)?;
            let values: Vec<InvValue> = group.basis.iter().map(|c| inv.pair_with(c)).collect();
            Ok(to_json(&RhoJson {
                group: GroupJson::from(&group),
                rho: inv_strings(&values),
            }))
        }
        Command::Decide { problem, datum } => {
            let p = load_problem(&problem)?;
            let a = datum.as_deref().map(load_datum).transpose()?;
            let v = decide(&p, a.as_ref())?;
            let exists = match v.exists {
                Existence::Yes => "yes",
                Existence::No => "no",
                Existence::Unknown => "unknown",
            };
            Ok(to_json(&VerdictJson {
                exists,
                group: GroupJson::from(&v.group),
                indep_group: GroupJson::from(&v.indep_group),
                rho_on_basis: v.rho_on_basis.as_deref().map(inv_strings),
                witness: v.witness.map(|c| c.values.iter().map(|&b| b as u8).collect()),
                note: CONDITIONAL_NOTE,
            }))
        }
        Command::Galois { file } => {
            let datum = read_json::<GaloisFile>(&file)?.to_datum()?;
            let n = datum.len();
            let mut generic_pairs = Vec::new();
            let mut independent_pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if galois::generic_intersection_nonempty(&datum, i, j)? {
                        generic_pairs.push([i, j]);
                    }
                    if galois::independent(&datum, i, j)? {
                        independent_pairs.push([i, j]);
                    }
                }
            }
            let group = hasse_core::obstruction::group_of(&galois::obstruction_partition(&datum)?);
            Ok(to_json(&GaloisJson {
                group: GroupJson::from(&group),
                generic_pairs,
                independent_pairs,
                generically_empty_only: true,
            }))
        }
        Command::Oracle { problem, bound } => {
            let p = load_problem(&problem)?;
            match oracle_scan(&p, bound) {
                Ok(report) => Ok(to_json(&report)),
                Err(ScanError::Engine(e)) => Err(e.into()),
                Err(ScanError::Disagreement(d)) => Err(Failure::Violation(d.to_string(), None)),
            }
        }
    }
}

/// Runs one command line (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(json) => {
            let _ = writeln!(out, "{json}");
            EXIT_OK
        }
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MALFORMED
        }
        Err(Failure::Violation(msg, body)) => {
            if let Some(body) = body {
                let _ = writeln!(out, "{body}");
            }
            let _ = writeln!(err, "error: {msg}");
            EXIT_VIOLATION
        }
    }
}
