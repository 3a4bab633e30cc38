//! Command-line surface. [`run`] returns the process exit status:
//! 0 on success, 1 for usage errors, 2 for data errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bench::{run_workload, WorkloadSpec};
use crate::bitcore::BitString;
use crate::diagonal::{verify_antisurjection, PredicateCoding};
use crate::labelset::LabelledSet;
use crate::search::{alternating_enumeration, bisection_decide};
use crate::transfinite::Ordinal;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lset",
    version,
    about = "Labelled-set membership over fixed-width bitstrings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a serialized labelled set from a members file.
    Build {
        /// One bitstring per line; blank lines and `#` comments are ignored.
        members: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Universe width; required when the file lists no members.
        #[arg(long)]
        width: Option<usize>,
    },
    /// Decide membership of one bitstring by bisection and print the trace.
    Query { set: PathBuf, bits: String },
    /// Print the alternating enumeration as `<bits> <label>` lines.
    Enum {
        set: PathBuf,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Compare bisection with a linear scan on a seeded random workload.
    Bench {
        #[arg(long, default_value_t = 20)]
        width: usize,
        #[arg(long, default_value_t = 10_000)]
        queries: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Omit the timing section.
        #[arg(long)]
        counters_only: bool,
    },
    /// Print the diagonal witness table for a coding of the given width.
    Diag {
        width: usize,
        /// Use a seeded random coding instead of the canonical one.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Normalize an ordinal expression such as `w^2*3+w+4`.
    Ord { expr: String },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Data(String),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_set(path: &Path) -> Result<LabelledSet, CliError> {
    LabelledSet::from_bytes(&read_file(path)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Parses a members file: one bitstring per line, `#` starts a comment.
pub fn parse_members(text: &str, width: Option<usize>) -> Result<(usize, Vec<BitString>), String> {
    let mut members = Vec::new();
    let mut width = width;
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let bits: BitString = content
            .parse()
            .map_err(|e| format!("line {line_no}: {e}"))?;
        match width {
            Some(w) if w != bits.width() => {
                return Err(format!(
                    "line {line_no}: member {content} has width {}, expected {w}",
                    bits.width()
                ))
            }
            _ => width = Some(bits.width()),
        }
        members.push(bits);
    }
    let width = width.ok_or("no members listed; pass --width for an empty set")?;
    Ok((width, members))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Data(e.to_string());
    match command {
        Command::Build {
            members,
            output,
            width,
        } => {
            let text = String::from_utf8(read_file(&members)?)
                .map_err(|e| CliError::Data(format!("{}: {e}", members.display())))?;
            let (width, list) = parse_members(&text, width)
                .map_err(|e| CliError::Data(format!("{}: {e}", members.display())))?;
            let set = LabelledSet::build_from_members(width, &list)?;
            fs::write(&output, set.to_bytes()?)
                .map_err(|e| CliError::Data(format!("{}: {e}", output.display())))?;
            writeln!(
                out,
                "{}",
                json!({
                    "output": output.display().to_string(),
                    "width": width,
                    "member_count": set.member_count(),
                })
            )
            .map_err(io)?;
        }
        Command::Query { set, bits } => {
            let set = load_set(&set)?;
            let x: BitString = bits.parse()?;
            writeln!(out, "{}", bisection_decide(&set, &x)?.to_json()).map_err(io)?;
        }
        Command::Enum { set, limit } => {
            let set = load_set(&set)?;
            let limit = limit.unwrap_or(u64::MAX);
            for item in alternating_enumeration(&set)?.take(limit.try_into().unwrap_or(usize::MAX))
            {
                writeln!(out, "{} {}", item.point, u8::from(item.label)).map_err(io)?;
            }
        }
        Command::Bench {
            width,
            queries,
            seed,
            density,
            counters_only,
        } => {
            let report = run_workload(&WorkloadSpec {
                width,
                query_count: queries,
                seed,
                set_density: density,
            })?;
            let text = if counters_only {
                report.counters_json()
            } else {
                report.to_json()
            };
            writeln!(out, "{text}").map_err(io)?;
        }
        Command::Diag {
            width,
            random,
            seed,
        } => {
            let coding = if random {
                PredicateCoding::random(width, &mut ChaCha8Rng::seed_from_u64(seed))?
            } else {
                PredicateCoding::canonical(width)?
            };
            let witnesses = verify_antisurjection(&coding)?;
            let report = json!({
                "width": width,
                "coding": if random { "random" } else { "canonical" },
                "seed": random.then_some(seed),
                "verified": true,
                "witnesses": witnesses,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("json")
            )
            .map_err(io)?;
        }
        Command::Ord { expr } => {
            let value: Ordinal = expr.parse()?;
            writeln!(out, "{value}").map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}
