//! Command-line front end.
//!
//! Exit codes: `0` success, `2` unparseable input, `3` unphysical or
//! malformed state, `4` wrong rank for `kw-check`, `1` anything else.

pub mod batch;
pub mod input;
pub mod output;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::discord::{
    discord_with, f_derivative, f_second_derivative, f_value, region_memberships, FContext, Mode,
};
use crate::entanglement::koashi_winter;
use crate::error::Error;
use crate::oracle::{oracle_classical_correlation, DEFAULT_GRID, MIN_GRID};
use input::{parse_bloch, read_state, InputError, ResolvedState, StateInput};
use output::{sig, DiscordRecord, KwRecord, OracleRecord};

#[derive(Debug, Parser)]
#[command(
    name = "xdiscord",
    version,
    about = "Quantum discord of two-qubit X-states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discord, classical correlation and mutual information of one state.
    Discord {
        #[command(flatten)]
        state: StateArgs,
        /// Also run the brute-force measurement search and report the disagreement.
        #[arg(long)]
        verify: bool,
        /// Grid size of the measurement search.
        #[arg(long, default_value_t = DEFAULT_GRID, value_parser = grid_parser)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate F, F′ and F″ on a uniform grid of [0, 1] as CSV.
    Scan {
        #[command(flatten)]
        state: StateArgs,
        /// Number of samples, endpoints included.
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Discord statistics over seeded random physical states.
    Random {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check the first N states against the measurement search.
        #[arg(long, default_value_t = 0)]
        verify_sample: usize,
        #[arg(long, default_value_t = DEFAULT_GRID, value_parser = grid_parser)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Koashi–Winter check for a rank-two state.
    KwCheck {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form region of a state.
    Classify {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// State file: five Bloch parameters, a JSON record or a 4×4 matrix.
    #[arg(long, conflicts_with = "bloch")]
    pub input: Option<PathBuf>,
    /// Bloch parameters "r s c1 c2 c3".
    #[arg(long, allow_hyphen_values = true)]
    pub bloch: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Significant digits in text output.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=15))]
    pub precision: u8,
}

fn grid_parser(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < MIN_GRID {
        return Err(format!("grid must be at least {MIN_GRID}"));
    }
    Ok(n)
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let code = match &e {
            InputError::Io { .. } | InputError::Parse(_) | InputError::Missing => 2,
            InputError::State(s) => state_code(s),
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: state_code(&e),
            message: e.to_string(),
        }
    }
}

fn state_code(e: &Error) -> i32 {
    match e {
        Error::NonFinite(_) => 2,
        Error::Unphysical { .. }
        | Error::NotXState { .. }
        | Error::NotHermitian { .. }
        | Error::TraceNotUnit(_)
        | Error::NotPositive(_) => 3,
        Error::Rank { .. } => 4,
        _ => 1,
    }
}

fn resolve(args: &StateArgs) -> Result<ResolvedState, Failure> {
    let input: StateInput = match (&args.input, &args.bloch) {
        (Some(path), _) => read_state(path)?,
        (None, Some(text)) => parse_bloch(text)?,
        (None, None) => return Err(InputError::Missing.into()),
    };
    Ok(input.resolve()?)
}

fn render<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("records serialize");
            s.push('\n');
            s
        }
    }
}

#[derive(Serialize)]
struct ScanRow {
    z: f64,
    f: f64,
    df: f64,
    d2f: Option<f64>,
}

#[derive(Serialize)]
struct ClassifyRecord {
    bloch: [f64; 5],
    region: &'static str,
    memberships: [bool; 4],
}

/// Runs the parsed command and returns the text to print on success.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Discord {
            state,
            verify,
            grid,
            out,
        } => {
            let st = resolve(state)?;
            let mode = if *verify {
                Mode::Verification
            } else {
                Mode::Production
            };
            let r = discord_with(&st.bloch, mode);
            let oracle = if *verify {
                let o = oracle_classical_correlation(&st.bloch, *grid)?;
                Some(OracleRecord::new(&o, *grid, r.classical_correlation))
            } else {
                None
            };
            let rec = DiscordRecord::new(&r, st.phases.as_ref(), oracle);
            Ok(render(&rec, out.format, || {
                rec.to_text(out.precision as usize)
            }))
        }
        Command::Scan { state, n, out } => {
            let st = resolve(state)?;
            let ctx = FContext::new(st.bloch);
            let last = (*n - 1) as f64;
            let rows: Vec<ScanRow> = (0..*n)
                .map(|i| {
                    let z = i as f64 / last;
                    ScanRow {
                        z,
                        f: f_value(&ctx, z),
                        df: f_derivative(&ctx, z),
                        d2f: f_second_derivative(&ctx, z).ok(),
                    }
                })
                .collect();
            let k = out.precision as usize;
            Ok(render(&rows, out.format, || {
                let mut s = String::from("z,F,dF,d2F\n");
                for r in &rows {
                    let d2 = r.d2f.map_or("nan".to_string(), |v| sig(v, k));
                    let _ = writeln!(s, "{},{},{},{}", sig(r.z, k), sig(r.f, k), sig(r.df, k), d2);
                }
                s
            }))
        }
        Command::Random {
            count,
            seed,
            verify_sample,
            grid,
            out,
        } => {
            let report = batch::run_batch(*count as usize, *seed, *verify_sample, *grid)?;
            Ok(render(&report, out.format, || {
                report.to_text(out.precision as usize)
            }))
        }
        Command::KwCheck { state, out } => {
            let st = resolve(state)?;
            let rec = KwRecord::from(&koashi_winter(&st.matrix)?);
            Ok(render(&rec, out.format, || {
                rec.to_text(out.precision as usize)
            }))
        }
        Command::Classify { state, out } => {
            let st = resolve(state)?;
            let ctx = FContext::new(st.bloch);
            let rec = ClassifyRecord {
                bloch: st.bloch.to_array(),
                region: crate::discord::classify_region(&ctx).name(),
                memberships: region_memberships(&ctx),
            };
            Ok(render(&rec, out.format, || {
                let hits: Vec<&str> = ["CaseA", "CaseB", "CaseC", "CaseD"]
                    .into_iter()
                    .zip(rec.memberships)
                    .filter_map(|(n, h)| h.then_some(n))
                    .collect();
                format!(
                    "region                {}\nsatisfied             {}\n",
                    rec.region,
                    if hits.is_empty() {
                        "none".into()
                    } else {
                        hits.join(" ")
                    }
                )
            }))
        }
    }
}
