//! eulersym CLI entrypoint.
//!
//! Subcommands: `chars`, `euler`, `powersum`, `verify`, `padic`. Every
//! subcommand renders to text, JSON lines, or CSV; `verify` fans the sweep
//! out over worker threads and re-serializes in parameter order, so its
//! report stream is byte-identical regardless of `--jobs`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eulersym::dirichlet::{character, enumerate_characters};
use eulersym::euler::{alt_power_sum_row, euler_numbers};
use eulersym::fermionic::{convergence_trace, ValuationTrace};

use output::{CharRecord, EulerRecord, Format, PadicRecord, PowerSumRecord, Sink};
use verify::SweepConfig;

#[derive(Debug, Parser)]
#[command(name = "eulersym", version, about = "Exact generalized Euler polynomial tables and symmetry-identity verification")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweeps (default: one per CPU).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Restrict character sweeps to primitive characters.
    #[arg(long, global = true)]
    primitive_only: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the Dirichlet characters of an odd modulus.
    Chars {
        /// The (odd) modulus d.
        modulus: u64,
    },

    /// Print generalized Euler numbers E_{n,chi} for n <= max-n.
    Euler {
        /// The (odd) modulus d.
        #[arg(short = 'd', long)]
        modulus: u64,

        /// Character index in the deterministic enumeration.
        #[arg(long, default_value_t = 0)]
        index: usize,

        /// Largest degree to print.
        #[arg(short = 'n', long, default_value_t = 8)]
        max_n: usize,
    },

    /// Print alternating generalized power sums T_k(n,chi) for k <= max-k.
    Powersum {
        /// The (odd) modulus d.
        #[arg(short = 'd', long)]
        modulus: u64,

        /// Character index in the deterministic enumeration.
        #[arg(long, default_value_t = 0)]
        index: usize,

        /// Largest exponent k to print.
        #[arg(short = 'k', long, default_value_t = 6)]
        max_k: usize,

        /// Upper summation limit n.
        #[arg(short = 'n', long)]
        limit: u64,
    },

    /// Verify the symmetry identities over a parameter sweep.
    Verify {
        /// Theorems to verify, e.g. "1,2,5" or "1-8".
        #[arg(long, default_value = "1-8")]
        theorems: String,

        /// Odd moduli to sweep, e.g. "1,3,9".
        #[arg(long, default_value = "1,3")]
        moduli: String,

        /// Verify degrees n = 0..=max-n.
        #[arg(long, default_value_t = 4)]
        max_n: usize,

        /// Weight triples, e.g. "1,1,1;1,3,5".
        #[arg(long, default_value = "1,1,1;1,3,5")]
        weights: String,

        /// Restrict to these character indices (per modulus), e.g. "0,2".
        #[arg(long)]
        char_indices: Option<String>,

        /// Test hook: corrupt one expression to force a failure.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },

    /// Trace p-adic convergence of alternating partial sums to E_{n,chi}.
    Padic {
        /// The (odd) modulus d, coprime to the prime.
        #[arg(short = 'd', long)]
        modulus: u64,

        /// Character index; the character must be rational-valued.
        #[arg(long, default_value_t = 0)]
        index: usize,

        /// Exponent n of the summand chi(j) j^n.
        #[arg(short = 'n', long)]
        exponent: usize,

        /// The odd prime p.
        #[arg(short = 'p', long)]
        prime: u64,

        /// Number of levels N = 1..=levels.
        #[arg(long, default_value_t = 4)]
        levels: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = match Sink::open(cli.format, cli.out.as_deref()) {
        Ok(sink) => sink,
        Err(err) => {
            eprintln!("eulersym: {err}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Chars { modulus } => cmd_chars(modulus, cli.primitive_only, &mut sink),
        Command::Euler {
            modulus,
            index,
            max_n,
        } => cmd_euler(modulus, index, max_n, &mut sink),
        Command::Powersum {
            modulus,
            index,
            max_k,
            limit,
        } => cmd_powersum(modulus, index, max_k, limit, &mut sink),
        Command::Verify {
            theorems,
            moduli,
            max_n,
            weights,
            char_indices,
            inject_fault,
        } => {
            let config = match SweepConfig::parse(
                &theorems,
                &moduli,
                max_n,
                &weights,
                cli.primitive_only,
                char_indices.as_deref(),
                cli.jobs,
                inject_fault,
            ) {
                Ok(config) => config,
                Err(err) => {
                    eprintln!("eulersym: {err}");
                    return ExitCode::from(2);
                }
            };
            return match verify::run(&config, &mut sink) {
                Ok(all_passed) => {
                    if let Err(err) = sink.finish() {
                        eprintln!("eulersym: {err}");
                        return ExitCode::from(2);
                    }
                    if all_passed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(err) => {
                    eprintln!("eulersym: {err}");
                    ExitCode::from(2)
                }
            };
        }
        Command::Padic {
            modulus,
            index,
            exponent,
            prime,
            levels,
        } => cmd_padic(modulus, index, exponent, prime, levels, &mut sink),
    };
    match result.and_then(|()| sink.finish().map_err(|e| e.to_string())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("eulersym: {err}");
            ExitCode::from(2)
        }
    }
}

fn cmd_chars(modulus: u64, primitive_only: bool, sink: &mut Sink) -> Result<(), String> {
    let chars = enumerate_characters(modulus).map_err(|e| e.to_string())?;
    let records: Vec<CharRecord> = chars
        .iter()
        .filter(|chi| !primitive_only || chi.is_primitive())
        .map(|chi| CharRecord {
            d: modulus,
            index: chi.index(),
            order: chi.order(),
            conductor: chi.conductor(),
            primitive: chi.is_primitive(),
            values: (0..modulus as i64).map(|a| chi.value(a).to_string()).collect(),
        })
        .collect();
    sink.emit_chars(&records).map_err(|e| e.to_string())
}

fn cmd_euler(modulus: u64, index: usize, max_n: usize, sink: &mut Sink) -> Result<(), String> {
    let chi = character(modulus, index).map_err(|e| e.to_string())?;
    let table = euler_numbers(&chi, max_n);
    let records: Vec<EulerRecord> = (0..=max_n)
        .map(|n| EulerRecord {
            d: modulus,
            char_index: index,
            n,
            value: table.value(n).to_string(),
        })
        .collect();
    sink.emit_euler(&records).map_err(|e| e.to_string())
}

fn cmd_powersum(
    modulus: u64,
    index: usize,
    max_k: usize,
    limit: u64,
    sink: &mut Sink,
) -> Result<(), String> {
    let chi = character(modulus, index).map_err(|e| e.to_string())?;
    let row = alt_power_sum_row(&chi, max_k, limit);
    let records: Vec<PowerSumRecord> = row
        .iter()
        .enumerate()
        .map(|(k, value)| PowerSumRecord {
            d: modulus,
            char_index: index,
            k,
            limit,
            value: value.to_string(),
        })
        .collect();
    sink.emit_powersum(&records).map_err(|e| e.to_string())
}

fn cmd_padic(
    modulus: u64,
    index: usize,
    exponent: usize,
    prime: u64,
    levels: u32,
    sink: &mut Sink,
) -> Result<(), String> {
    let chi = character(modulus, index).map_err(|e| e.to_string())?;
    let trace = convergence_trace(&chi, exponent, prime, levels).map_err(|e| e.to_string())?;
    let records: Vec<PadicRecord> = trace
        .levels
        .iter()
        .map(|level| PadicRecord {
            d: modulus,
            char_index: index,
            exponent,
            prime,
            level: level.level,
            partial_sum: level.partial_sum.to_string(),
            euler_value: trace.euler_value.to_string(),
            valuation: level.valuation.to_string(),
            assumption: ValuationTrace::COPRIMALITY_NOTE,
        })
        .collect();
    sink.emit_padic(&records).map_err(|e| e.to_string())
}
