//! `cantorkit`: batch front end for the cantorkit constructions.
//!
//! Exit codes: 0 on success, 1 when an input breaks a contract (the error
//! name leads the message on standard error), 2 on malformed input.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cantorkit_core::bitspace::{BitString, BitspaceError, ClosedSet, DepthCap, OpenSet};
use cantorkit_core::domination::{
    dominates_on, running_time, witness_from_class, DominationError, SearchOutcome, StabilitySearch,
};
use cantorkit_core::formats::{self, FormatError};
use cantorkit_core::kc::{self, KcError};
use cantorkit_core::machine::{icm_to_machine, HaltingTimeline, MachineError};
use cantorkit_core::mltest::{
    amplification_exponent, amplified_test, convert_test, extract_cover, iterate_extract,
    tail_search, MlTestError,
};
use cantorkit_core::{Dyadic, UniversalMachine};
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "cantorkit",
    version,
    about = "Exact finite-depth constructions on Cantor space"
)]
struct Cli {
    /// Longest word any set may contain.
    #[arg(long, global = true, env = "CANTORKIT_DEPTH_CAP", default_value_t = 64)]
    depth_cap: usize,
    /// Step budget for machine runs and running times.
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: u64,
    /// Largest stage any stage search may reach.
    #[arg(long, global = true, default_value_t = 1_000)]
    stage_bound: u64,
    /// Threads for per-branch evaluation in `witness` and `dominate`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact measure of the open set generated by a code-set file.
    SetMeasure { set: PathBuf },
    /// Product `A × B`: all concatenations `στ`, with its measure.
    SetProduct { a: PathBuf, b: PathBuf },
    /// `n`-fold product of a code set with itself.
    SetPower { set: PathBuf, n: u32 },
    /// Localization `U|σ`: the `τ` with `[στ] ⊆ U`.
    SetLocalize { set: PathBuf, sigma: String },
    /// Kraft-Chaitin machine from a request file (`n σ` lines).
    KcBuild { requests: PathBuf },
    /// Machine from an information content measure (`σ k` lines).
    IcmBuild { icm: PathBuf },
    /// Time-bounded prefix-free complexity on the catalog machine.
    KApprox {
        word: String,
        #[arg(long, default_value = "@")]
        oracle: String,
        /// Machine tables to register after the built-in slots, in order.
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
    /// Stage approximation of the universal test level `S_n`.
    STest {
        #[arg(allow_negative_numbers = true)]
        level: i64,
        #[arg(long)]
        stage: u64,
        #[arg(long, default_value = "@")]
        oracle: String,
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
    /// Programs in the halting-set approximation at a stage.
    HaltingDump {
        #[arg(long)]
        stage: u64,
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
    /// Amplified test from a closed set of positive measure (file lists the
    /// complement), or the bare exponent with `--bound`.
    Amplify {
        closed: Option<PathBuf>,
        #[arg(long)]
        max_level: u32,
        /// Lower bound on the measure; prints the exponent for `--max-level`.
        #[arg(long, conflicts_with = "closed")]
        bound: Option<Dyadic>,
    },
    /// Embed a test into the universal test through a registered
    /// Kraft-Chaitin table.
    ConvertTest {
        test: PathBuf,
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
    /// Open cover of measure below 1 for `P` from `P^n ⊆ U`.
    Extract {
        p: PathBuf,
        u: PathBuf,
        #[arg(long, default_value_t = 2)]
        power: u32,
    },
    /// Least shift of `x` whose cylinder lies in a closed set (file lists
    /// the complement).
    Tail { closed: PathBuf, x: String },
    /// Running time `ϕ^X(n)` of a table functional.
    Phi {
        functional: PathBuf,
        oracle: String,
        n: u64,
    },
    /// Witness `f(n) = 1 + max ϕ^X(n)` over the branches of a closed class.
    Witness {
        functional: PathBuf,
        closed: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        max_input: u64,
    },
    /// Whether a witness strictly dominates the running time on a class.
    Dominate {
        functional: PathBuf,
        witness: PathBuf,
        closed: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Least stage `t ≥ s` at which `X↾n` stops looking described by `σ`.
    Xi {
        oracle: String,
        n: usize,
        sigma: String,
        s: u64,
        #[arg(long, default_value_t = 0)]
        constant: usize,
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Contract(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Contract(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        if e.is_malformed() {
            CliError::Malformed(e.to_string())
        } else {
            CliError::Contract(e.to_string())
        }
    }
}

impl From<BitspaceError> for CliError {
    fn from(e: BitspaceError) -> Self {
        FormatError::from(e).into()
    }
}

macro_rules! contract {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Contract(e.to_string())
            }
        }
    )*};
}

contract!(KcError, MachineError, MlTestError, DominationError);

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn bits(s: &str) -> Result<BitString, CliError> {
    s.parse::<BitString>()
        .map_err(|e| CliError::Malformed(e.to_string()))
}

fn open_file(path: &Path, cap: DepthCap) -> Result<OpenSet, CliError> {
    Ok(formats::parse_open_set(&read(path)?, cap)?)
}

fn closed_file(path: &Path, cap: DepthCap) -> Result<ClosedSet, CliError> {
    Ok(ClosedSet::from_complement(open_file(path, cap)?))
}

/// Standard catalog plus the given tables, registered in order.
fn machine(tables: &[PathBuf], cap: DepthCap) -> Result<UniversalMachine, CliError> {
    let mut m = UniversalMachine::standard();
    for path in tables {
        let table = formats::parse_machine_table(&read(path)?, cap)?;
        m = m.register(table)?.0;
    }
    Ok(m)
}

fn with_measure(set: &OpenSet) -> String {
    format!("{set}# measure {}\n", set.measure())
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cap = DepthCap(cli.depth_cap);
    let mut out = String::new();
    match &cli.command {
        Command::SetMeasure { set } => {
            let u = open_file(set, cap)?;
            writeln!(out, "measure {}", u.measure()).unwrap();
        }
        Command::SetProduct { a, b } => {
            let p = open_file(a, cap)?.product(&open_file(b, cap)?, cap)?;
            out = with_measure(&p);
        }
        Command::SetPower { set, n } => {
            out = with_measure(&open_file(set, cap)?.power(*n, cap)?);
        }
        Command::SetLocalize { set, sigma } => {
            out = with_measure(&open_file(set, cap)?.localize(&bits(sigma)?));
        }
        Command::KcBuild { requests } => {
            let reqs = formats::parse_requests(&read(requests)?)?;
            let built = kc::build(&reqs, cap)?;
            write!(out, "{}", built.to_machine()).unwrap();
            writeln!(out, "# weight {} <= 1", built.spent_weight()).unwrap();
        }
        Command::IcmBuild { icm } => {
            let icm = formats::parse_icm(&read(icm)?)?;
            write!(out, "{}", icm_to_machine(&icm, cap)?).unwrap();
            writeln!(out, "# weight {} <= 1", icm.weight()).unwrap();
        }
        Command::KApprox {
            word,
            oracle,
            tables,
        } => {
            let m = machine(tables, cap)?;
            let w = bits(word)?;
            match m.bounded_complexity(&w, cli.budget, &bits(oracle)?) {
                Some(k) => writeln!(out, "k {w} {k}").unwrap(),
                None => writeln!(out, "k {w} inf").unwrap(),
            }
        }
        Command::STest {
            level,
            stage,
            oracle,
            tables,
        } => {
            let m = machine(tables, cap)?;
            let s = m.universal_test_level(*level, *stage, &bits(oracle)?, cap)?;
            out = with_measure(&s);
        }
        Command::HaltingDump { stage, tables } => {
            let m = machine(tables, cap)?;
            write!(out, "{}", HaltingTimeline::new(&m, *stage).dump(*stage)).unwrap();
        }
        Command::Amplify {
            closed,
            max_level,
            bound,
        } => match (closed, bound) {
            (_, Some(q)) => {
                writeln!(out, "exponent {}", amplification_exponent(q, *max_level)?).unwrap();
            }
            (Some(path), None) => {
                let q = closed_file(path, cap)?;
                let test = amplified_test(&q, *max_level, cap)?;
                let mu = q.measure();
                writeln!(out, "# closed measure {mu}").unwrap();
                for k in 0..=*max_level {
                    writeln!(
                        out,
                        "# level {k} exponent {}",
                        amplification_exponent(&mu, k)?
                    )
                    .unwrap();
                }
                write!(out, "{test}").unwrap();
            }
            (None, None) => {
                return Err(CliError::Malformed(
                    "amplify needs a file or --bound".into(),
                ))
            }
        },
        Command::ConvertTest { test, tables } => {
            let t = formats::parse_test(&read(test)?, cap)?;
            let m = machine(tables, cap)?;
            let conv = convert_test(&t, &m, &[], cli.stage_bound, cap)?;
            write!(out, "{conv}").unwrap();
        }
        Command::Extract { p, u, power } => {
            let p = open_file(p, cap)?;
            let u = open_file(u, cap)?;
            if *power == 2 {
                write!(out, "{}", extract_cover(&p, &u, cap)?).unwrap();
            } else {
                write!(out, "{}", iterate_extract(&p, &u, *power, cap)?).unwrap();
            }
        }
        Command::Tail { closed, x } => {
            let q = closed_file(closed, cap)?;
            match tail_search(&q, &bits(x)?) {
                Some(n) => writeln!(out, "offset {n}").unwrap(),
                None => writeln!(out, "not found").unwrap(),
            }
        }
        Command::Phi {
            functional,
            oracle,
            n,
        } => {
            let f = formats::parse_table_functional(&read(functional)?)?;
            let x = bits(oracle)?;
            writeln!(out, "phi {x} {n} {}", running_time(&f, &x, *n, cli.budget)).unwrap();
        }
        Command::Witness {
            functional,
            closed,
            depth,
            max_input,
        } => {
            let f = formats::parse_table_functional(&read(functional)?)?;
            let class = closed_file(closed, cap)?;
            let w = witness_from_class(&f, &class, *depth, *max_input, cli.budget, cap, cli.jobs)?;
            write!(out, "{w}").unwrap();
        }
        Command::Dominate {
            functional,
            witness,
            closed,
            depth,
        } => {
            let f = formats::parse_table_functional(&read(functional)?)?;
            let w = formats::parse_witness(&read(witness)?)?;
            let class = closed_file(closed, cap)?;
            let d = dominates_on(&f, &w, &class, *depth, cli.budget, cap, cli.jobs)?;
            write!(out, "{d}").unwrap();
        }
        Command::Xi {
            oracle,
            n,
            sigma,
            s,
            constant,
            tables,
        } => {
            let m = machine(tables, cap)?;
            let search = StabilitySearch::new(m, *constant, cli.stage_bound);
            match search.search(&bits(oracle)?, *n, &bits(sigma)?, *s) {
                SearchOutcome::Stage(t) => writeln!(out, "stage {t}").unwrap(),
                SearchOutcome::Undetermined => {
                    writeln!(out, "undetermined through stage {}", cli.stage_bound).unwrap()
                }
                SearchOutcome::OracleTooShort { position } => {
                    return Err(CliError::Contract(format!(
                        "OracleTooShort: the oracle ends before position {position}"
                    )))
                }
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let verb = matches.subcommand_name().unwrap_or_default().to_string();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = run(&cli).and_then(|text| {
        match &cli.output {
            Some(path) => fs::write(path, text),
            None => io::stdout().write_all(text.as_bytes()),
        }
        .map_err(|e| CliError::Contract(format!("IoError: {e}")))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cantorkit {verb}: {e}");
            ExitCode::from(e.code())
        }
    }
}
