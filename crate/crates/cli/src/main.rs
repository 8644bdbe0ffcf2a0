//! `qho` — figure data and comparison sweeps for the harmonic-oscillator
//! density library.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric refusal
//! (unresolved oscillation or non-convergence), 1 anything else.

mod commands;
mod config;
mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qho::OscillatorParams;

use config::{parse_observable, parse_units, GridSpec, StateArgs, TimesSpec};
use table::{OutputFormat, Table};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(qho::Error),
    Internal(String),
}

impl From<qho::Error> for CliError {
    fn from(e: qho::Error) -> Self {
        if e.is_numeric_refusal() {
            CliError::Numeric(e)
        } else {
            match e {
                qho::Error::Domain { .. } | qho::Error::Contract { .. } => {
                    CliError::Config(e.to_string())
                }
                other => CliError::Internal(other.to_string()),
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(format!("io error: {e}"))
    }
}

#[derive(Parser)]
#[command(
    name = "qho",
    version,
    about = "Exact and large-n asymptotic densities of the quantum harmonic oscillator",
    after_help = "Output is a table with a metadata header; see the README for the schema."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Oscillator units as mass,omega,hbar
    #[arg(long, global = true, default_value = "1,1,1", value_parser = parse_units)]
    units: OscillatorParams,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutputFormat,

    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density-matrix components rhobar_{n,m}(x) on a grid
    Density {
        #[command(flatten)]
        common: CommonArgs,
        /// First quantum number
        #[arg(long)]
        n: u32,
        /// Second quantum numbers, comma separated (defaults to n)
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u32>>,
        /// Spatial grid lo:hi:count (default -1.2x_n:1.2x_n:2001)
        #[arg(long, value_parser = GridSpec::parse, allow_hyphen_values = true)]
        grid: Option<GridSpec>,
    },
    /// Asymptotic components rhobar_{n,n-v}(x) plus suppression summaries
    Asymptotic {
        #[command(flatten)]
        common: CommonArgs,
        /// Quantum number n
        #[arg(long)]
        n: u32,
        /// Offsets v = n - m, comma separated
        #[arg(long, value_delimiter = ',', default_value = "0")]
        v: Vec<u32>,
        /// Spatial grid lo:hi:count (default -1.2chi:1.2chi:2001)
        #[arg(long, value_parser = GridSpec::parse, allow_hyphen_values = true)]
        grid: Option<GridSpec>,
    },
    /// Classical-limit and Fourier-asymptotics error sweep over n
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// Levels to sweep, comma separated
        #[arg(long, value_delimiter = ',', default_value = "10,50,100,500,1000")]
        n: Vec<u32>,
        /// Offsets for the Fourier comparison
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        v: Vec<u32>,
        /// Averaging window size in local de Broglie wavelengths
        #[arg(long, default_value_t = 3.0)]
        k: f64,
        /// Override the quadrature node budget (may trigger refusals)
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Exact vs macroscopic density snapshots over time
    Evolve {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Time samples lo:hi:count (default one period, 9 samples)
        #[arg(long, value_parser = TimesSpec::parse, allow_hyphen_values = true)]
        times: Option<TimesSpec>,
        /// Spatial grid lo:hi:count
        #[arg(long, value_parser = GridSpec::parse, allow_hyphen_values = true)]
        grid: Option<GridSpec>,
        /// Interference cutoff (default 3x the support width)
        #[arg(long)]
        vmax: Option<u32>,
    },
    /// Exact vs asymptotic expectation-value time series
    Expect {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Observable: x, x2, or poly:c0,c1,...
        #[arg(long, value_parser = parse_observable)]
        obs: qho::PositionObservable,
        /// Time samples lo:hi:count (default two periods, 201 samples)
        #[arg(long, value_parser = TimesSpec::parse, allow_hyphen_values = true)]
        times: Option<TimesSpec>,
        /// Interference cutoff (default 3x the support width)
        #[arg(long)]
        vmax: Option<u32>,
        /// Override the quadrature node budget (may trigger refusals)
        #[arg(long)]
        nodes: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (table, common): (Table, &CommonArgs) = match &cli.command {
        Command::Density { common, n, m, grid } => {
            let m_list = m.clone().unwrap_or_else(|| vec![*n]);
            let mut table = commands::density(*n, &m_list, *grid, &common.units)?;
            annotate(&mut table, common);
            (table, common)
        }
        Command::Asymptotic { common, n, v, grid } => {
            let mut table = commands::asymptotic(*n, v, *grid, &common.units)?;
            annotate(&mut table, common);
            (table, common)
        }
        Command::Compare {
            common,
            n,
            v,
            k,
            nodes,
        } => {
            let mut table = commands::compare(n, v, *k, *nodes, &common.units)?;
            annotate(&mut table, common);
            (table, common)
        }
        Command::Evolve {
            common,
            state,
            times,
            grid,
            vmax,
        } => {
            let superposition = state.build()?;
            let mut table = commands::evolve(
                &superposition,
                &state.describe(),
                *times,
                *grid,
                *vmax,
                &common.units,
            )?;
            annotate(&mut table, common);
            (table, common)
        }
        Command::Expect {
            common,
            state,
            obs,
            times,
            vmax,
            nodes,
        } => {
            let superposition = state.build()?;
            let mut table = commands::expect(
                &superposition,
                &state.describe(),
                obs,
                *times,
                *vmax,
                *nodes,
                &common.units,
            )?;
            annotate(&mut table, common);
            (table, common)
        }
    };
    table.write_to(common.format, common.out.as_deref())?;
    Ok(())
}

fn annotate(table: &mut Table, common: &CommonArgs) {
    table.set(
        "units",
        format!(
            "{},{},{}",
            common.units.mass, common.units.omega, common.units.hbar
        ),
    );
    table.set(
        "format",
        match common.format {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        },
    );
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Numeric(e)) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
        Err(CliError::Internal(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}
