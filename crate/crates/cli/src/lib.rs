//! Command-line front end: table reproductions and claim-by-claim reports.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{ClaimStatus, ReportDocument, Status, Table};

#[derive(Debug, Parser)]
#[command(name = "torsion-sieve", version, about = "Reproduce the sieve, gonality and class-number computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Read LMFDB fixtures only; never touch the network.
    #[arg(long, global = true)]
    pub offline: bool,
    /// Fixture directory for LMFDB queries.
    #[arg(long, global = true, env = "TORSION_SIEVE_FIXTURES")]
    pub fixtures: Option<PathBuf>,
    /// Largest field size enumerated exhaustively.
    #[arg(long, global = true, default_value_t = torsion_sieve::curves::DEFAULT_ENUM_BOUND)]
    pub enum_bound: u64,
    /// Emit canonical JSON.
    #[arg(long, global = true, conflicts_with = "markdown")]
    pub json: bool,
    /// Emit markdown tables (the default).
    #[arg(long, global = true)]
    pub markdown: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Global {
    pub fn fixture_dir(&self) -> PathBuf {
        self.fixtures.clone().unwrap_or_else(torsion_sieve_lmfdb::default_fixture_dir)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Does some E over F_{p^d} contain Z/m x Z/n?
    TorsionExists {
        #[arg(short)]
        m: u64,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        d: u32,
    },
    /// Emptiness of Y1(m,n)(F_{p^d}) for d = 1..4.
    ReductionReport {
        #[arg(short)]
        m: u64,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        p: u64,
    },
    /// T_q on sampled points of Y1(m,n)(F_{p^k}).
    Hecke {
        #[arg(short, default_value_t = 1)]
        m: u64,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        k: u32,
        #[arg(short)]
        q: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Galois orbits of cusps, with residue degrees at p when given.
    Cusps {
        #[arg(short, default_value_t = 1)]
        m: u64,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        p: Option<u64>,
    },
    /// Splitting condition on q for the cusps meeting a cuspidal part of degree 1 or 2.
    Cc {
        #[arg(short, default_value_t = 1)]
        m: u64,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        p: u64,
        /// Degrees of the cuspidal part; defaults to the sieve-table columns when the row is known.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<u32>,
    },
    /// Gonality tables: 2 quartic, 3 higher degree, 4 quintic, 5 sporadic X1.
    GonalityTable {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        table: u8,
    },
    /// Degree-d CM points that are sporadic on some X0(n).
    SporadicX0 {
        /// A single degree; otherwise 1..=max-d.
        #[arg(short)]
        d: Option<u64>,
        #[arg(long, default_value_t = torsion_sieve::classno::AUTOMATIC_DEGREE)]
        max_d: u64,
        #[arg(long, default_value_t = torsion_sieve::classno::DEFAULT_DISCRIMINANT_BOUND)]
        discriminant_bound: u64,
    },
    /// The X1(2,N) family: symbolic identities and Jain parameters.
    Family {
        #[arg(long)]
        verify_identities: bool,
        /// Rational b, e.g. 2 or 3/7, for Jain's parametrization.
        #[arg(short, requires = "c")]
        b: Option<String>,
        #[arg(short, requires = "b")]
        c: Option<String>,
    },
    /// Audit LMFDB rank and character claims.
    RankCheck {
        /// Also audit the claims that have no shipped fixtures.
        #[arg(long)]
        extended: bool,
        /// Refetch even when a fixture exists.
        #[arg(long)]
        refresh: bool,
        /// Delay between requests, in milliseconds.
        #[arg(long, default_value_t = 1500)]
        delay_ms: u64,
    },
    /// Run the acceptance criteria.
    VerifyAll {
        /// Criterion numbers to run; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// Parses `args`, runs the command, and returns the rendered output and exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match commands::execute(&cli) {
        Ok(doc) => {
            let out = if cli.global.json { doc.to_json() } else { doc.to_markdown() };
            (out, doc.exit_code())
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}
