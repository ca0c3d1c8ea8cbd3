//! Command-line front end: `entropy`, `verify`, `scan` and `lattice-info`.
//!
//! [`run`] does all the work and returns the text and exit code, so the
//! binary is a thin wrapper and tests can drive it in-process.

mod commands;
pub mod report;
pub mod specs;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::entropy::EXHAUSTIVE_SCAN_CAP;
use crate::lattice::PartitionSpec;
use crate::oracle::MAX_STATE_SPINS;
pub use report::{Format, Row, CSV_HEADER};
pub use specs::{LatticeSpec, StateSpec};

/// Largest lattice `verify` accepts (the `k = 3` torus).
pub const VERIFY_MAX_SPINS: usize = 18;

#[derive(Debug, Parser)]
#[command(name = "toric-entropy", version, about = "Exact entanglement entropy of toric-code and spin-flip stabilizer states")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for random states and sampled scans.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest state the dense oracle may build.
    #[arg(long, global = true, default_value_t = MAX_STATE_SPINS)]
    pub max_oracle_spins: usize,

    /// Largest spin count for an exhaustive scan.
    #[arg(long, global = true, default_value_t = EXHAUSTIVE_SCAN_CAP)]
    pub exhaustive_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of one bipartition, with closed form and optional oracle check.
    Entropy(EntropyArgs),
    /// Engine-vs-oracle equivalence over a suite of partitions.
    Verify(VerifyArgs),
    /// Entropy rows over many partitions.
    Scan(ScanArgs),
    /// Counts, ranks and degeneracy of a lattice.
    LatticeInfo(LatticeArgs),
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// `torus:k=<K>` or a lattice document path.
    #[arg(long, value_parser = parse_with::<LatticeSpec>)]
    pub lattice: LatticeSpec,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long, value_parser = parse_with::<LatticeSpec>)]
    pub lattice: LatticeSpec,

    /// `chain`, `ladder`, `cross`, `vertical`, `spin:<id>`, `pair:<a>,<b>`,
    /// `links:<ids>`, `rect:<x>,<y>,<w>,<h>` or `loop:<dual edges>`.
    #[arg(long, value_parser = parse_with::<PartitionSpec>)]
    pub partition: PartitionSpec,

    /// `xi:<i>,<j>`, `coeffs:<a00>,<a01>,<a10>,<a11>` or `random:<seed>`.
    #[arg(long, value_parser = parse_with::<StateSpec>, default_value = "xi:0,0")]
    pub state: StateSpec,

    /// Also compute the entropy from the dense statevector.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_with::<LatticeSpec>)]
    pub lattice: LatticeSpec,

    /// Engine generators to test instead of the lattice stars, one per line.
    #[arg(long)]
    pub generators: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanMode {
    Exhaustive,
    Sampled,
    Disks,
    Rects,
    Table1,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_with::<LatticeSpec>)]
    pub lattice: LatticeSpec,

    #[arg(long, value_enum)]
    pub mode: ScanMode,

    /// Rows to draw in the random modes.
    #[arg(long, default_value_t = 100)]
    pub count: usize,

    /// Largest disk, in sites, for `--mode disks` (default `k²/4`).
    #[arg(long)]
    pub max_sites: Option<usize>,

    /// Fill `oracle_S` where the lattice fits the oracle.
    #[arg(long)]
    pub oracle: bool,
}

fn parse_with<T: std::str::FromStr<Err = crate::Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: 2,
                    ..Default::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    ..Default::default()
                }
            };
        }
    };
    execute(&cli)
}

/// Runs an already-parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let mut out = Outcome::default();
    let result = match &cli.command {
        Command::Entropy(a) => commands::entropy(cli, a, &mut out),
        Command::Verify(a) => commands::verify(cli, a, &mut out),
        Command::Scan(a) => commands::scan(cli, a, &mut out),
        Command::LatticeInfo(a) => commands::lattice_info(cli, a, &mut out),
    };
    if let Err(e) = result {
        out.stderr.push_str(&format!("error: {e}\n"));
        out.code = e.exit_code();
    }
    out
}
