//! `hptsp`: generate, solve, decide and verify hashed-path TSP instances, and
//! run the analysis experiments.
//!
//! Exit codes: 0 success, 1 domain rejection (certificate rejected, no route
//! under `m`, table mismatch), 2 usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hptsp", version, about = "Hashed-path TSP toolkit")]
pub struct Cli {
    /// Seed for instance generation and experiments.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads for searches and the benchmark (default: available cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Output file. `gen`: instance JSON (stdout if omitted). `solve`: certificate
    /// JSON for the best route. Experiments: CSV (default `<command>.csv`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print all 24 routes of the four-city example with their digests and
    /// check them against the embedded reference values.
    Table,

    /// Generate a random complete graph instance (SHA-1, m = all f).
    Gen {
        /// Number of vertices.
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 1)]
        min_weight: u64,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        /// Draw c(i,j) and c(j,i) independently.
        #[arg(long)]
        directed: bool,
        /// Hash backend id.
        #[arg(long, default_value = "sha1")]
        hash: String,
        /// Decision threshold as lowercase hex of digest length.
        #[arg(long)]
        m: Option<String>,
    },

    /// Find the route with the smallest digest by exhaustive search.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Largest V the search will attempt.
        #[arg(long, default_value_t = hptsp_core::search::DEFAULT_VERTEX_LIMIT)]
        vertex_limit: usize,
    },

    /// Decide whether some route has digest <= m. Exits 1 if none does.
    Decide {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = hptsp_core::search::DEFAULT_VERTEX_LIMIT)]
        vertex_limit: usize,
    },

    /// Check a certificate ({"order": [labels], "costs": [ints]}). Exits 1 if rejected.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },

    /// Strict avalanche test. CSV columns: bit,flip_rate
    Sac {
        #[arg(long, default_value = "sha1")]
        hash: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        input_len: usize,
    },

    /// Rank correlation of partial-route features with digest order.
    /// CSV columns: feature,target,v,sample_size,correlation,p_value
    Leak {
        #[command(flatten)]
        source: InstanceSource,
        /// Feature to test; all three if omitted.
        #[arg(long, value_parser = ["prefix-digest-first-byte", "first-edge", "first-edge-cost"])]
        feature: Option<String>,
        #[arg(long, value_enum, default_value_t = Target::Digest)]
        target: Target,
        #[arg(long, default_value_t = hptsp_core::lab::DEFAULT_SHUFFLES)]
        shuffles: usize,
    },

    /// Length extension on every route, split at the midpoint.
    /// CSV columns: route,prefix,suffix,extended,glue_padded,full,matches_glue,differs_from_full
    ExtendDemo {
        #[command(flatten)]
        source: InstanceSource,
    },

    /// Histogram of digests by leading bits. CSV columns: bucket,count
    Census {
        #[command(flatten)]
        source: InstanceSource,
        #[arg(long, default_value_t = 8)]
        prefix_bits: u32,
    },

    /// Time exhaustive solves over a range of V.
    /// CSV columns: v,wall_time_ms,routes_examined,routes_per_second
    Bench {
        #[arg(long, default_value_t = 7)]
        from: usize,
        #[arg(long, default_value_t = 10)]
        to: usize,
        /// Repeat each size at least this many times; the median is reported.
        #[arg(long, default_value_t = 3)]
        runs: usize,
    },
}

/// Where an experiment gets its instance: a file, a random instance of the
/// given size, or the four-city example.
#[derive(Debug, Args)]
pub struct InstanceSource {
    #[arg(long, conflicts_with = "v")]
    pub instance: Option<PathBuf>,
    /// Generate a random instance with this many vertices (weights 1..=100).
    #[arg(long)]
    pub v: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Digest,
    TourCost,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}
