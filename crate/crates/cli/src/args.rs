//! Command-line surface. Every argument struct is also the parameter record
//! stored in run manifests, so fields hold resolved values once a command
//! has started.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "ciprng",
    version,
    about = "Chaotic-iteration pseudorandom generators: build, analyse, test"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", content = "parameters", rename_all = "kebab-case")]
pub enum Command {
    /// Generate functions with strongly connected iteration graphs.
    GenFn(GenFnArgs),
    /// Markov deviation profile and sufficient iteration count of a function.
    Analyze(AnalyzeArgs),
    /// Emit generator output.
    Generate(GenerateArgs),
    /// Run the statistical battery on generator output.
    Test(TestArgs),
    /// Print the states visited under an explicit strategy.
    Trace(TraceArgs),
    /// gen-fn, then analyze, then test, with b taken from the analysis.
    Pipeline(PipelineArgs),
    /// Re-execute a run manifest.
    #[serde(skip)]
    Rerun(RerunArgs),
}

fn nonzero_seed() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(1..)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenFnArgs {
    /// Number of components.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Share of the arcs of the complete iteration graph to remove.
    #[arg(long)]
    pub rate: f64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Master seed; defaults to CIPRNG_SEED, then the clock.
    #[arg(long, env = "CIPRNG_SEED", value_parser = nonzero_seed())]
    pub seed: Option<u32>,
    /// Consecutive failed removals before giving up on the target rate.
    #[arg(long, default_value_t = 1000)]
    pub max_attempts: usize,
    /// Keep one function per isomorphism class of iteration graphs.
    #[arg(long)]
    pub dedup: bool,
    /// Reload every written file and re-check strong connectivity.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    #[arg(long = "fn")]
    pub function: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1000)]
    pub tmax: usize,
    /// Start configuration (integer encoding).
    #[arg(long, conflicts_with = "worst_case")]
    pub start: Option<u32>,
    /// Use the maximum deviation over all start configurations.
    #[arg(long)]
    pub worst_case: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    /// ASCII '0'/'1', one line.
    Bits,
    /// Packed bytes, most significant bit first, zero padded.
    Bytes,
    /// One decimal output per line.
    Ints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// b or b+1 chaotic iterations per output.
    Ci,
    /// Random flip count and component subset per output.
    Legacy,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[arg(long = "fn")]
    pub function: PathBuf,
    /// Minimal iterations per output (ci generator).
    #[arg(long, required_if_eq("generator", "ci"))]
    pub b: Option<usize>,
    #[arg(long, env = "CIPRNG_SEED", value_parser = nonzero_seed())]
    pub seed: Option<u32>,
    #[arg(long, default_value_t = 1000)]
    pub rounds: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Bits)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t = GeneratorKind::Ci)]
    pub generator: GeneratorKind,
    /// Reduce the legacy flip-count word modulo 2^n - 1 as written in the
    /// original algorithm.
    #[arg(long)]
    pub strict_paper: bool,
    /// Initial configuration; defaults to the seed reduced modulo 2^n.
    #[arg(long)]
    pub x0: Option<u32>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BatteryArgs {
    #[arg(long, default_value_t = 100)]
    pub streams: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub bits: usize,
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, default_value_t = 128)]
    pub block_length: usize,
    #[arg(long, default_value_t = 10)]
    pub serial_m: usize,
    #[arg(long, default_value_t = 10)]
    pub apen_m: usize,
    /// Outputs tallied for the successor repartition matrix.
    #[arg(long, default_value_t = 5120)]
    pub repartition_rounds: usize,
    /// JSON object of P_T values from an external suite, keyed by test id.
    #[arg(long)]
    pub external: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TestArgs {
    #[arg(long = "fn")]
    pub function: PathBuf,
    #[arg(long)]
    pub b: usize,
    #[arg(long, env = "CIPRNG_SEED", value_parser = nonzero_seed())]
    pub seed: Option<u32>,
    #[arg(long)]
    pub x0: Option<u32>,
    #[command(flatten)]
    #[serde(flatten)]
    pub battery: BatteryArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TraceArgs {
    #[arg(long = "fn")]
    pub function: PathBuf,
    #[arg(long)]
    pub x0: u32,
    /// Comma-separated component indices, 1 = most significant bit.
    #[arg(long, value_delimiter = ',')]
    pub strategy: Vec<usize>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PipelineArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long)]
    pub rate: f64,
    #[arg(long, env = "CIPRNG_SEED", value_parser = nonzero_seed())]
    pub seed: Option<u32>,
    #[arg(long, default_value_t = 1000)]
    pub max_attempts: usize,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1000)]
    pub tmax: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub battery: BatteryArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RerunArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
    /// Write artifacts here instead of the recorded location.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
