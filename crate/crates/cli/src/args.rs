use std::path::PathBuf;

use ahspec::report::Format;
use ahspec::spectrum::BracketConfig;
use ahspec::sphere_modes::FormKind;
use ahspec::{ChannelTag, CrossTerm};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ahspec", version, about = "Essential spectrum and L2 harmonic forms on asymptotically hyperbolic warped products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bracket the essential spectrum in one degree and compare with the prediction.
    Spectrum(SpectrumArgs),
    /// Classify L2 harmonic forms in one degree.
    Harmonic(HarmonicArgs),
    /// Sample radial coefficients of one channel as CSV.
    OperatorDump(DumpArgs),
    /// Run `spectrum` for every degree 0..=N.
    Sweep(SweepArgs),
    /// Run the built-in oracle checks.
    Selftest(SelftestArgs),
    /// List sphere eigenvalues with multiplicities.
    Modes(ModesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ProfileArgs {
    /// Warping profile: hyperbolic or perturbed.
    #[arg(long, default_value = "hyperbolic")]
    pub profile: String,
    /// Perturbation of f, as alpha/(1+t).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Perturbation of g, as beta/(1+t).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// human, structured (one JSON line) or csv.
    #[arg(long, default_value = "human", value_parser = parse_format)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BracketArgs {
    /// Left end c of the exterior domain.
    #[arg(long, default_value_t = 8.0)]
    pub cut: f64,
    /// Truncation lengths, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "10,20,40", allow_negative_numbers = true)]
    pub lengths: Vec<f64>,
    /// Grid points per unit length.
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub density: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub tol: f64,
    /// Widest aggregate bracket still counted as conclusive.
    #[arg(long, default_value_t = 5e-2, allow_negative_numbers = true)]
    pub max_width: f64,
    /// Sphere modes per channel.
    #[arg(long, default_value_t = 3)]
    pub modes: usize,
    #[arg(long = "w2-cross-term", default_value = "as-printed", value_parser = parse_cross_term)]
    pub cross_term: CrossTerm,
}

impl BracketArgs {
    pub fn config(&self) -> BracketConfig {
        BracketConfig {
            cut: self.cut,
            lengths: self.lengths.clone(),
            density: self.density,
            tol: self.tol,
            max_width: self.max_width,
            mode_count: self.modes,
            cross_term: self.cross_term,
        }
    }
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub degree: usize,
    /// Restrict to these channels (I, II, III), comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_channel)]
    pub channel: Vec<ChannelTag>,
    #[command(flatten)]
    pub bracket: BracketArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct HarmonicArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub degree: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value = "I", value_parser = parse_channel)]
    pub channel: ChannelTag,
    /// Sphere eigenvalue of the mode.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Sample interval `a,b` with 0 < a < b.
    #[arg(long, value_delimiter = ',', num_args = 1, default_value = "1,20", allow_negative_numbers = true)]
    pub range: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long = "w2-cross-term", default_value = "as-printed", value_parser = parse_cross_term)]
    pub cross_term: CrossTerm,
    /// Also write the assembled Dirichlet matrix on the sample interval to this CSV file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub dim: usize,
    #[command(flatten)]
    pub bracket: BracketArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Pass tolerance for oracle comparisons.
    #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long = "w2-cross-term", default_value = "as-printed", value_parser = parse_cross_term)]
    pub cross_term: CrossTerm,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Coclosed,
    Closed,
}

impl From<KindArg> for FormKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Coclosed => FormKind::Coclosed,
            KindArg::Closed => FormKind::Closed,
        }
    }
}

#[derive(Args, Debug)]
pub struct ModesArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value = "coclosed")]
    pub kind: KindArg,
    #[arg(long, default_value_t = 5)]
    pub modes: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_cross_term(s: &str) -> Result<CrossTerm, String> {
    s.parse().map_err(|e: ahspec::reduction::ReductionError| e.to_string())
}

fn parse_channel(s: &str) -> Result<ChannelTag, String> {
    s.parse().map_err(|e: ahspec::reduction::ReductionError| e.to_string())
}
