use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "quadgl",
    version,
    about = "Quadratic Goldreich-Levin over F_2^n"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Every random choice derives from this seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel attempts.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = ProfileName::Practical)]
    pub profile: ProfileName,
    #[command(flatten)]
    pub overrides: ProfileOverrides,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileName {
    Practical,
    Paper,
}

/// Practical-profile knobs.
#[derive(Debug, Default, Args)]
pub struct ProfileOverrides {
    /// Graph density assumed by the BSG tests.
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Density threshold of the local linear choice.
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    /// List-decoding threshold behind the choice function.
    #[arg(long, global = true)]
    pub phi_gamma: Option<f64>,
    /// Samples per vertex weight estimate.
    #[arg(long, global = true)]
    pub t_edge: Option<u64>,
    /// Outer sample count of the BSG test.
    #[arg(long = "bsg-r", global = true)]
    pub bsg_r: Option<usize>,
    /// Inner sample count of the BSG test.
    #[arg(long = "bsg-s", global = true)]
    pub bsg_s: Option<usize>,
    /// Bucket and coefficient sample cap of each list decoding.
    #[arg(long, global = true)]
    pub gl_samples: Option<u64>,
}

impl ProfileOverrides {
    pub fn any(&self) -> bool {
        self.rho.is_some()
            || self.theta.is_some()
            || self.phi_gamma.is_some()
            || self.t_edge.is_some()
            || self.bsg_r.is_some()
            || self.bsg_s.is_some()
            || self.gl_samples.is_some()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a planted truth table.
    Gen(GenArgs),
    /// Spectrum dump of a table.
    Wht(WhtArgs),
    /// Gowers U^3 norm of a table.
    U3(U3Args),
    /// Large Fourier coefficients by Goldreich-Levin.
    Gl(GlArgs),
    /// Find a quadratic phase correlating with a table.
    FindQuad(FindArgs),
    /// Find a quadratic average correlating with a table.
    FindAvg(FindAvgArgs),
    /// Decompose a table into quadratic terms plus small errors.
    Decompose(DecomposeArgs),
    /// Exhaustive cross-checks, optionally of a result against a table.
    Verify(VerifyArgs),
    /// Timing table for the transform and the phase finder.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Plant {
    /// A quadratic phase, noisy when `--epsilon` is given.
    Quad,
    /// A quadratic average with `--flip` sign noise.
    Average,
    /// Uniform random signs.
    Noise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Binary,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Truth-table file (text or binary).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Expected dimension of the input.
    #[arg(long)]
    pub n: Option<usize>,
    /// Also write the JSON result here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Plant::Quad)]
    pub plant: Plant,
    /// Correlation of the noisy codeword with its phase (flip rate `1/2 - ε`).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Flip exactly `round((1/2 - ε) 2^n)` points instead of independently.
    #[arg(long)]
    pub exact_noise: bool,
    /// Complexity of a planted average.
    #[arg(long, default_value_t = 2)]
    pub codim: usize,
    /// Sign-flip rate of a planted average.
    #[arg(long, default_value_t = 0.0)]
    pub flip: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WhtArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Coefficients below this magnitude are omitted.
    #[arg(long, default_value_t = 1e-12)]
    pub min_abs: f64,
}

#[derive(Debug, Args)]
pub struct U3Args {
    #[command(flatten)]
    pub io: InputArgs,
    /// Exact computation instead of sampling.
    #[arg(long)]
    pub exact: bool,
    /// Accuracy of the sampled estimate.
    #[arg(long, default_value_t = 0.05)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct GlArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value_t = 0.2)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Attempt budget; the profile's count when omitted.
    #[arg(long)]
    pub attempts: Option<u64>,
    /// Exponent `C` of the paper profile's `exp(-1/ε^C)`.
    #[arg(long, default_value_t = 1.0)]
    pub c_exp: f64,
    /// Skip the entry test on the U^3 norm.
    #[arg(long)]
    pub skip_gate: bool,
}

#[derive(Debug, Args)]
pub struct FindAvgArgs {
    #[command(flatten)]
    pub find: FindArgs,
    /// Largest accepted codim(W).
    #[arg(long)]
    pub max_complexity: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Phases,
    Averages,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FinderKind {
    /// The finder sees the Boolean rounding of each residual at `ε/2B`.
    Rounded,
    /// The finder sees the bounded residual itself.
    Direct,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value_t = 0.3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Truncation bound `B > 1`.
    #[arg(long = "bound", default_value_t = 2.0)]
    pub bound: f64,
    #[arg(long, value_enum, default_value_t = Mode::Phases)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = FinderKind::Rounded)]
    pub finder: FinderKind,
    /// Step size; `0.5` when omitted.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Use the measured correlation as each coefficient.
    #[arg(long)]
    pub measured: bool,
    #[arg(long)]
    pub max_steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Table to check a result against.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// A find-quad or find-avg result JSON.
    #[arg(long)]
    pub result: Option<PathBuf>,
    /// Smallest acceptable exact correlation of the result.
    #[arg(long, default_value_t = 0.1)]
    pub min_correlation: f64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 6)]
    pub min_n: usize,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
}
