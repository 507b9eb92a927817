use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "reskrylov",
    version,
    about = "Resolvent Krylov convergence experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pseudospectral Schrödinger problem u' = i u_xx on a periodic grid
    Schrodinger(SchrodingerArgs),
    /// Finite-difference wave equation on the unit square
    WaveFd(WaveArgs),
    /// Run the property suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Krylov,
    Euler,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Dst,
    Cg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Exactness,
    Phi,
    Smoothing,
    Dissipativity,
    All,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Data file; standard output when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SchrodingerArgs {
    /// Number of Fourier modes N (even, at least 8)
    #[arg(long, default_value_t = 4096)]
    pub grid_size: usize,

    #[arg(long, default_value_t = 0.02)]
    pub tau: f64,

    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,

    /// Smoothness index of the initial data; repeatable
    #[arg(long = "q", num_args = 1.., default_values_t = [2, 4, 6, 8])]
    pub q: Vec<usize>,

    /// Largest subspace dimension (or Euler step count)
    #[arg(long, default_value_t = 60)]
    pub n_max: usize,

    #[arg(long, value_enum, default_value_t = MethodArg::Krylov)]
    pub method: MethodArg,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    /// Interior grid points per direction; repeatable
    #[arg(long, num_args = 1.., default_values_t = [31, 63])]
    pub grid: Vec<usize>,

    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,

    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,

    #[arg(long = "q", num_args = 1.., default_values_t = [2, 4])]
    pub q: Vec<usize>,

    #[arg(long, default_value_t = 40)]
    pub n_max: usize,

    #[arg(long, value_enum, default_value_t = SolverArg::Dst)]
    pub solver: SolverArg,

    #[arg(long, default_value_t = 1e-12)]
    pub cg_tol: f64,

    #[arg(long, default_value_t = 10_000)]
    pub cg_max_iter: usize,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
