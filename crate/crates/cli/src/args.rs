use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "adomian", version, about = "Generate and cross-check Adomian polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate A_0..A_order for a nonlinearity.
    Gen(GenArgs),
    /// Compare every applicable backend on random components.
    Check(CheckArgs),
    /// Run a decomposition solve.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Rach,
    Recursive,
    Fourier,
    FourierRecursive,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Rach => "rach",
            Method::Recursive => "recursive",
            Method::Fourier => "fourier",
            Method::FourierRecursive => "fourier-recursive",
        }
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, Method::Rach | Method::Recursive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct QuadratureArgs {
    /// Starting node count of the direct quadrature (power of two, >= 8).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Relative tolerance between successive adaptive estimates.
    #[arg(long = "quad-tol")]
    pub quad_tol: Option<f64>,
    /// Disable adaptive doubling of the node count.
    #[arg(long)]
    pub fixed: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Nonlinearity, e.g. "exp(u)" or "u^2*conj(u)".
    #[arg(long)]
    pub expr: String,
    #[arg(long)]
    pub order: usize,
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Keep derivative factors opaque as N^(k)(u0) (symbolic methods).
    #[arg(long)]
    pub opaque: bool,
    /// Component values, one line `re im [conj_re conj_im]` per index.
    #[arg(long, conflicts_with = "random")]
    pub components: Option<PathBuf>,
    /// Draw random guarded components instead of reading a file.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub expr: String,
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted relative discrepancy; must be positive to pass.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Schrodinger,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    /// Fractional order in (0, 1].
    #[arg(long)]
    pub alpha: f64,
    /// Number of decomposition terms c_0..c_{terms-1}.
    #[arg(long)]
    pub terms: usize,
    /// Compare the partial sum with the Mittag-Leffler form at (x, t).
    #[arg(long, num_args = 2, value_names = ["X", "T"], allow_negative_numbers = true)]
    pub eval_at: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
