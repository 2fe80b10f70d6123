use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "betachar", version, about = "Characteristic-polynomial expectations in β-ensembles")]
pub struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative truncation tolerance for hypergeometric series.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest partition weight summed or tabulated.
    #[arg(long, global = true)]
    pub max_weight: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

/// Writes ±∞ and NaN as strings, since JSON numbers cannot hold them.
fn extended_real<S: serde::Serializer>(v: &f64, ser: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        ser.serialize_f64(*v)
    } else {
        ser.serialize_str(&v.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Jack polynomial tables.
    #[command(subcommand)]
    Jack(JackCmd),
    /// Hypergeometric series of matrix argument.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Multivariate Airy function.
    #[command(subcommand)]
    Airy(AiryCmd),
    /// Normalization and scaling constants.
    Constants(ConstantsArgs),
    /// Finite-N expectation of a product of characteristic polynomials.
    Expect(ExpectArgs),
    /// Convergence of the rescaled finite-N values to a scaling limit.
    #[command(name = "limit-check")]
    LimitCheck(LimitArgs),
    /// Residuals of the limiting PDE systems.
    #[command(name = "pde-check")]
    PdeCheck(PdeArgs),
    /// Saddle-point leading terms against brute quadrature.
    #[command(subcommand)]
    Saddle(SaddleCmd),
}

impl Command {
    pub fn module(&self) -> &'static str {
        match self {
            Command::Jack(_) => "jack",
            Command::Hyper(_) => "hyper",
            Command::Airy(_) => "airy",
            Command::Constants(_) => "constants",
            Command::Expect(_) => "ensembles",
            Command::LimitCheck(_) => "limits",
            Command::PdeCheck(_) => "pde_checks",
            Command::Saddle(_) => "asymptotics",
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JackCmd {
    /// Monomial coefficients of every P_κ with |κ| ≤ --max-weight.
    Table {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        vars: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperCmd {
    /// Evaluate pFq or its two-set form. Complex values are written `a`, `a+bi` or `bi`.
    Eval {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        upper: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lower: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<String>,
        #[arg(long)]
        two_set: bool,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<String>,
        #[arg(long, value_enum, default_value = "auto")]
        precision: PrecisionArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrecisionArg {
    Double,
    Extended,
    Auto,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryCmd {
    /// Evaluate Ai^(α)(s) by contour quadrature; `inf` is accepted for α.
    Eval {
        #[arg(long)]
        #[serde(serialize_with = "extended_real")]
        alpha: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        s: Vec<f64>,
        #[arg(long)]
        nodes: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantName {
    S,
    W,
    G,
    Gamma,
    M,
    Phi,
    Psi,
    Xi,
    Ak,
    Bk,
    Gammam,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstantsArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub name: ConstantName,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Number of variables n (or the dimension of S and M).
    #[arg(long)]
    pub n: Option<usize>,
    /// Ensemble size.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Odd-case index l ∈ {0, 1}; selects the odd Ψ.
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub u: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleArg {
    #[value(alias = "hermite")]
    H,
    #[value(alias = "laguerre")]
    L,
    #[value(alias = "jacobi")]
    J,
}

#[derive(Debug, Args, Serialize)]
pub struct ExpectArgs {
    #[arg(long, value_enum)]
    pub ensemble: EnsembleArg,
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda2: f64,
    /// Roots s_j; complex values are written `a`, `a+bi` or `bi`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub s: Vec<String>,
    /// Monte Carlo draws instead of the exact route.
    #[arg(long)]
    pub mc: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeArg {
    Hard,
    Bulk,
    Soft,
}

#[derive(Debug, Args, Serialize)]
pub struct LimitArgs {
    #[arg(long, value_enum)]
    pub ensemble: EnsembleArg,
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// Dimension of each s point.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda2: f64,
    /// Bulk position in (0, 1).
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long = "N-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    /// Grid points, flattened; consecutive groups of n form one point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub s: Vec<f64>,
    /// Monte Carlo draws instead of the exact route.
    #[arg(long)]
    pub mc: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceArg {
    Series,
    Classical,
    Quadrature,
    Separable,
}

#[derive(Debug, Args, Serialize)]
pub struct PdeArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// `inf` selects the β = ∞ system.
    #[arg(long)]
    #[serde(serialize_with = "extended_real")]
    pub beta: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda1: f64,
    /// Grid points, flattened; consecutive groups of n form one point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub grid: Vec<f64>,
    #[arg(long, value_enum, default_value = "series")]
    pub source: SourceArg,
    /// Number of positive slots for the separable β = ∞ solutions.
    #[arg(long, default_value_t = 0)]
    pub j: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseArg {
    Watson2,
    Gauss2,
    Airy1,
    Twosaddle2,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaddleCmd {
    /// Ratio of brute quadrature to the leading term for each N.
    Verify {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long = "N-list", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        n_list: Vec<f64>,
    },
}
