use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("incomparable weights: {0} vs {1}")]
    IncomparableWeights(u32, u32),
    #[error("vanishing polynomial: length {length} exceeds {n} variables")]
    VanishingPolynomial { length: usize, n: usize },
    #[error("degenerate parameter: kappa={kappa} mu={mu} alpha={alpha}")]
    DegenerateParameter { kappa: String, mu: String, alpha: f64 },
    #[error("truncation not converged (last shell magnitude {last_shell:e})")]
    NotConverged { last_shell: f64 },
    #[error("quadrature not converged: {0}")]
    QuadratureNotConverged(String),
    #[error("non-analytic Vandermonde power: quadrature unsupported")]
    NonAnalyticVandermonde,
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("saddle data inconsistent: {0}")]
    SaddleMismatch(String),
    #[error("non-uniform order: {0}")]
    NonUniformOrder(String),
}

impl Error {
    /// Short machine-readable tag used in structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::IncomparableWeights(..) => "incomparable_weights",
            Error::VanishingPolynomial { .. } => "vanishing_polynomial",
            Error::DegenerateParameter { .. } => "degenerate_parameter",
            Error::NotConverged { .. } => "truncation_not_converged",
            Error::QuadratureNotConverged(_) => "quadrature_not_converged",
            Error::NonAnalyticVandermonde => "non_analytic_vandermonde",
            Error::UnsupportedRegime(_) => "unsupported_regime",
            Error::InvalidContour(_) => "invalid_contour",
            Error::SaddleMismatch(_) => "saddle_mismatch",
            Error::NonUniformOrder(_) => "non_uniform_order",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
