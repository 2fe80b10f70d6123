//! Expectations of characteristic polynomials in Hermite, Laguerre and
//! Jacobi β-ensembles, their scaling limits, and the special-function
//! machinery behind both.

pub mod airy;
pub mod asymptotics;
pub mod constants;
pub mod ensembles;
pub mod error;
pub mod hyper;
pub mod jack;
pub mod limits;
mod monomial;
pub mod partitions;
pub mod pde_checks;
mod quad;
pub mod scalar;
pub mod special;

pub use airy::{AiryQuadSpec, AiryValue};
pub use asymptotics::{Contour, PhaseFunction, SaddleCase, SaddlePair, SelbergIntegralSpec, SingleSaddle};
pub use constants::ScalingCoefficient;
pub use ensembles::{CharpolyResult, EnsembleKind, EnsembleSpec, Method};
pub use error::{Error, Result};
pub use hyper::{HyperSeriesSpec, Precision, SeriesValue, TruncationPolicy};
pub use jack::{EigenData, JackExpansion};
pub use limits::{ConvergenceReport, Regime, ScalingMap};
pub use num_complex::Complex;
pub use partitions::{BoxStats, Dominance, Partition};
pub use scalar::{Ext, Real, C64};
