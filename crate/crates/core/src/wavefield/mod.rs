//! The wavefield `A(S, N)` and its parabolic-frame counterpart `Ã₃₂(X, Y)`.
//!
//! Three independent evaluation routes are provided:
//!
//! * [`eval_a`] through the quintic integral `Ã₃₂` over a contour from the
//!   valley at `9π/10` to the valley at `π/2`;
//! * [`eval_i_plus`] + [`eval_i_minus`] for `S > 0`, each a half-line
//!   integral whose branch point has been removed by a square-root
//!   substitution;
//! * [`eval_a_direct_lambda`], brute-force quadrature of the original
//!   `λ`-integral with its branch convention, used as an oracle.

mod coords;
mod fields;
mod grid;
mod lambda_oracle;

pub use coords::{curvilinear_to_cartesian, quintic_coefficient, regime_quantities, RegimeQuantities};
pub use fields::{
    cartesian_field, eval_a, eval_a32, eval_i_minus, eval_i_plus, eval_split, Evaluation, DEFAULT_GRID_TOL,
    DEFAULT_POINT_TOL,
};
pub use grid::{fmt_num, grid_eval, AxisSpec, FieldGrid, FieldMode, Frame, SampleIssue};
pub use lambda_oracle::{branch_sqrt, eval_a_direct_lambda, LambdaOracleOptions, OracleValue};

use crate::quad::QuadError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("lambda oracle refused: {0}")]
    OracleRefused(String),
}

pub(crate) fn check_gamma(gamma: f64) -> Result<(), WaveError> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(WaveError::InvalidArgument(format!("gamma must be positive, got {gamma}")))
    }
}
