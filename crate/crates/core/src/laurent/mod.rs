//! Truncated Laurent series in 1/T, the catalog equations, and the certified root solver.

mod equation;
mod series;
mod solve;

pub use equation::{eval_quartic, eval_quartic_to, EquationSpec, Family, QuarticSpec, SpecError};
pub use series::Laurent;
pub use solve::{solve_quartic, solve_root, solve_root_with, square_route, SolveOptions};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error("series has no certified nonzero term to invert")]
    NotInvertible,
    #[error("need coefficients down to T^{needed} but the floor is T^{floor}")]
    InsufficientPrecision { needed: i64, floor: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("precision {requested} is below the minimum {minimum}")]
    PrecisionTooSmall { requested: usize, minimum: usize },
    #[error("no root with |x| < 1 is reachable from the seed")]
    NoSmallRoot,
    #[error("the derivative vanishes at the approximation")]
    DerivativeVanishes,
    #[error("Newton residual stopped decreasing at T^{residual_top}")]
    NotConverging { residual_top: i64 },
    #[error("could not certify {requested} coefficients within the working-precision budget")]
    PrecisionExhausted { requested: usize },
    #[error("direct root disagrees with the squared companion root")]
    CrossCheckMismatch,
    #[error("family {0} has no squared companion")]
    NoSquareRoute(Family),
    #[error("{0}")]
    Spec(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
