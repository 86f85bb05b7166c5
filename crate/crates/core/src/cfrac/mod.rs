//! Continued fraction expansion with certified precision, convergents, and the
//! sequence calculus used by the generators.

mod convergents;
mod expand;
mod openq;
mod seq;

pub use convergents::{
    convergents, convergents_of, error_exponent, evaluate, rational_series, reconstruct,
    scale_identity_check, ConvergentTable,
};
pub use expand::{expand, expand_rational, from_quotients, ContinuedFraction};
pub use openq::{open_question_check, OpenQuestionOutcome, OpenQuestionReport};
pub use seq::{alt_scale, cube_each, reverse, scale_down, scale_up, ScalePositions};

use thiserror::Error;

use crate::gfpoly::PolyError;
use crate::laurent::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("empty quotient sequence")]
    Empty,
    #[error("quotient a_{0} is constant")]
    ConstantQuotient(usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("scaling polynomial must have positive degree")]
    ConstantScale,
    #[error("determinant identity fails at index {index}")]
    Determinant { index: i64 },
    #[error("{divisor} does not divide entry {index} ({entry})")]
    Divisibility { index: usize, entry: String, divisor: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
