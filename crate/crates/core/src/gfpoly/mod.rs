//! Polynomials over a prime field F_p, with p ≤ 251 chosen at runtime.

mod arith;
mod field;
mod poly;
mod text;

pub use field::{is_prime, FieldElement};
pub use poly::{divides, frobenius_cube, gcd, Poly};
pub use text::ParseError;

pub(crate) use field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
pub(crate) use arith::mul_slices;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("{0} is not a prime modulus below 256")]
    BadModulus(u8),
}
