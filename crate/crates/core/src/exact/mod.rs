//! Exact scalars (ℚ, ½ℤ) and exact linear algebra.

mod linalg;
mod scalar;

pub use linalg::{Echelon, RationalMatrix};
pub use scalar::{format_rational, gen_binomial, parse_rational, rat, ratio, HalfInt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed half-integer `{0}` (expected `k` or `k/2` with k odd)")]
    HalfInt(String),
}
