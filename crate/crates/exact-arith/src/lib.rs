//! Exact arithmetic for surgery calculus: slopes (reduced fractions with a
//! single point at infinity), subtractive continued fractions and Smith
//! normal form over arbitrary-precision integers.

pub mod cf;
pub mod matrix;
pub mod slope;
pub mod snf;

pub use cf::ContinuedFraction;
pub use matrix::IntMatrix;
pub use slope::Slope;
pub use snf::{smith_normal_form, AbelianGroup, SmithForm};

pub use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("0/0 is not a slope")]
    Indeterminate,
    #[error("undefined operation on slopes: {0}")]
    Undefined(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}
