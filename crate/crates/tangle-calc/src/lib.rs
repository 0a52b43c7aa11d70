//! Algebraic tangles built from rational pieces, their fractions, and the
//! passage to two-bridge links and lens spaces.

pub mod convention;
pub mod framing;
pub mod tangle;
pub mod template;
pub mod two_bridge;

pub use convention::{Composition, HORIZONTAL, VERTICAL};
pub use framing::{filling_correspondence, Framing, FramingChange};
pub use tangle::{RationalTangle, TangleExpr};
pub use template::{Bindings, Expr, Template};
pub use two_bridge::{double_branched_cover, two_bridge_equivalent, TwoBridgeLink};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("the tangle still has an open slot")]
    SlotPresent,
    #[error("expected exactly one slot, found {0}")]
    SlotCount(usize),
    #[error("unresolved composition: {0}")]
    Unresolved(String),
    #[error("not a rational tangle: {0}")]
    NotRational(String),
    #[error("unbound parameter {0:?}")]
    Unbound(String),
    #[error("twist box needs an integer, got {0}")]
    NotInteger(String),
    #[error("undefined arithmetic: {0}")]
    Arithmetic(String),
    #[error("offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("framing: {0}")]
    Framing(String),
}

pub type Result<T> = std::result::Result<T, TangleError>;
