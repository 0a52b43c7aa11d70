//! Surgery diagrams made of unknotted components arranged in paths and
//! cycles, joined by two-strand twist regions. Every move here is exact and
//! is checked against the first-homology oracle.

pub mod calibration;
pub mod certificate;
pub mod chain;
pub mod classify;
pub mod diagram;
pub mod digest;
pub mod homology;
pub mod moves;
pub mod simplify;
pub mod soundness;
pub mod text;

pub use certificate::{replay, ReplayVerdict, RewriteCertificate, Step};
pub use chain::{lens_from_linear_chain, reduce_path_forest, ChainReduction};
pub use classify::{lens_equivalent, ClosedManifoldClass};
pub use diagram::{fill, mirror, mt5c, Component, ComponentId, Piece, Shape, TwistRegionGraph};
pub use digest::digest;
pub use homology::{first_homology, presentation_matrix};
pub use moves::{amalgamate_parallel, blow_down, delete_infinite, rolfsen_twist_end, slam_dunk, Move};
pub use simplify::{simplify, SimplifyOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("component {0} already exists")]
    DuplicateComponent(ComponentId),
    #[error("self-loop at component {0}")]
    SelfLoop(ComponentId),
    #[error("zero linking between {0} and {1}")]
    ZeroLinking(ComponentId, ComponentId),
    #[error("components {0} and {1} already share a twist region")]
    DuplicateEdge(ComponentId, ComponentId),
    #[error("component {0} would have degree above 2")]
    DegreeTooHigh(ComponentId),
    #[error("{mv}: {reason}")]
    Precondition { mv: &'static str, reason: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, DiagramError>;
