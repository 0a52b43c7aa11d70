//! The Berge families as surgeries on the minimally twisted five-chain and as
//! rational tangle insertions, with a harness that checks both descriptions
//! exactly on parameter grids.

pub mod data;
pub mod describe;
pub mod family;
pub mod report;
pub mod sweep;
pub mod verify;

pub use data::{catalog, Catalog, FamilyData};
pub use describe::{surgery_description, tangle_description, BergeDescription, KNOT};
pub use family::{Family, FamilyParams, PARAM_NAMES};
pub use sweep::{grid_tuples, sweep, Grid, SweepOutcome, SweepSummary};
pub use verify::{mutated_s3_holds, s3_holds, verify, verify_description, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("family {family} needs parameter {name}")]
    Missing { family: Family, name: &'static str },
    #[error("family {family} takes no parameter {name}")]
    Unexpected { family: Family, name: String },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family data: {0}")]
    Data(String),
    #[error("empty range for {0}")]
    EmptyRange(String),
    #[error("bad range {0:?}")]
    BadRange(String),
    #[error(transparent)]
    Tangle(#[from] tangle_calc::TangleError),
    #[error(transparent)]
    Diagram(#[from] surgery_engine::DiagramError),
}

pub type Result<T> = std::result::Result<T, CatalogError>;
