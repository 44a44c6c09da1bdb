pub mod classify;
pub mod cli;
pub mod cones;
pub mod demazure;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod monoid;
pub mod oracle;
pub mod points;

pub use cones::{Budget, DualVector, Face, Factorization, HilbertBasis, LatticeVector, Membership, RationalCone};
pub use demazure::DemazureRoot;
pub use error::{Error, Result};
pub use exec::Execution;
pub use monoid::{GroupCoordinates, MonoidStructure};
pub use points::{OrbitTag, ToricPoint, ToricVariety};
