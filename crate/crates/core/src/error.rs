use thiserror::Error;

/// Errors raised by the geometry kernel and the monoid layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the cone contains a line and is not strongly convex")]
    NotStronglyConvex,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),

    #[error("ray {index} is redundant: it is not an extreme ray of the cone")]
    RedundantRay { index: usize },

    #[error("enumeration needs {needed} points, budget is {budget}")]
    ScaleLimit { needed: u128, budget: u64 },

    #[error("vector {0:?} is not in the semigroup")]
    NotInSemigroup(Vec<i64>),

    #[error("ray index {index} out of range for a cone with {rays} rays")]
    RayIndexOutOfRange { index: usize, rays: usize },

    #[error("{which} = {vector:?} is not a Demazure root of ray {ray}: {detail}")]
    NotADemazureRoot {
        which: &'static str,
        vector: Vec<i64>,
        ray: usize,
        detail: String,
    },

    #[error("not a face: {0}")]
    NotAFace(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("the zero pattern of the point does not match any face")]
    IncoherentZeroPattern,

    #[error("torus value {0} is zero")]
    ZeroValue(usize),

    #[error("point is not invertible")]
    NotInvertible,

    #[error("monoid does not match the {0} template")]
    TemplateMismatch(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
