use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("constraint system is unbounded")]
    Unbounded,
    #[error("equality constraints are inconsistent")]
    Inconsistent,
    #[error("point is not in the convex hull")]
    NotInHull,
    #[error("expected {expected} points, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("polytope is empty")]
    Empty,
    #[error("anchor is not one of the given points")]
    AnchorNotInSet,
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), GeomError> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}
