use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid surface data: {0}")]
    InvalidSurface(String),
    #[error("invalid slice: {0}")]
    InvalidSlice(String),
    #[error("discriminant is undefined for rank-zero classes")]
    UndefinedDiscriminant,
    #[error("walls against rank-zero classes are not supported")]
    UnsupportedComparison,
    #[error("degenerate wall: H·L = 0")]
    DegenerateWall,
    #[error("negative discriminant: walls do not accumulate")]
    NoAccumulation,
    #[error("walls are not comparable: {0}")]
    Incomparable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("euler pairing is degenerate in the last coordinate")]
    DegeneratePairing,
    #[error("refused: {0}")]
    Refused(String),
    #[error("integer overflow in lattice coordinates")]
    CoordinateOverflow,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
