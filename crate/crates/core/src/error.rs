use thiserror::Error;

/// Errors raised by the lattice library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generator column {0} lies outside the rational span of the ambient lattice")]
    GeneratorsOutsideAmbient(usize),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("lattice is not negative definite")]
    NotNegativeDefinite,
    #[error("vector is not a root (square {0}, expected -2)")]
    NotARoot(String),
    #[error("lattice is not contained in the ambient lattice")]
    NotASublattice,
    #[error("inadmissible root system label {0}")]
    InadmissibleLabel(String),
    #[error("invalid discriminant generator label {0}")]
    InvalidLabel(String),
    #[error("Niemeier index {0} is not in the catalog")]
    NotInCatalog(usize),
    #[error("lattice is not even")]
    NotEven,
    #[error("kernel is not one-dimensional (dimension {0})")]
    KernelNotOneDimensional(usize),
    #[error("lattice is not hyperbolic (signature {0:?})")]
    NotHyperbolic((usize, usize, usize)),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
