//! Exact lattice computations for Niemeier lattices and K3 Picard lattices.

pub mod cases;
pub mod catalog;
pub mod embed;
pub mod error;
pub mod groups;
pub mod lattice;
pub mod linalg;
pub mod padic;

pub use catalog::{niemeier, Niemeier, NiemeierSpec};
pub use embed::{Condition, EmbeddingVerdict, TargetSignature};
pub use error::{Error, Result};
pub use groups::{coinvariant_lattice, CoinvariantResult, PermAction};
pub use lattice::{DiscriminantGroup, Lattice, LatticeJson, RootKind, RootLabel, RootSystem};
pub use linalg::{IntMatrix, RatMatrix, SmithDecomposition};
pub use padic::{jordan_decompose, PadicJordanForm, UnitSquareClass};
