//! Rowmotion, its piecewise-linear, birational and q-analogues, and exact toggleability
//! decompositions of homomesic statistics.
//!
//! Linear algebra and statistics are generic over [`scalar::Field`]; the aliases below fix
//! the two scalar fields in use, ℚ and ℚ(q).

pub mod decompose;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod lattice;
pub mod lifted;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod poset;
pub mod qrow;
pub mod ratfunc;
pub mod scalar;
pub mod statistics;

pub use error::{Error, Result};
pub use lattice::IdealLattice;
pub use poset::{Antichain, ElementSet, OrderIdeal, Poset};
pub use ratfunc::RationalFunction;
pub use scalar::{Field, Rational};

/// A statistic on J(P) with rational values.
pub type Stat = statistics::Statistic<Rational>;
/// A statistic on J(P) with values in ℚ(q).
pub type QStat = statistics::Statistic<RationalFunction>;
pub type Decomp = decompose::Decomposition<Rational>;
pub type QDecomp = decompose::Decomposition<RationalFunction>;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type QMatrix = linalg::Matrix<RationalFunction>;
