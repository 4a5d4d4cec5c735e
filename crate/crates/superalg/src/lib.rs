//! Exact symbolic engine for supercommutative algebra.
//!
//! The kernel works in finitely presented supercommutative algebras over the
//! Gaussian rationals: Grassmann generators, truncated or localized even
//! generators, monomial relation ideals. On top of it sit superspace
//! morphisms in dual form, super vector fields and their flows, supermatrix
//! groups, the Heisenberg-type supergroup family, a constant-rank/isotropy
//! engine for group actions at parametrized points, the associated presymplectic
//! pairing, and the harmonic analysis of the odd Abelian supergroup and the
//! Heisenberg-type families.

pub mod algebra;
pub mod derivation;
pub mod forms;
pub mod harmonic;
pub mod heisenberg;
pub mod kks;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod morphism;
pub mod orbit;
pub mod scalar;
pub mod twist;

pub use algebra::{
    normalize, Algebra, AlgebraBuilder, AlgebraError, Monomial, Parity, SuperElement,
};
pub use scalar::Scalar;
pub use twist::TwistedElement;
