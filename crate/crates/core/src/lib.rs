//! Exact semi-invariants of orthogonal and symplectic representations of
//! symmetric quivers of type A.

pub mod error;
pub mod functors;
pub mod generators;
pub mod group;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod schur;
pub mod rep;
pub mod repfile;
pub mod ring;
pub mod semiinv;

pub use error::{Error, Result};
pub use matrix::{Matrix, RatMatrix};
pub use poly::{Monomial, Polynomial};
pub use quiver::{Dir, Quiver, SymmetricQuiver};
pub use rational::Rational;
pub use rep::{Kind, Representation, SymmetricRepresentation};
pub use ring::Ring;
