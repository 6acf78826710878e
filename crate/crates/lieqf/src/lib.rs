//! Exact-arithmetic toolkit for quasi-filiform Lie algebras.
//!
//! The crate materializes a catalog of nilpotent Lie algebras of nilindex
//! n-2 that admit a nonzero diagonalizable derivation, computes their
//! structural invariants (center, lower central series, type, rank of the
//! diagonal torus, derivation algebra, adjoint Chevalley-Eilenberg
//! cohomology in degrees 0-2), and machine-checks two structural facts:
//! every catalog algebra becomes a complete Lie algebra after taking the
//! semidirect sum with its torus of diagonal derivations, and the completed
//! algebras of the A-family carry t-2 independent deformation 2-cocycles,
//! so dim H^2 grows without bound along the family.
//!
//! All arithmetic is exact rational; there is no floating point anywhere.

pub mod catalog;
pub mod cohomology;
pub mod deform;
pub mod derivations;
pub mod error;
pub mod exactlin;
pub mod liecore;

pub use error::Error;
pub use exactlin::Scalar;
