//! Exact-arithmetic lattice invariants and the rigid isotopy classification
//! of real irreducible nodal sextic curves without real nodes.
//!
//! The crate computes with four kinds of objects:
//!
//! * integer lattices given by Gram matrices ([`lattice`]),
//! * finite quadratic forms on finite abelian groups ([`forms`]),
//! * marked geometric involutions on the K3 lattice and their numerical
//!   invariants (a, t, δ, r) ([`involution`]),
//! * real schemes (collections of nested ovals in ℝP², Viro notation)
//!   and their topological predicates ([`scheme`]).
//!
//! The [`classify`] module ties these together: a candidate class
//! (scheme, dividing type, node pairs m, crossing pairs r) is checked both
//! through the topological conditions (smoothing, Harnack, Arnold,
//! injective-pair rule) and through the arithmetic conditions (i)-(v) on the
//! translated invariants, and the two verdicts are required to agree.
//! Enumerating all candidates regenerates the classification tables.
//!
//! All arithmetic is exact: arbitrary-precision integers, rationals, and
//! cyclotomic integers. No floating point is used anywhere.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so everything here is safe to share between threads.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod error;
pub mod forms;
pub mod involution;
pub mod lattice;
pub mod matrix;
pub mod scheme;
pub mod verify;

mod cyclotomic;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
