//! Exact K₀ computations for C*-algebras of rank-2 Deaconu–Renault groupoids.
//!
//! All groups live in indicator-function coordinates: the generator `eᵢ` of
//! `ℤⁿ` is the class of the indicator of the i-th point (or vertex). The
//! isomorphisms between function lattices and K₀ of the coefficient algebra
//! are therefore the identity of the representation and never appear in code.
//!
//! Layers, bottom up:
//!
//! * [`linalg`]: Smith and Hermite normal forms, kernels, exact rational LP.
//! * [`abelian`]: finitely generated abelian groups as presentations.
//! * [`models`]: finite dynamical models, 2-graphs, invariant subsets.
//! * [`ktheory`]: the split exact sequence for K₀ and its ideal morphism.
//! * [`finiteness`]: the matrix and coboundary conditions, and verdicts.
//! * [`cli`]: model documents, result documents and command dispatch.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod finiteness;
pub mod ktheory;
pub mod linalg;
pub mod models;
pub mod numfmt;
pub mod parallel;

pub use error::{Error, Result};
