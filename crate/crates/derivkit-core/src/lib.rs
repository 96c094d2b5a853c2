//! Exact-arithmetic computational algebra for inner derivations.
//!
//! Everything here works over the rationals with no floating point: dense
//! rational matrices, canonical row-reduced subspaces, finite-dimensional
//! associative algebras given by structure constants, and the span-product
//! closure engines built on top of them.
//!
//! The headline objects live in [`derivations`]: for a unital algebra `B`,
//! the subalgebra `T_Lie(B)` of `B ⊗ B^op` generated by all `a⊗1 − 1⊗a`,
//! and the subalgebra `N_Lie(B)` of tensors `Σ aₖ⊗bₖ` with `Σ aₖbₖ = Σ bₖaₖ = 0`.
//! Whether the two coincide is decided exactly; when they differ a witness
//! element is produced. The [`poly`] module settles the same question in
//! (infinite-dimensional) polynomial algebras degree by degree and emits
//! replayable membership certificates; [`bimodule`] classifies Lie ideals of
//! `M_n` and Lie `D_n`-submodules; [`expectation`] realizes the trace
//! expectation as an exact finite group average and locates it inside the
//! derivation-generated operator algebra.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bimodule;
pub mod closures;
pub mod derivations;
pub mod error;
pub mod expectation;
pub mod freealg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod subspace;

pub use error::Error;
pub use matrix::Matrix;
pub use rational::Rational;
pub use subspace::Subspace;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
