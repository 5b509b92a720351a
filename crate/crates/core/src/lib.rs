//! Leibniz-inequality machinery on finite sets.
//!
//! The crate provides, in `no_std + alloc` form:
//!
//! * [`norms`] — symmetric norms (`p`-norms, Ky Fan `k`-norms) with duals,
//!   non-increasing rearrangement, weak majorization, extreme points and
//!   convex decomposition of the Ky Fan dual ball, and (sub/doubly)
//!   stochasticity predicates;
//! * [`operators`] — the contraction matrices built from pairwise averages,
//!   Laplacians and Dirichlet forms on `{1..n}`, the Markovian unit
//!   contraction, and operator norms restricted to the mean-zero hyperplane;
//! * [`calculus`] — two first-order differential calculi on the matrix
//!   bimodule over `ℓ^∞_n` with their adjoints, seminorms and the
//!   carré-du-champ operator;
//! * [`probability`] — expectations and absolute central moments for
//!   weighted finite probability spaces;
//! * [`harness`] — slack-record verifiers for the Leibniz-type inequalities,
//!   built-in reproductions of two known counterexamples, and seeded
//!   randomized searches with replayable per-trial seeds.
//!
//! All float math is routed through `libm`, so results are bit-identical
//! with and without the standard library. File formats, JSON reports and
//! the command line live in the companion `leibniz-lab` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
#[macro_use]
extern crate std;

pub mod calculus;
mod error;
pub mod harness;
pub mod linalg;
pub mod norms;
pub mod operators;
pub mod probability;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
