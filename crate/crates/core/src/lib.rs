//! Finite group constructions and exact verification of the counting lemmas
//! behind commutator-rigid ("CR") groups, their two-stage extensions and the
//! profinite products built from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: the [`FiniteGroup`](group::FiniteGroup) abstraction and its
//!   realizations (elementary abelian 2-groups, GF(2) semidirect products,
//!   symmetric groups, direct products), element-level operations and the
//!   group file format.
//! * [`word`]: group words, their parser and evaluator, solution densities,
//!   sections and finite Fubini–Markov sets.
//! * [`cr`]: parameter scans, the automorphisms `π_I`, the first-stage group
//!   `G₁ = G₀ ⋊ H` and the normal-form group `G₂`.
//! * [`verify`]: exhaustive and structured verifiers for the CR axioms, the
//!   index-partition lemma, the commutator identity `[a, y³_I] = y¹_{U₂(a) ∩ I}`,
//!   the `B_I` partition and the pair-count bound.
//! * [`measure`]: cylinder measures on truncated products, `X_c̄` sets,
//!   witness families, tail measures, growth profiles and slalom covers.
//! * [`report`]: the run report shared by the command-line tool.

pub mod bits;
pub mod cr;
pub mod error;
pub mod group;
pub mod measure;
pub mod ratio;
pub mod report;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
