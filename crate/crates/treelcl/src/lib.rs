//! Locally checkable labelings (LCLs) on Δ-regular trees.
//!
//! An LCL problem is given by a finite label alphabet, a set of allowed
//! size-Δ vertex multisets, and a set of allowed edge configurations.
//! Every vertex of an instance is padded with virtual half-edges up to
//! degree Δ; a labeling assigns one label per half-edge. Virtual
//! half-edges participate in vertex constraints only.
//!
//! The crate provides:
//!
//! * core types, instance generators, validity checking, JSON/DOT io
//!   ([`problem`], [`instance`], [`labeling`], [`io`]);
//! * simulation of local and uniform (coding-radius) algorithms and
//!   failure-probability estimation ([`sim`]);
//! * the ℓ-full-set condition, decided exactly via a path automaton, and
//!   an O(log n)-layer rake-and-compress solver driven by an ℓ-full
//!   certificate ([`ellfull`], [`rcsolver`]);
//! * constructions relating graph homomorphism problems to LCLs,
//!   including the target graph `H_Δ` ([`homlcl`]);
//! * the playability condition on configuration graphs ([`playability`])
//!   and the marks-game refutation pipeline over ID graphs
//!   ([`marksgame`]);
//! * the one-ended-forest decomposition with its applications to
//!   distance-2 perfect matching and 4-edge-coloring ([`forest`]).
//!
//! The `treelcl` binary exposes the same functionality as subcommands;
//! the `examples/` directory contains one runnable walkthrough per major
//! capability.

pub mod ellfull;
pub mod error;
pub mod forest;
pub mod homlcl;
pub mod instance;
pub mod io;
pub mod labeling;
pub mod marksgame;
pub mod playability;
pub mod problem;
pub mod rcsolver;
pub mod sim;

pub mod cli;

pub use error::Error;

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
