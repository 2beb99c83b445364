//! Exact computations on shatter functions of set systems and permutation
//! families.
//!
//! Set systems live on a ground set `[n]` with `n <= 64`; a range is a `u64`
//! mask where bit `i` stands for element `i + 1`. All text I/O is 1-indexed.
//!
//! The crate is organized by topic:
//!
//! * [`setsystem`]: traces, the shatter function, VC-dimension, ideality and
//!   distinguishing sets.
//! * [`compression`]: push-down operators and normalization to an ideal system.
//! * [`bounds`]: closed-form bound families and the generalized Sauer table.
//! * [`constructions`]: explicit extremal families (set systems, graphs,
//!   permutation families).
//! * [`search`]: exact branch-and-bound searches for the extremal problems.
//! * [`perm`] and [`reduction`]: restrictions, pattern containment and the
//!   reduction from permutation families to set systems.
//! * [`verify`]: verification suites combining the above.

pub mod bits;
pub mod bounds;
pub mod compression;
pub mod constructions;
mod error;
pub mod graph;
pub mod io;
pub mod perm;
pub mod reduction;
pub mod search;
pub mod setsystem;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use perm::{Permutation, PermutationFamily};
pub use setsystem::{SetSystem, ShatterProfile};
