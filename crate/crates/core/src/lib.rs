//! Factor complexity of binary words described by their gap function.
//!
//! A word over `{0, 1}` with infinitely many 1's is encoded by the distances
//! between consecutive 1's. This crate computes its factor complexity `f(n)`
//! and right special factor counts `s(n)` through exact formulas for several
//! regularity classes, cross-checks them against brute-force enumeration,
//! decides whether a prescribed complexity profile is realizable by a gap
//! increasing word, and constructs words with affine complexity.

pub mod automaton;
pub mod blockwise;
pub mod closed_form;
pub mod constructor;
pub mod diagram;
pub mod error;
pub mod gap;
pub mod oracle;
pub mod profile;
pub mod realizability;
pub mod search;

pub use error::{Error, Result};
pub use gap::{classify, BinaryPrefix, ClassReport, GapClass, GapKind, GapSpec, TailRule};
