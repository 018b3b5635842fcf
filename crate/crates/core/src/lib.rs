//! Exact computation of the intersection functional on rational subset
//! currents of a free group.
//!
//! Subgroups are handled through their Stallings core graphs, intersections
//! through fiber products, and currents as finite rational combinations of
//! counting currents evaluated on subtree cylinders.

pub mod automorphisms;
pub mod cli;
pub mod currents;
pub mod error;
pub mod fiber;
pub mod stallings;
pub mod word;

pub use currents::{FiniteSubtree, Rational, RationalCurrent};
pub use error::{Error, Result};
pub use stallings::{BasedCoreGraph, CanonicalKey, CoreGraph, LabeledGraph};
pub use word::{Alphabet, Letter, Word};
