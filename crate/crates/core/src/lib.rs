//! Exact analysis of the sorting strategy for discreet coin weighing.
//!
//! `p` piles of `k` coins are ordered by weight; the outcome is a
//! [`SortingSequence`]. From it the crate derives every fake-coin count the
//! outcome allows, which of those the outcome proves discreetly, the
//! Frobenius-number thresholds beyond which the allowed counts form an
//! arithmetic progression, and the revealing factor.
//!
//! The [`oracle`] module recomputes the height-bounded facts by brute force
//! and is kept independent of [`solver`] and [`frobenius`].

pub mod cli;
pub mod error;
pub mod frobenius;
pub mod oracle;
pub mod redistribution;
pub mod revealing;
pub mod sequence;
pub mod solver;

pub use error::{Error, Result};
pub use sequence::{BinaryRepresentation, PileProfile, SortingSequence, WeighingInstance};
pub use solver::{Solution, XSolution};
