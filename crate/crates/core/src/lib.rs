//! Graph Upsilon invariants of multi-graded tangle complexes.
//!
//! Start from a [`graph::LabeledGraph`], load a [`complex::TangleComplex`] over
//! it, then evaluate Upsilon pointwise with [`homology::Evaluator`] or along
//! segments with [`pl::reconstruct_segment`]. All arithmetic is exact.
//!
//! [`pl`] also reads τ, derivative jumps and the `f_i` components off those
//! segments. [`oracle`] holds slow independent references, [`corpus`] the
//! named regression complexes, and [`selftest`] the acceptance checks.

pub mod complex;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod homology;
pub mod oracle;
pub mod pl;
pub mod polytope;
pub mod rational;
pub mod ring;
pub mod selftest;

pub use complex::TangleComplex;
pub use error::{Error, Result};
pub use graph::{LabeledGraph, Matching};
pub use polytope::{DeltaComplex, WeightVector};
pub use rational::Rational;
