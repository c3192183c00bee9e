//! Deciding 3-colorability of (claw, diamond)-free graphs.
//!
//! A connected (claw, diamond, K4)-free graph is the line graph of a subcubic
//! triangle-free graph, and a graph is k-colorable exactly when its root graph
//! is k-edge-colorable. This crate decides 3-colorability for several
//! subclasses by working on the edge-coloring side: it reconstructs the root
//! graph, applies colorability-preserving reductions, runs structural
//! deciders, and returns machine-checkable certificates — a proper coloring,
//! a K4 witness, or an embedding of one of the known exceptional families.
//!
//! The [`oracle`] module provides ground truth at small scale: exhaustive
//! enumeration of connected subcubic triangle-free graphs up to isomorphism
//! and the exact chromatic index, used to cross-validate every structural
//! decider.

pub mod canon;
pub mod decide;
pub mod edge_color;
pub mod families;
pub mod format;
pub mod graph;
pub mod linegraph;
pub mod oracle;
pub mod patterns;
pub mod reductions;

pub use decide::{decide_auto, Outcome, Verdict};
pub use graph::Graph;
