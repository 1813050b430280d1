//! Exact solvers for the broadcast independence number.
//!
//! An independent broadcast on a connected graph assigns every vertex a
//! nonnegative value no larger than its eccentricity, such that two
//! positive vertices are always further apart than the larger of their
//! values. This crate provides
//!
//! * [`tree_dp`]: a polynomial-time dynamic program for trees,
//! * [`oracle`]: brute-force and branch-and-bound ground truth for small
//!   graphs,
//! * [`reduction`]: the degree-4 gadget built from a cubic graph, together
//!   with the broadcast rewrites and set extraction used to compare the
//!   broadcast and ordinary independence numbers on it,
//!
//! along with the graph, envelope and file-format plumbing they share.

pub mod envelope;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod rng;
pub mod tree_dp;

pub use envelope::Envelope;
pub use error::{Error, Result};
pub use graph::{DistanceTable, Graph, UNREACHABLE};
pub use oracle::{Broadcast, VertexSet};
