//! Shatter-function complexity of finite set systems.
//!
//! A *set system* is a finite ground set together with a family of subsets.
//! This crate measures how combinatorially rich such a family is when probed
//! with labeled binary trees rather than with plain subsets:
//!
//! * [`complexity::thicket_dim`] — the depth of the deepest *full* balanced
//!   labeled tree, a tree-shaped analogue of VC dimension;
//! * [`complexity::rho`] — the thicket shatter function, with a binomial-sum
//!   bound certified by [`complexity::sauer_shelah_report`];
//! * [`ladder`] — order-property witnesses (ladders) and the constructions
//!   converting between long ladders and deep full trees;
//! * [`graph`] — neighborhood systems of graphs, half-graph containment, type
//!   trees, and extraction of large cliques or independent sets;
//! * [`decision`] — set-labeled decision trees, tree composition, and minimum
//!   decision depth for lower-bound experiments.
//!
//! Everything is exact and deterministic; searches that can blow up take an
//! explicit [`budget::Budget`].

pub mod bitset;
pub mod budget;
pub mod complexity;
pub mod decision;
pub mod error;
pub mod graph;
pub mod ladder;
pub mod report;
pub mod setsystem;
pub mod tree;

pub use bitset::BitSet;
pub use budget::Budget;
pub use error::Error;
pub use setsystem::SetSystem;
pub use tree::{Dir, LabeledTree, Vertex};
