//! Crate-wide error type.

use crate::ladder::Ladder;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("set {set_index}: element {element} out of range for domain size {domain_size}")]
    ElementOutOfRange {
        set_index: usize,
        element: usize,
        domain_size: usize,
    },

    #[error("set {set_index}: bit vector has universe {got}, expected {expected}")]
    UniverseMismatch {
        set_index: usize,
        expected: usize,
        got: usize,
    },

    #[error("domain sizes differ: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },

    #[error("vertex {vertex} is not in the tree")]
    NoSuchVertex { vertex: String },

    #[error("vertex {vertex} is not a leaf")]
    NotALeaf { vertex: String },

    #[error("no label supplied for internal vertex {vertex}")]
    MissingLabel { vertex: String },

    #[error("label {label} at vertex {vertex} is not a valid set index (family size {family_size})")]
    InvalidLabel {
        vertex: String,
        label: usize,
        family_size: usize,
    },

    #[error("operation requires a nonempty family")]
    EmptyFamily,

    #[error("operation requires a nonempty graph")]
    EmptyGraph,

    #[error("budget exhausted after {spent} steps")]
    BudgetExceeded { spent: u64 },

    /// Budget ran out mid-search; carries the best ladder found so far.
    #[error("ladder search budget exhausted; best ladder found has length {}", best.len())]
    LadderBudget { best: Ladder },

    #[error("ladder positions {i} and {j} violate the membership pattern")]
    LadderPattern { i: usize, j: usize },

    #[error("ladder position {i} violates strictness (element lies in its own set)")]
    LadderNotStrict { i: usize },

    #[error("ladder has length {len}, expected an even length")]
    OddLadder { len: usize },

    #[error("ladder has length {len}, expected a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A guaranteed internal cross-check failed. Seeing this means a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("computing tree for label {label} does not compute its set over the reference")]
    ComputingContract { label: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("path is not a maximal root-to-leaf path of the type tree")]
    PathNotInTree,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
