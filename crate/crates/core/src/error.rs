use thiserror::Error;

use crate::allocation::Violation;
use crate::dynamics::PathViolation;
use crate::graph::ChainKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PagError {
    #[error("country label {label} is outside 1..={n}")]
    CountryOutOfRange { label: usize, n: usize },
    #[error("self-pair ({0}, {0}) is not allowed")]
    SelfPair(usize),
    #[error("pair ({0}, {1}) is listed more than once")]
    DuplicatePair(usize, usize),
    #[error("pair ({0}, {1}) is both a friend and an adversary pair")]
    ConflictingSign(usize, usize),
    #[error("pair ({0}, {1}) is not an edge of the graph")]
    PairNotInGraph(usize, usize),
    #[error("chain has no graphs")]
    EmptyChain,
    #[error("chain graph {index} has {found} countries, expected {expected}")]
    ChainSizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("chain is not {kind:?} between steps {step} and {}", step + 1)]
    ChainKindViolated { kind: ChainKind, step: usize },
    #[error("graph is not a spanning subgraph of the target")]
    NotSpanningSubgraph,
    #[error("invalid power vector: {0}")]
    InvalidPowers(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid strategy matrix ({} violation(s))", .0.len())]
    InvalidMatrix(Vec<Violation>),
    #[error("matrices are defined on different graphs or powers")]
    ScenarioMismatch,
    #[error("invalid allocation path ({} violation(s))", .0.len())]
    InvalidPath(Vec<PathViolation>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("no feasible balanced allocation exists")]
    Infeasible,
}
