//! Power allocation games on signed graphs.
//!
//! Countries sit on a signed environment graph (friend `+` and adversary `-`
//! edges) and split a fixed total power between their own reserve, their
//! friends and their adversaries. This crate evaluates allocations, certifies
//! stage-game Nash equilibria and balanced equilibria, and certifies or
//! builds subgame-perfect allocation paths on chains of spanning subgraphs.
//!
//! Country labels are 1-based everywhere in the public API.
//!
//! ```
//! use pag::{SignedGraph, PowerVector, StrategyMatrix, State};
//!
//! let g = SignedGraph::new(2, [], [(1, 2)]).unwrap();
//! let p = PowerVector::new(vec![2.0, 1.0]).unwrap();
//! let u = StrategyMatrix::new(g, p, vec![vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
//! assert_eq!(u.state(1), State::Safe);
//! assert_eq!(u.state(2), State::Precarious);
//! ```

pub mod allocation;
pub mod cli;
pub mod congestion;
pub mod construct;
pub mod dot;
pub mod dynamics;
pub mod equilibrium;
mod error;
mod format;
pub mod graph;
mod lp;
pub mod preference;
pub mod scenario;

pub use allocation::{
    PowerVector, State, StateVector, StrategyMatrix, Violation, ViolationKind, DEFAULT_TOLERANCE,
    STRICT_MARGIN,
};
pub use construct::{
    balanced_spne, lexicographic_ordering, pair_traversal, petersen_example, petersen_graph,
    precarious_ordering, sole_survivor, spne_from_zero_pair, spne_rule1, Guarantee,
    PairTraversalTrace, SoleSurvivor, SurvivorCase,
};
pub use dot::export_dot;
pub use dynamics::{
    check_spne, count_subgames, legal_transition, outcome_space_size, terminal_outcome,
    traversed_subgames, validate_path, AllocationPath, DecisionRule, PathViolation,
    PathViolationKind, SpneCertificate, SubgameIndex,
};
pub use equilibrium::{
    brute_force_nash_oracle, check_balanced, check_nash, construct_balanced, BalancedCertificate,
    BalancedCondition, BalancedConstruction, CountryVerdict, NashCertificate,
};
pub use error::PagError;
pub use graph::{
    count_extensions, enumerate_extensions, validate_chain, ChainKind, Country, ExtensionCount,
    GraphChain, Pair, Sign, SignedGraph,
};
pub use preference::{indifferent, strongly_prefers, weakly_prefers, PreferenceVerdict};
pub use scenario::{load_scenario, IssueKind, Scenario, ScenarioIssue};

pub type Result<T, E = PagError> = std::result::Result<T, E>;
