//! Allocation paths on graph chains: decision rules, path validation,
//! terminal outcomes, subgame accounting and subgame-perfection
//! certificates.
//!
//! A path is certified layer by layer. At layer `t` every country faces the
//! stage game on `G(t)` with the deviations its decision rule allows. Under
//! rule 1 the whole row is free. Under rule 1.1 entries on pairs present
//! with the same sign in `G(t-1)` and `G(t)` are frozen, so what a country
//! sank into persisting friends can no longer be pulled back to its own
//! support.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::allocation::{StateVector, StrategyMatrix, Violation};
use crate::equilibrium::{check_nash_capped, NashCertificate};
use crate::graph::{Country, GraphChain, Sign};
use crate::{PagError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecisionRule {
    /// Every step all allocations return to reserve and are redistributed.
    #[serde(rename = "rule1")]
    Rule1,
    /// Allocations on persisting pairs are kept; vanished pairs refund the
    /// reserve; only the reserve funds new pairs.
    #[serde(rename = "rule1.1")]
    Rule1_1,
}

impl DecisionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            DecisionRule::Rule1 => "rule1",
            DecisionRule::Rule1_1 => "rule1.1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rule1" | "1" => Some(DecisionRule::Rule1),
            "rule1.1" | "1.1" => Some(DecisionRule::Rule1_1),
            _ => None,
        }
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathViolationKind {
    LengthMismatch {
        graphs: usize,
        matrices: usize,
    },
    /// The matrix at this layer is defined on a different graph or powers
    /// than the chain (or the first layer) says.
    GraphMismatch,
    Matrix {
        violation: Violation,
    },
    /// Rule 1.1 breach: an entry on a persisting pair changed.
    PersistingEntryChanged {
        row: Country,
        column: Country,
        before: f64,
        after: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathViolation {
    /// Layer of the offending matrix, or the target layer of a transition.
    pub step: usize,
    pub kind: PathViolationKind,
}

/// Chain plus one strategy matrix per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationPath {
    chain: GraphChain,
    matrices: Vec<StrategyMatrix>,
    rule: DecisionRule,
}

impl AllocationPath {
    /// Builds a path, rejecting it unless it is playable under `rule`.
    pub fn new(
        chain: GraphChain,
        matrices: Vec<StrategyMatrix>,
        rule: DecisionRule,
    ) -> Result<Self> {
        let path = AllocationPath::unchecked(chain, matrices, rule);
        let violations = validate_path(&path);
        if violations.is_empty() {
            Ok(path)
        } else {
            Err(PagError::InvalidPath(violations))
        }
    }

    pub fn unchecked(chain: GraphChain, matrices: Vec<StrategyMatrix>, rule: DecisionRule) -> Self {
        AllocationPath {
            chain,
            matrices,
            rule,
        }
    }

    pub fn chain(&self) -> &GraphChain {
        &self.chain
    }

    pub fn matrices(&self) -> &[StrategyMatrix] {
        &self.matrices
    }

    pub fn rule(&self) -> DecisionRule {
        self.rule
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn terminal(&self) -> Option<&StrategyMatrix> {
        self.matrices.last()
    }

    /// The same chain and matrices read under another rule.
    pub fn with_rule(&self, rule: DecisionRule) -> AllocationPath {
        AllocationPath {
            rule,
            ..self.clone()
        }
    }
}

fn persisting_pairs(prev: &StrategyMatrix, next: &StrategyMatrix) -> Vec<(Country, Country, Sign)> {
    let (a, b) = (prev.graph(), next.graph());
    let mut out = Vec::new();
    for i in 1..=a.n() {
        for j in 1..=a.n() {
            if let Some(s) = a.sign(i, j) {
                if b.sign(i, j) == Some(s) {
                    out.push((i, j, s));
                }
            }
        }
    }
    out
}

fn transition_breaches(
    prev: &StrategyMatrix,
    next: &StrategyMatrix,
    rule: DecisionRule,
) -> Vec<(Country, Country, f64, f64)> {
    if rule == DecisionRule::Rule1 {
        return Vec::new();
    }
    let thr = prev.threshold().max(next.threshold());
    persisting_pairs(prev, next)
        .into_iter()
        .filter_map(|(i, j, _)| {
            let (before, after) = (prev.get(i, j), next.get(i, j));
            ((before - after).abs() > thr).then_some((i, j, before, after))
        })
        .collect()
}

/// Whether `next` may follow `prev` under `rule`. Both matrices must be valid
/// on their own graphs and share powers and size.
pub fn legal_transition(
    prev: &StrategyMatrix,
    next: &StrategyMatrix,
    rule: DecisionRule,
) -> Result<bool> {
    if prev.n() != next.n() || prev.powers() != next.powers() {
        return Err(PagError::ScenarioMismatch);
    }
    prev.ensure_valid()?;
    next.ensure_valid()?;
    Ok(transition_breaches(prev, next, rule).is_empty())
}

/// Every reason the path is not playable; empty when it is.
pub fn validate_path(path: &AllocationPath) -> Vec<PathViolation> {
    let graphs = path.chain.graphs();
    let mats = &path.matrices;
    if graphs.len() != mats.len() || mats.is_empty() {
        return vec![PathViolation {
            step: 0,
            kind: PathViolationKind::LengthMismatch {
                graphs: graphs.len(),
                matrices: mats.len(),
            },
        }];
    }
    let mut out = Vec::new();
    for (t, (g, u)) in graphs.iter().zip(mats).enumerate() {
        if u.graph() != g || u.powers() != mats[0].powers() {
            out.push(PathViolation {
                step: t,
                kind: PathViolationKind::GraphMismatch,
            });
            continue;
        }
        out.extend(u.validate().into_iter().map(|violation| PathViolation {
            step: t,
            kind: PathViolationKind::Matrix { violation },
        }));
    }
    if !out.is_empty() {
        // transitions between malformed layers are not meaningful
        return out;
    }
    for t in 1..mats.len() {
        for (row, column, before, after) in transition_breaches(&mats[t - 1], &mats[t], path.rule) {
            out.push(PathViolation {
                step: t,
                kind: PathViolationKind::PersistingEntryChanged {
                    row,
                    column,
                    before,
                    after,
                },
            });
        }
    }
    out
}

fn ensure_playable(path: &AllocationPath) -> Result<()> {
    let v = validate_path(path);
    if v.is_empty() {
        Ok(())
    } else {
        Err(PagError::InvalidPath(v))
    }
}

/// States realised by the last matrix of a playable path.
pub fn terminal_outcome(path: &AllocationPath) -> Result<StateVector> {
    ensure_playable(path)?;
    Ok(path
        .terminal()
        .expect("playable paths are nonempty")
        .classify())
}

/// Largest contribution each country's row can make to its own support at
/// layer `t`, given the rule.
pub fn deviation_caps(path: &AllocationPath, t: usize) -> Vec<f64> {
    let cur = &path.matrices[t];
    let mut caps: Vec<f64> = cur.powers().as_slice().to_vec();
    if t == 0 || path.rule == DecisionRule::Rule1 {
        return caps;
    }
    for (i, j, sign) in persisting_pairs(&path.matrices[t - 1], cur) {
        if sign == Sign::Friend {
            caps[i - 1] -= cur.get(i, j);
        }
    }
    caps
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpneCertificate {
    pub holds: bool,
    pub rule: DecisionRule,
    pub per_layer: Vec<NashCertificate>,
}

impl SpneCertificate {
    /// Layers whose stage check failed.
    pub fn failing_layers(&self) -> Vec<usize> {
        self.per_layer
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.holds)
            .map(|(t, _)| t)
            .collect()
    }
}

/// Certifies a playable path as a subgame-perfect equilibrium by checking
/// the rule-restricted stage game at every layer it traverses.
pub fn check_spne(path: &AllocationPath) -> Result<SpneCertificate> {
    ensure_playable(path)?;
    let per_layer: Vec<NashCertificate> = (0..path.len())
        .map(|t| check_nash_capped(&path.matrices[t], &deviation_caps(path, t)))
        .collect();
    Ok(SpneCertificate {
        holds: per_layer.iter().all(|c| c.holds),
        rule: path.rule,
        per_layer,
    })
}

/// A subgame rooted at layer `layer`, reached through the history of the
/// first `layer` matrices of a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgameIndex {
    pub layer: usize,
}

impl SubgameIndex {
    pub fn history<'a>(&self, path: &'a AllocationPath) -> &'a [StrategyMatrix] {
        &path.matrices[..self.layer]
    }
}

/// The subgames a path traverses, one per layer.
pub fn traversed_subgames(path: &AllocationPath) -> Vec<SubgameIndex> {
    (0..path.len())
        .map(|layer| SubgameIndex { layer })
        .collect()
}

/// Decision nodes (equivalently, subgames) of a layered tree over `chain`
/// where every node at layer `t` has `branching[t]` children.
pub fn count_subgames(chain: &GraphChain, branching: &[u64]) -> Result<u64> {
    if branching.len() != chain.len() {
        return Err(PagError::DimensionMismatch {
            expected: chain.len(),
            found: branching.len(),
        });
    }
    let overflow = || PagError::Overflow("decision node count".into());
    let mut width: u64 = 1;
    let mut total: u64 = 0;
    for (t, &b) in branching.iter().enumerate() {
        total = total.checked_add(width).ok_or_else(overflow)?;
        if t + 1 < branching.len() {
            width = width.checked_mul(b).ok_or_else(overflow)?;
        }
    }
    Ok(total)
}

/// Number of distinct state vectors, `3^n`.
pub fn outcome_space_size(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(PagError::Precondition("at least one country".into()));
    }
    u32::try_from(n)
        .ok()
        .and_then(|e| 3u64.checked_pow(e))
        .ok_or_else(|| PagError::Overflow(format!("3^{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::State;
    use crate::graph::{ChainKind, SignedGraph};
    use crate::PowerVector;

    fn constant_reserve_path(
        g: SignedGraph,
        p: &[f64],
        layers: usize,
        rule: DecisionRule,
    ) -> AllocationPath {
        let p = PowerVector::new(p.to_vec()).unwrap();
        let u = StrategyMatrix::reserve(g.clone(), p).unwrap();
        let chain = GraphChain::new(vec![g; layers], ChainKind::Ascending).unwrap();
        AllocationPath::new(chain, vec![u; layers], rule).unwrap()
    }

    #[test]
    fn reserve_paths_are_playable_and_certified() {
        for rule in [DecisionRule::Rule1, DecisionRule::Rule1_1] {
            let path = constant_reserve_path(SignedGraph::edgeless(3), &[1.0, 2.0, 3.0], 3, rule);
            assert!(validate_path(&path).is_empty());
            assert_eq!(terminal_outcome(&path).unwrap().count(State::Safe), 3);
            let cert = check_spne(&path).unwrap();
            assert!(cert.holds);
            assert_eq!(cert.per_layer.len(), 3);
        }
    }

    fn adversary_pair_chain() -> (GraphChain, PowerVector) {
        let g = SignedGraph::new(2, [], [(1, 2)]).unwrap();
        let chain = GraphChain::new(vec![g.clone(), g.clone(), g], ChainKind::Ascending).unwrap();
        (chain, PowerVector::new(vec![2.0, 2.0]).unwrap())
    }

    #[test]
    fn budget_breach_is_reported_at_its_layer() {
        let (chain, p) = adversary_pair_chain();
        let g = chain.graphs()[0].clone();
        let good = StrategyMatrix::reserve(g.clone(), p.clone()).unwrap();
        let bad = StrategyMatrix::from_rows_unchecked(g, p, vec![vec![1.0, 0.0], vec![0.0, 2.0]])
            .unwrap();
        let path =
            AllocationPath::unchecked(chain, vec![good.clone(), bad, good], DecisionRule::Rule1);
        let v = validate_path(&path);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].step, 1);
        assert!(matches!(v[0].kind, PathViolationKind::Matrix { .. }));
        assert!(matches!(check_spne(&path), Err(PagError::InvalidPath(_))));
    }

    #[test]
    fn rule_1_1_freezes_persisting_entries() {
        let (chain, p) = adversary_pair_chain();
        let g = chain.graphs()[0].clone();
        let a = StrategyMatrix::new(g.clone(), p.clone(), vec![vec![1.0, 1.0], vec![1.0, 1.0]])
            .unwrap();
        let b = StrategyMatrix::new(g, p, vec![vec![0.0, 2.0], vec![1.0, 1.0]]).unwrap();
        assert!(legal_transition(&a, &a, DecisionRule::Rule1_1).unwrap());
        assert!(legal_transition(&a, &b, DecisionRule::Rule1).unwrap());
        assert!(!legal_transition(&a, &b, DecisionRule::Rule1_1).unwrap());

        let path = AllocationPath::unchecked(chain, vec![a.clone(), a, b], DecisionRule::Rule1_1);
        let v = validate_path(&path);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].step, 2);
        assert_eq!(
            v[0].kind,
            PathViolationKind::PersistingEntryChanged {
                row: 1,
                column: 2,
                before: 1.0,
                after: 2.0
            }
        );
        assert!(validate_path(&path.with_rule(DecisionRule::Rule1)).is_empty());
    }

    #[test]
    fn rescuable_unsafe_country_fails_the_last_layer() {
        let g = SignedGraph::new(3, [(1, 2)], [(1, 3)]).unwrap();
        let p = PowerVector::new(vec![2.0, 1.0, 1.0]).unwrap();
        let reserve = StrategyMatrix::reserve(g.clone(), p.clone()).unwrap();
        let misplaced = StrategyMatrix::new(
            g.clone(),
            p,
            vec![
                vec![0.0, 2.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![1.0, 0.0, 0.0],
            ],
        )
        .unwrap();
        let chain = GraphChain::new(vec![g.clone(), g], ChainKind::Ascending).unwrap();
        let path =
            AllocationPath::new(chain, vec![reserve, misplaced], DecisionRule::Rule1).unwrap();
        let cert = check_spne(&path).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.failing_layers(), vec![1]);
    }

    #[test]
    fn locked_friend_allocation_separates_the_rules() {
        // Country 1 sinks its power into friend 2 before adversary 3 appears.
        // Under rule 1.1 that allocation stays frozen, so 1 cannot rescue
        // itself at layer 1; under rule 1 it can.
        let g0 = SignedGraph::new(3, [(1, 2)], []).unwrap();
        let g1 = SignedGraph::new(3, [(1, 2)], [(1, 3)]).unwrap();
        let p = PowerVector::new(vec![2.0, 0.0, 3.0]).unwrap();
        let u0 = StrategyMatrix::new(
            g0.clone(),
            p.clone(),
            vec![
                vec![0.0, 2.0, 0.0],
                vec![0.0, 0.0, 0.0],
                vec![0.0, 0.0, 3.0],
            ],
        )
        .unwrap();
        let u1 = StrategyMatrix::new(
            g1.clone(),
            p,
            vec![
                vec![0.0, 2.0, 0.0],
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.0, 2.0],
            ],
        )
        .unwrap();
        let chain = GraphChain::new(vec![g0, g1], ChainKind::Ascending).unwrap();
        let path = AllocationPath::new(chain, vec![u0, u1], DecisionRule::Rule1_1).unwrap();
        assert_eq!(deviation_caps(&path, 1), vec![0.0, 0.0, 3.0]);
        assert!(check_spne(&path).unwrap().holds);
        assert!(
            !check_spne(&path.with_rule(DecisionRule::Rule1))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn subgame_and_outcome_counts() {
        let g = SignedGraph::edgeless(2);
        let chain3 = GraphChain::new(vec![g.clone(); 3], ChainKind::Ascending).unwrap();
        let chain2 = GraphChain::new(vec![g; 2], ChainKind::Ascending).unwrap();
        assert_eq!(count_subgames(&chain3, &[1, 1, 1]).unwrap(), 3);
        assert_eq!(count_subgames(&chain2, &[2, 2]).unwrap(), 3);
        assert_eq!(count_subgames(&chain2, &[3, 2]).unwrap(), 4);
        assert!(count_subgames(&chain2, &[3]).is_err());
        assert!(matches!(
            count_subgames(&chain3, &[u64::MAX, u64::MAX, 1]),
            Err(PagError::Overflow(_))
        ));

        assert_eq!(outcome_space_size(1).unwrap(), 3);
        assert_eq!(outcome_space_size(2).unwrap(), 9);
        assert_eq!(outcome_space_size(10).unwrap(), 59049);
        assert!(outcome_space_size(0).is_err());
        assert!(outcome_space_size(41).is_err());
    }

    #[test]
    fn traversed_subgames_follow_layers() {
        let path = constant_reserve_path(
            SignedGraph::edgeless(2),
            &[1.0, 1.0],
            3,
            DecisionRule::Rule1,
        );
        let subgames = traversed_subgames(&path);
        assert_eq!(subgames.len(), 3);
        assert_eq!(subgames[2].history(&path).len(), 2);
        assert!(subgames[0].history(&path).is_empty());
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in [DecisionRule::Rule1, DecisionRule::Rule1_1] {
            assert_eq!(DecisionRule::parse(rule.as_str()), Some(rule));
        }
        assert_eq!(DecisionRule::parse("rule2"), None);
    }
}
