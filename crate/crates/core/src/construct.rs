//! Constructive procedures that produce certified allocation paths.
//!
//! * [`spne_from_zero_pair`]: replay a stage equilibrium on a two-layer chain
//!   that adds a pair the equilibrium leaves untouched.
//! * [`spne_rule1`]: a stage equilibrium per layer of an arbitrary chain.
//! * [`balanced_spne`]: realise a balanced equilibrium at the end of a
//!   two-layer chain.
//! * [`pair_traversal`]: visit adversary pairs in order, committing the
//!   smaller residual power to both sides of each pair.
//! * [`precarious_ordering`]: pair traversal that drives a chosen country to
//!   exactly precarious.
//! * [`sole_survivor`]: on a complete adversary graph, a two-layer chain
//!   that leaves only the chosen country safe.

use serde::Serialize;

use crate::allocation::{compare, PowerVector, State, StrategyMatrix};
use crate::dynamics::{AllocationPath, DecisionRule};
use crate::equilibrium::{check_balanced, check_nash, construct_balanced, BalancedConstruction};
use crate::graph::{ChainKind, Country, GraphChain, Pair, Sign, SignedGraph};
use crate::{PagError, Result};

fn ensure_same_scenario(g: &SignedGraph, p: &PowerVector, u: &StrategyMatrix) -> Result<()> {
    if u.graph() != g || u.powers() != p {
        Err(PagError::ScenarioMismatch)
    } else {
        Ok(())
    }
}

fn ensure_powers(g: &SignedGraph, p: &PowerVector) -> Result<()> {
    if g.n() != p.len() {
        Err(PagError::DimensionMismatch {
            expected: g.n(),
            found: p.len(),
        })
    } else {
        Ok(())
    }
}

/// Two-layer ascending chain `[g - pair, g]` with `U(0) = U(1) = u_star`.
///
/// `u_star` must be a stage equilibrium on `g` that places nothing on
/// `pair` in either direction.
pub fn spne_from_zero_pair(
    g: &SignedGraph,
    p: &PowerVector,
    u_star: &StrategyMatrix,
    pair: (Country, Country),
) -> Result<AllocationPath> {
    ensure_same_scenario(g, p, u_star)?;
    let pair = Pair::from(pair);
    let (i, j) = (pair.lo(), pair.hi());
    let before = g.without_pair(pair)?;
    if !check_nash(u_star)?.holds {
        return Err(PagError::Precondition(
            "the given matrix is not a stage Nash equilibrium".into(),
        ));
    }
    let thr = u_star.threshold();
    if u_star.get(i, j) > thr || u_star.get(j, i) > thr {
        return Err(PagError::Precondition(format!(
            "allocations on {pair} are not both zero"
        )));
    }
    let u0 = u_star.on_graph(before.clone())?;
    let chain = GraphChain::new(vec![before, g.clone()], ChainKind::Ascending)?;
    AllocationPath::new(chain, vec![u0, u_star.clone()], DecisionRule::Rule1_1)
}

/// Rule-1 path with the final pair-traversal matrix of each layer's graph
/// (lexicographic pair order) at that layer.
pub fn spne_rule1(chain: &GraphChain, p: &PowerVector) -> Result<AllocationPath> {
    let mut matrices = Vec::with_capacity(chain.len());
    for g in chain.graphs() {
        let trace = pair_traversal(g, p, &lexicographic_ordering(g))?;
        matrices.push(trace.final_matrix().clone());
    }
    AllocationPath::new(chain.clone(), matrices, DecisionRule::Rule1)
}

/// Realises a balanced equilibrium `u_star` as the last layer of a two-layer
/// ascending chain.
///
/// With adversaries present, the chain adds one adversary pair (`pair`, or
/// the lexicographically first one) and `U(0)` moves that pair's mirrored
/// allocation into both reserves. Without adversaries it falls back to
/// [`spne_from_zero_pair`] on the first friend pair.
pub fn balanced_spne(
    g: &SignedGraph,
    p: &PowerVector,
    u_star: &StrategyMatrix,
    pair: Option<(Country, Country)>,
) -> Result<AllocationPath> {
    ensure_same_scenario(g, p, u_star)?;
    if !check_balanced(u_star)?.holds {
        return Err(PagError::Precondition(
            "the given matrix is not a balanced equilibrium".into(),
        ));
    }
    if g.adversary_pairs().is_empty() {
        let first =
            g.friend_pairs().iter().next().ok_or_else(|| {
                PagError::UnsupportedInstance("graph has no edge to withhold".into())
            })?;
        return Ok(spne_from_zero_pair(g, p, u_star, (first.lo(), first.hi()))?
            .with_rule(DecisionRule::Rule1));
    }
    let pair = match pair {
        Some(pr) => {
            let pr = Pair::from(pr);
            if !g.is_adversary(pr.lo(), pr.hi()) {
                return Err(PagError::Precondition(format!(
                    "{pr} is not an adversary pair"
                )));
            }
            pr
        }
        None => *g.adversary_pairs().iter().next().expect("nonempty"),
    };
    let (i, j) = (pair.lo(), pair.hi());
    let before = g.without_pair(pair)?;
    let mut u0 = u_star.clone();
    let (uij, uji) = (u_star.get(i, j), u_star.get(j, i));
    u0.set(i, j, 0.0);
    u0.set(j, i, 0.0);
    u0.set(i, i, u_star.get(i, i) + uij);
    u0.set(j, j, u_star.get(j, j) + uji);
    let u0 = u0.on_graph(before.clone())?;
    let chain = GraphChain::new(vec![before, g.clone()], ChainKind::Ascending)?;
    AllocationPath::new(chain, vec![u0, u_star.clone()], DecisionRule::Rule1)
}

/// Adversary pairs sorted by `(lower label, higher label)`.
pub fn lexicographic_ordering(g: &SignedGraph) -> Vec<Pair> {
    g.adversary_pairs().iter().copied().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraversalStep {
    pub pair: (Country, Country),
    /// Amount committed by each side to the other.
    pub amount: f64,
}

/// Record of a pair traversal: the ordering, the residual (unspent) power of
/// every country after each step, and the emitted rule-1.1 path whose chain
/// starts at the friend edges and adds one adversary pair per step.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTraversalTrace {
    pub steps: Vec<TraversalStep>,
    /// `residuals[t][i-1]` is country `i`'s residual after `t` steps.
    pub residuals: Vec<Vec<f64>>,
    pub path: AllocationPath,
}

impl PairTraversalTrace {
    pub fn final_matrix(&self) -> &StrategyMatrix {
        self.path.terminal().expect("traversal paths are nonempty")
    }

    pub fn ordering(&self) -> Vec<Pair> {
        self.steps.iter().map(|s| Pair::from(s.pair)).collect()
    }
}

pub fn pair_traversal(
    g: &SignedGraph,
    p: &PowerVector,
    ordering: &[Pair],
) -> Result<PairTraversalTrace> {
    ensure_powers(g, p)?;
    let mut sorted: Vec<Pair> = ordering.to_vec();
    sorted.sort();
    let expected = lexicographic_ordering(g);
    if sorted != expected {
        return Err(PagError::Precondition(
            "ordering must list every adversary pair exactly once".into(),
        ));
    }

    let mut graph = g.friend_part();
    let mut u = StrategyMatrix::reserve(graph.clone(), p.clone())?;
    let mut residual: Vec<f64> = p.as_slice().to_vec();
    let mut graphs = vec![graph.clone()];
    let mut matrices = vec![u.clone()];
    let mut residuals = vec![residual.clone()];
    let mut steps = Vec::with_capacity(ordering.len());

    for &pair in ordering {
        let (i, j) = (pair.lo(), pair.hi());
        let amount = residual[i - 1].min(residual[j - 1]);
        residual[i - 1] -= amount;
        residual[j - 1] -= amount;
        graph = graph.with_edge(pair, Sign::Adversary)?;
        u = u.on_graph(graph.clone())?;
        u.set(i, j, amount);
        u.set(j, i, amount);
        u.set(i, i, residual[i - 1]);
        u.set(j, j, residual[j - 1]);
        u.ensure_valid()?;
        graphs.push(graph.clone());
        matrices.push(u.clone());
        residuals.push(residual.clone());
        steps.push(TraversalStep {
            pair: (i, j),
            amount,
        });
    }

    let chain = GraphChain::new(graphs, ChainKind::Ascending)?;
    let path = AllocationPath::new(chain, matrices, DecisionRule::Rule1_1)?;
    Ok(PairTraversalTrace {
        steps,
        residuals,
        path,
    })
}

/// Pair traversal visiting every adversary pair of `i` first, which spends
/// all of `i`'s power when its adversaries together are at least as
/// strong, leaving `i` precarious at the end.
pub fn precarious_ordering(
    g: &SignedGraph,
    p: &PowerVector,
    i: Country,
) -> Result<PairTraversalTrace> {
    ensure_powers(g, p)?;
    g.check_label(i)?;
    let adversaries = g.adversaries_of(i)?;
    if adversaries.is_empty() {
        return Err(PagError::Precondition(format!(
            "country {i} has no adversaries"
        )));
    }
    let opposing: f64 = adversaries.iter().map(|&j| p.get(j)).sum();
    if p.get(i) > opposing + crate::DEFAULT_TOLERANCE * p.total() {
        return Err(PagError::Precondition(format!(
            "p_{i} = {} exceeds the total power of its adversaries ({opposing})",
            p.get(i)
        )));
    }
    let (mut ordering, rest): (Vec<Pair>, Vec<Pair>) = lexicographic_ordering(g)
        .into_iter()
        .partition(|e| e.contains(i));
    ordering.extend(rest);
    pair_traversal(g, p, &ordering)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SurvivorCase {
    /// Some other country outweighs the rest of the first-layer graph and
    /// overwhelms every other country there.
    Dominant { country: Country },
    /// No dominant country: the first layer is a balanced equilibrium.
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "guarantee", rename_all = "snake_case")]
pub enum Guarantee {
    /// Target safe and every other country unsafe.
    Strict,
    /// Equality in the power condition: the listed countries end in the
    /// listed states instead of the promised ones.
    Degraded { shortfalls: Vec<(Country, State)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoleSurvivor {
    pub path: AllocationPath,
    pub case: SurvivorCase,
    pub guarantee: Guarantee,
}

/// On a complete adversary graph with `p_j <= sum of its adversaries'
/// power` for every `j`, builds the rule-1.1 chain `[g with i isolated, g]`
/// that ends with only `i` safe.
pub fn sole_survivor(g: &SignedGraph, p: &PowerVector, i: Country) -> Result<SoleSurvivor> {
    ensure_powers(g, p)?;
    g.check_label(i)?;
    let n = g.n();
    if n < 3 {
        return Err(PagError::UnsupportedInstance(
            "the isolated-target chain needs at least three countries".into(),
        ));
    }
    if !g.is_complete_adversary() {
        return Err(PagError::Precondition(
            "graph must be complete with adversary edges only".into(),
        ));
    }
    let total = p.total();
    let thr = crate::DEFAULT_TOLERANCE * total;
    for j in 1..=n {
        if p.get(j) > total - p.get(j) + thr {
            return Err(PagError::Precondition(format!(
                "p_{j} = {} exceeds the total power of its adversaries",
                p.get(j)
            )));
        }
    }

    let first = g.isolate(i)?;
    let others: Vec<Country> = (1..=n).filter(|&k| k != i).collect();
    let rest_total: f64 = others.iter().map(|&k| p.get(k)).sum();
    // slack of j over the other non-target countries
    let dominant = others
        .iter()
        .map(|&j| (j, p.get(j) - (rest_total - p.get(j))))
        .filter(|&(_, slack)| slack > thr)
        .fold(None::<(Country, f64)>, |best, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        });

    let mut rows = vec![vec![0.0; n]; n];
    rows[i - 1][i - 1] = p.get(i);
    let case = match dominant {
        Some((j, slack)) => {
            let victims: Vec<Country> = others.iter().copied().filter(|&k| k != j).collect();
            let extra = slack / victims.len() as f64;
            for &k in &victims {
                rows[j - 1][k - 1] = p.get(k) + extra;
                rows[k - 1][j - 1] = p.get(k);
            }
            SurvivorCase::Dominant { country: j }
        }
        None => {
            let u = match construct_balanced(&first, p)? {
                BalancedConstruction::Found(u) => u,
                BalancedConstruction::Infeasible => return Err(PagError::Infeasible),
            };
            rows = u.rows();
            SurvivorCase::Balanced
        }
    };
    let u0 = StrategyMatrix::new(first.clone(), p.clone(), rows.clone())?;

    rows[i - 1][i - 1] = 0.0;
    match case {
        SurvivorCase::Dominant { country: j } => rows[i - 1][j - 1] = p.get(i),
        SurvivorCase::Balanced => {
            let share = p.get(i) / (n - 1) as f64;
            for &k in &others {
                rows[i - 1][k - 1] = share;
            }
        }
    }
    let u1 = StrategyMatrix::new(g.clone(), p.clone(), rows)?;

    let chain = GraphChain::new(vec![first, g.clone()], ChainKind::Ascending)?;
    let path = AllocationPath::new(chain, vec![u0, u1], DecisionRule::Rule1_1)?;
    let last = path.terminal().expect("two layers");
    let shortfalls: Vec<(Country, State)> = (1..=n)
        .map(|k| {
            (
                k,
                compare(last.support(k), last.threat(k), last.threshold()),
            )
        })
        .filter(|&(k, s)| {
            if k == i {
                s != State::Safe
            } else {
                s != State::Unsafe
            }
        })
        .collect();
    let guarantee = if shortfalls.is_empty() {
        Guarantee::Strict
    } else {
        Guarantee::Degraded { shortfalls }
    };
    Ok(SoleSurvivor {
        path,
        case,
        guarantee,
    })
}

/// Petersen graph: outer 5-cycle `1..5` and inner pentagram `6..10` as
/// adversary cycles, spokes `k -- k+5` as friend pairs. Every country has
/// two adversaries and one external friend.
pub fn petersen_graph() -> SignedGraph {
    let outer = (0..5).map(|k| (k + 1, (k + 1) % 5 + 1));
    let inner = (0..5).map(|k| (k + 6, (k + 2) % 5 + 6));
    let spokes = (1..=5).map(|k| (k, k + 5));
    SignedGraph::new(10, spokes, outer.chain(inner)).expect("well-formed")
}

/// Two-layer chain from the two adversary cycles alone to the full Petersen
/// graph, holding a balanced equilibrium on both layers.
pub fn petersen_example(p: &PowerVector) -> Result<AllocationPath> {
    let g = petersen_graph();
    ensure_powers(&g, p)?;
    let u = construct_balanced(&g, p)?
        .found()
        .ok_or(PagError::Infeasible)?;
    let cycles = g.adversary_part();
    let u0 = u.on_graph(cycles.clone())?;
    let chain = GraphChain::new(vec![cycles, g], ChainKind::Ascending)?;
    AllocationPath::new(chain, vec![u0, u], DecisionRule::Rule1_1)
}
