//! Power vectors, strategy matrices, total support and threat, and the
//! safe / precarious / unsafe classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Country, SignedGraph};
use crate::{PagError, Result};

/// Relative comparison tolerance. Thresholds are `tolerance * total power`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Margin used when a construction has to land strictly on one side of a
/// support/threat comparison.
pub const STRICT_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PowerVector(Vec<f64>);

impl PowerVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some((k, v)) = p
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(PagError::InvalidPowers(format!(
                "p_{} = {v} is not a finite nonnegative number",
                k + 1
            )));
        }
        Ok(PowerVector(p))
    }

    pub fn uniform(n: usize, value: f64) -> Result<Self> {
        PowerVector::new(vec![value; n])
    }

    /// Power of country `i` (1-based).
    pub fn get(&self, i: Country) -> f64 {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        PowerVector::new(self.0.iter().map(|v| v * c).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum State {
    Safe,
    Precarious,
    Unsafe,
}

impl State {
    /// Safe or precarious.
    pub fn is_secure(self) -> bool {
        !matches!(self, State::Unsafe)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            State::Safe => "safe",
            State::Precarious => "precarious",
            State::Unsafe => "unsafe",
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StateVector(Vec<State>);

impl StateVector {
    pub fn new(states: Vec<State>) -> Self {
        StateVector(states)
    }

    pub fn get(&self, i: Country) -> State {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[State] {
        &self.0
    }

    pub fn count(&self, state: State) -> usize {
        self.0.iter().filter(|s| **s == state).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Negative entry.
    Negative,
    /// Row sum differs from the country's total power.
    Budget,
    /// Positive entry on a pair that is neither the diagonal nor an edge.
    Support,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub row: Country,
    /// `None` for row-level (budget) violations.
    pub column: Option<Country>,
    pub kind: ViolationKind,
    /// Size of the breach: the offending entry, or the budget discrepancy.
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.column) {
            (ViolationKind::Budget, _) => write!(
                f,
                "row {} sums {:+} away from its power",
                self.row, self.magnitude
            ),
            (ViolationKind::Negative, Some(j)) => {
                write!(f, "u_{},{} = {} is negative", self.row, j, self.magnitude)
            }
            (ViolationKind::Support, Some(j)) => write!(
                f,
                "u_{},{} = {} is placed on a non-edge",
                self.row, j, self.magnitude
            ),
            (_, None) => write!(f, "row {}: {:?}", self.row, self.kind),
        }
    }
}

/// Dense `n x n` allocation matrix, tied to the graph and powers it is
/// played on. Row `i` is country `i`'s allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyMatrix {
    graph: SignedGraph,
    powers: PowerVector,
    entries: Vec<f64>,
    tolerance: f64,
}

impl StrategyMatrix {
    /// Builds and validates a matrix.
    pub fn new(graph: SignedGraph, powers: PowerVector, rows: Vec<Vec<f64>>) -> Result<Self> {
        let u = StrategyMatrix::from_rows_unchecked(graph, powers, rows)?;
        u.ensure_valid()?;
        Ok(u)
    }

    /// Builds a matrix checking only dimensions. Use [`validate`](Self::validate)
    /// to list budget, sign and support breaches.
    pub fn from_rows_unchecked(
        graph: SignedGraph,
        powers: PowerVector,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = graph.n();
        if powers.len() != n {
            return Err(PagError::DimensionMismatch {
                expected: n,
                found: powers.len(),
            });
        }
        if rows.len() != n {
            return Err(PagError::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(PagError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(StrategyMatrix {
            graph,
            powers,
            entries,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    /// Every country keeps its whole power in reserve.
    pub fn reserve(graph: SignedGraph, powers: PowerVector) -> Result<Self> {
        let n = graph.n();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                if i < powers.len() {
                    r[i] = powers.as_slice()[i];
                }
                r
            })
            .collect();
        StrategyMatrix::new(graph, powers, rows)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Absolute comparison threshold: tolerance scaled by total power.
    pub fn threshold(&self) -> f64 {
        self.tolerance * self.powers.total()
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn powers(&self) -> &PowerVector {
        &self.powers
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `u_ij` (1-based).
    pub fn get(&self, i: Country, j: Country) -> f64 {
        let n = self.n();
        self.entries[(i - 1) * n + (j - 1)]
    }

    pub(crate) fn set(&mut self, i: Country, j: Country, v: f64) {
        let n = self.n();
        self.entries[(i - 1) * n + (j - 1)] = v;
    }

    pub fn row(&self, i: Country) -> &[f64] {
        let n = self.n();
        &self.entries[(i - 1) * n..i * n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.n().max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n();
        let slack = self.threshold();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let v = self.get(i, j);
                if v < -slack || !v.is_finite() {
                    out.push(Violation {
                        row: i,
                        column: Some(j),
                        kind: ViolationKind::Negative,
                        magnitude: v,
                    });
                } else if v > slack && !self.graph.may_allocate(i, j) {
                    out.push(Violation {
                        row: i,
                        column: Some(j),
                        kind: ViolationKind::Support,
                        magnitude: v,
                    });
                }
            }
            let gap = self.row(i).iter().sum::<f64>() - self.powers.get(i);
            if gap.abs() > slack || !gap.is_finite() {
                out.push(Violation {
                    row: i,
                    column: None,
                    kind: ViolationKind::Budget,
                    magnitude: gap,
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(PagError::InvalidMatrix(v))
        }
    }

    /// Total support: friends' (and own reserve) allocations onto `i` plus
    /// `i`'s own allocations onto its adversaries.
    pub fn support(&self, i: Country) -> f64 {
        (1..=self.n())
            .map(|j| {
                if i == j || self.graph.is_friend(i, j) {
                    self.get(j, i)
                } else if self.graph.is_adversary(i, j) {
                    self.get(i, j)
                } else {
                    0.0
                }
            })
            .fold(0.0, |a, b| a + b)
    }

    /// Total threat: adversaries' allocations onto `i`.
    pub fn threat(&self, i: Country) -> f64 {
        (1..=self.n())
            .filter(|&j| self.graph.is_adversary(i, j))
            .map(|j| self.get(j, i))
            .fold(0.0, |a, b| a + b)
    }

    /// Support `i` receives from friends other than itself. Row `i` cannot
    /// change it.
    pub fn external_support(&self, i: Country) -> f64 {
        (1..=self.n())
            .filter(|&j| self.graph.is_friend(i, j))
            .map(|j| self.get(j, i))
            .fold(0.0, |a, b| a + b)
    }

    pub fn state(&self, i: Country) -> State {
        compare(self.support(i), self.threat(i), self.threshold())
    }

    pub fn classify(&self) -> StateVector {
        StateVector((1..=self.n()).map(|i| self.state(i)).collect())
    }

    /// Same matrix with row `i` replaced.
    pub fn with_row(&self, i: Country, row: &[f64]) -> StrategyMatrix {
        let mut out = self.clone();
        let n = self.n();
        out.entries[(i - 1) * n..i * n].copy_from_slice(row);
        out
    }

    /// Every entry and every power multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<StrategyMatrix> {
        Ok(StrategyMatrix {
            graph: self.graph.clone(),
            powers: self.powers.scaled(c)?,
            entries: self.entries.iter().map(|v| v * c).collect(),
            tolerance: self.tolerance,
        })
    }

    /// Re-validates the same entries against another graph.
    pub fn on_graph(&self, graph: SignedGraph) -> Result<StrategyMatrix> {
        StrategyMatrix::new(graph, self.powers.clone(), self.rows())
            .map(|u| u.with_tolerance(self.tolerance))
    }

    pub(crate) fn same_scenario(&self, other: &StrategyMatrix) -> bool {
        self.graph == other.graph && self.powers == other.powers
    }
}

/// Classifies a support/threat pair with absolute threshold `eps`.
pub fn compare(support: f64, threat: f64, eps: f64) -> State {
    if support > threat + eps {
        State::Safe
    } else if support < threat - eps {
        State::Unsafe
    } else {
        State::Precarious
    }
}
