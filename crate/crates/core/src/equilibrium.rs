//! Stage-game Nash certificates, the exhaustive deviation oracle, and
//! balanced equilibria.
//!
//! A country deviates when some reallocation of its own row moves it from
//! unsafe to safe or precarious. Threat against `i` does not depend on row
//! `i`, and row `i` adds at most `p_i` to `i`'s own support (reserve and
//! allocations onto adversaries both count), so the best support `i` can
//! reach is its external friend support plus `p_i`.

use serde::Serialize;

use crate::allocation::{compare, State, StrategyMatrix};
use crate::graph::{Country, SignedGraph};
use crate::preference::strongly_prefers;
use crate::{lp, PagError, PowerVector, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountryVerdict {
    pub country: Country,
    pub state: State,
    pub support: f64,
    pub threat: f64,
    /// Largest support the country can give itself by changing its row.
    pub best_achievable_support: f64,
    pub deviates: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NashCertificate {
    pub holds: bool,
    pub countries: Vec<CountryVerdict>,
}

impl NashCertificate {
    fn from_verdicts(countries: Vec<CountryVerdict>) -> Self {
        NashCertificate {
            holds: countries.iter().all(|c| !c.deviates),
            countries,
        }
    }

    pub fn deviators(&self) -> Vec<Country> {
        self.countries
            .iter()
            .filter(|c| c.deviates)
            .map(|c| c.country)
            .collect()
    }
}

/// Closed-form stage check with unrestricted row deviations.
pub fn check_nash(u: &StrategyMatrix) -> Result<NashCertificate> {
    u.ensure_valid()?;
    let caps: Vec<f64> = u.powers().as_slice().to_vec();
    Ok(check_nash_capped(u, &caps))
}

/// Stage check where country `i`'s row can contribute at most `caps[i-1]`
/// to its own support.
pub(crate) fn check_nash_capped(u: &StrategyMatrix, caps: &[f64]) -> NashCertificate {
    let thr = u.threshold();
    let verdicts = (1..=u.n())
        .map(|i| {
            let support = u.support(i);
            let threat = u.threat(i);
            let state = compare(support, threat, thr);
            let best = u.external_support(i) + caps[i - 1];
            CountryVerdict {
                country: i,
                state,
                support,
                threat,
                best_achievable_support: best,
                deviates: state == State::Unsafe && compare(best, threat, thr).is_secure(),
            }
        })
        .collect();
    NashCertificate::from_verdicts(verdicts)
}

pub const ORACLE_MAX_COUNTRIES: usize = 6;
pub const ORACLE_MAX_GRID: u32 = 12;

/// Tries every row reallocation that splits `p_i` into `grid` equal quanta
/// over `i`'s reserve, friends and adversaries, and asks whether any of them
/// is strongly preferred by `i`.
pub fn brute_force_nash_oracle(u: &StrategyMatrix, grid: u32) -> Result<NashCertificate> {
    u.ensure_valid()?;
    if grid == 0 {
        return Err(PagError::Precondition("grid must be positive".into()));
    }
    if u.n() > ORACLE_MAX_COUNTRIES || grid > ORACLE_MAX_GRID {
        return Err(PagError::TooLarge(format!(
            "oracle supports n <= {ORACLE_MAX_COUNTRIES} and grid <= {ORACLE_MAX_GRID}, got n = {}, grid = {grid}",
            u.n()
        )));
    }
    let g = u.graph();
    let mut verdicts = Vec::with_capacity(u.n());
    for i in 1..=u.n() {
        let columns: Vec<Country> = (1..=g.n()).filter(|&j| g.may_allocate(i, j)).collect();
        let quantum = u.powers().get(i) / f64::from(grid);
        let mut best = f64::NEG_INFINITY;
        let mut deviates = false;
        for split in compositions(grid, columns.len()) {
            let mut row = vec![0.0; u.n()];
            for (&j, &q) in columns.iter().zip(&split) {
                row[j - 1] = f64::from(q) * quantum;
            }
            let v = u.with_row(i, &row);
            best = best.max(v.support(i));
            deviates |= strongly_prefers(i, u, &v)?;
        }
        verdicts.push(CountryVerdict {
            country: i,
            state: u.state(i),
            support: u.support(i),
            threat: u.threat(i),
            best_achievable_support: best,
            deviates,
        });
    }
    Ok(NashCertificate::from_verdicts(verdicts))
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(left - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BalancedCondition {
    /// Countries without adversaries keep everything in reserve.
    PeacefulReserve = 1,
    /// Countries with adversaries reserve nothing and spend all on adversaries.
    FullCommitment = 2,
    /// Mirror allocations on every adversary pair.
    Symmetry = 3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalancedBreach {
    pub condition: BalancedCondition,
    pub country: Country,
    /// Other endpoint for symmetry breaches.
    pub partner: Option<Country>,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalancedCertificate {
    pub holds: bool,
    /// Lowest-numbered violated condition (1, 2 or 3).
    pub violated_condition: Option<u8>,
    pub breaches: Vec<BalancedBreach>,
}

pub fn check_balanced(u: &StrategyMatrix) -> Result<BalancedCertificate> {
    u.ensure_valid()?;
    let g = u.graph();
    let thr = u.threshold();
    let mut breaches = Vec::new();
    for i in 1..=u.n() {
        let p = u.powers().get(i);
        let reserve = u.get(i, i);
        if !g.has_adversaries(i) {
            if (reserve - p).abs() > thr {
                breaches.push(BalancedBreach {
                    condition: BalancedCondition::PeacefulReserve,
                    country: i,
                    partner: None,
                    magnitude: p - reserve,
                });
            }
        } else {
            let attack: f64 = (1..=u.n())
                .filter(|&j| g.is_adversary(i, j))
                .map(|j| u.get(i, j))
                .sum();
            let gap = (p - attack).abs().max(reserve.abs());
            if gap > thr {
                breaches.push(BalancedBreach {
                    condition: BalancedCondition::FullCommitment,
                    country: i,
                    partner: None,
                    magnitude: gap,
                });
            }
        }
    }
    for pair in g.adversary_pairs() {
        let (i, j) = (pair.lo(), pair.hi());
        let gap = u.get(i, j) - u.get(j, i);
        if gap.abs() > thr {
            breaches.push(BalancedBreach {
                condition: BalancedCondition::Symmetry,
                country: i,
                partner: Some(j),
                magnitude: gap,
            });
        }
    }
    Ok(BalancedCertificate {
        holds: breaches.is_empty(),
        violated_condition: breaches.iter().map(|b| b.condition as u8).min(),
        breaches,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum BalancedConstruction {
    Found(StrategyMatrix),
    Infeasible,
}

impl BalancedConstruction {
    pub fn found(self) -> Option<StrategyMatrix> {
        match self {
            BalancedConstruction::Found(u) => Some(u),
            BalancedConstruction::Infeasible => None,
        }
    }
}

pub const MAX_BALANCED_PAIRS: usize = 256;

/// Finds symmetric nonnegative weights on adversary pairs whose sum at each
/// contested country equals its power. Countries without adversaries keep
/// their power in reserve.
pub fn construct_balanced(g: &SignedGraph, p: &PowerVector) -> Result<BalancedConstruction> {
    if p.len() != g.n() {
        return Err(PagError::DimensionMismatch {
            expected: g.n(),
            found: p.len(),
        });
    }
    let pairs: Vec<_> = g.adversary_pairs().iter().copied().collect();
    if pairs.len() > MAX_BALANCED_PAIRS {
        return Err(PagError::TooLarge(format!(
            "{} adversary pairs (limit {MAX_BALANCED_PAIRS})",
            pairs.len()
        )));
    }
    let contested: Vec<Country> = (1..=g.n()).filter(|&i| g.has_adversaries(i)).collect();
    let a: Vec<Vec<f64>> = contested
        .iter()
        .map(|&i| {
            pairs
                .iter()
                .map(|e| if e.contains(i) { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let b: Vec<f64> = contested.iter().map(|&i| p.get(i)).collect();
    let tol = crate::DEFAULT_TOLERANCE * p.total();
    let Some(w) = lp::nonnegative_solution(&a, &b, tol) else {
        return Ok(BalancedConstruction::Infeasible);
    };
    let n = g.n();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 1..=n {
        if !g.has_adversaries(i) {
            rows[i - 1][i - 1] = p.get(i);
        }
    }
    for (e, &weight) in pairs.iter().zip(&w) {
        rows[e.lo() - 1][e.hi() - 1] = weight;
        rows[e.hi() - 1][e.lo() - 1] = weight;
    }
    Ok(BalancedConstruction::Found(StrategyMatrix::new(
        g.clone(),
        p.clone(),
        rows,
    )?))
}
