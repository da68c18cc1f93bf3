//! Two-agent, two-road congestion game played along a chain of road
//! openings.
//!
//! Agent 1 commits at step 0 to one of the roads open then; agent 2 sees
//! that choice and commits at step 1. A commitment is final. The game is
//! solved by backward induction, keeping every subgame-perfect outcome when
//! agent 2 has ties.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::{PagError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Road {
    A,
    B,
}

impl Road {
    pub const ALL: [Road; 2] = [Road::A, Road::B];

    pub fn swapped(self) -> Road {
        match self {
            Road::A => Road::B,
            Road::B => Road::A,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Road {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Road::A => "A",
            Road::B => "B",
        })
    }
}

/// `(agent 1's road, agent 2's road)`.
pub type Profile = (Road, Road);

/// `table[agent][own][other]`, agents indexed from 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Payoffs {
    table: [[[f64; 2]; 2]; 2],
}

impl Default for Payoffs {
    fn default() -> Self {
        Payoffs::symmetric(2.0, 0.0)
    }
}

impl Payoffs {
    /// Same payoff on either road: `alone` when the other agent took the
    /// other road, `shared` otherwise.
    pub fn symmetric(alone: f64, shared: f64) -> Self {
        let one = [[shared, alone], [alone, shared]];
        Payoffs { table: [one, one] }
    }

    pub fn from_table(table: [[[f64; 2]; 2]; 2]) -> Self {
        Payoffs { table }
    }

    /// Payoff of `agent` (1 or 2) at `profile`.
    pub fn payoff(&self, agent: usize, profile: Profile) -> f64 {
        let (own, other) = if agent == 1 {
            (profile.0, profile.1)
        } else {
            (profile.1, profile.0)
        };
        self.table[agent - 1][own.index()][other.index()]
    }

    /// Relabels A as B and B as A.
    pub fn swapped(&self) -> Payoffs {
        let mut table = self.table;
        for (a, agent) in self.table.iter().enumerate() {
            for own in Road::ALL {
                for other in Road::ALL {
                    table[a][own.swapped().index()][other.swapped().index()] =
                        agent[own.index()][other.index()];
                }
            }
        }
        Payoffs { table }
    }

    /// Every shared outcome is strictly worse for each agent than every
    /// split outcome.
    pub fn has_congestion_property(&self) -> bool {
        self.table.iter().all(|t| {
            let shared = t[0][0].max(t[1][1]);
            let split = t[0][1].min(t[1][0]);
            shared < split
        })
    }

    /// Accepts `{"alone": x, "shared": y}` or a full table
    /// `{"1": {"AA": .., "AB": .., "BA": .., "BB": ..}, "2": {..}}` where the
    /// first letter is the agent's own road.
    pub fn from_json(text: &str) -> Result<Payoffs> {
        let bad = |m: &str| PagError::Precondition(format!("payoff file: {m}"));
        let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let num = |v: Option<&Value>, key: &str| {
            v.and_then(Value::as_f64)
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad(&format!("missing or non-numeric {key}")))
        };
        if obj.contains_key("alone") || obj.contains_key("shared") {
            return Ok(Payoffs::symmetric(
                num(obj.get("alone"), "alone")?,
                num(obj.get("shared"), "shared")?,
            ));
        }
        let mut table = [[[0.0; 2]; 2]; 2];
        for (a, slot) in table.iter_mut().enumerate() {
            let key = (a + 1).to_string();
            let agent = obj
                .get(&key)
                .and_then(Value::as_object)
                .ok_or_else(|| bad(&format!("missing agent {key}")))?;
            for own in Road::ALL {
                for other in Road::ALL {
                    let k = format!("{own}{other}");
                    slot[own.index()][other.index()] = num(agent.get(&k), &format!("{key}.{k}"))?;
                }
            }
        }
        Ok(Payoffs { table })
    }
}

/// Roads open at each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Schedule {
    steps: Vec<BTreeSet<Road>>,
}

impl Schedule {
    pub fn new(steps: Vec<BTreeSet<Road>>) -> Result<Self> {
        if steps.len() < 2 {
            return Err(PagError::Precondition(
                "a schedule needs a step for each agent".into(),
            ));
        }
        if let Some(t) = steps[..2].iter().position(BTreeSet::is_empty) {
            return Err(PagError::Precondition(format!("no road open at step {t}")));
        }
        Ok(Schedule { steps })
    }

    /// A alone at step 0, then both.
    pub fn a_first() -> Self {
        Schedule {
            steps: vec![[Road::A].into(), Road::ALL.into()],
        }
    }

    pub fn b_first() -> Self {
        Schedule {
            steps: vec![[Road::B].into(), Road::ALL.into()],
        }
    }

    pub fn simultaneous() -> Self {
        Schedule {
            steps: vec![Road::ALL.into(), Road::ALL.into()],
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "a-first" => Some(Self::a_first()),
            "b-first" => Some(Self::b_first()),
            "simultaneous" => Some(Self::simultaneous()),
            _ => None,
        }
    }

    pub fn steps(&self) -> &[BTreeSet<Road>] {
        &self.steps
    }

    pub fn swapped(&self) -> Schedule {
        Schedule {
            steps: self
                .steps
                .iter()
                .map(|s| s.iter().map(|r| r.swapped()).collect())
                .collect(),
        }
    }

    fn open_at(&self, agent: usize) -> &BTreeSet<Road> {
        &self.steps[agent - 1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoadGame {
    pub payoffs: Payoffs,
    pub schedule: Schedule,
}

impl RoadGame {
    pub fn new(payoffs: Payoffs, schedule: Schedule) -> Self {
        RoadGame { payoffs, schedule }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "profiles", rename_all = "lowercase")]
pub enum Solution {
    Unique(Profile),
    Multiple(Vec<Profile>),
}

impl Solution {
    pub fn profiles(&self) -> Vec<Profile> {
        match self {
            Solution::Unique(p) => vec![*p],
            Solution::Multiple(ps) => ps.clone(),
        }
    }

    pub fn unique(&self) -> Option<Profile> {
        match self {
            Solution::Unique(p) => Some(*p),
            Solution::Multiple(_) => None,
        }
    }
}

const TIE: f64 = 1e-12;

fn best_responses(game: &RoadGame, first: Road) -> Vec<Road> {
    let open = game.schedule.open_at(2);
    let pay = |r: Road| game.payoffs.payoff(2, (first, r));
    let best = open
        .iter()
        .map(|&r| pay(r))
        .fold(f64::NEG_INFINITY, f64::max);
    open.iter()
        .copied()
        .filter(|&r| pay(r) >= best - TIE)
        .collect()
}

/// All subgame-perfect outcomes of the game, sorted.
pub fn solve_chain(game: &RoadGame) -> Result<Solution> {
    if !game.payoffs.has_congestion_property() {
        return Err(PagError::Precondition(
            "payoffs must make sharing a road worse than splitting for both agents".into(),
        ));
    }
    let first_options: Vec<Road> = game.schedule.open_at(1).iter().copied().collect();
    // worst continuation agent 2 can impose after each opening move
    let worst: Vec<f64> = first_options
        .iter()
        .map(|&a| {
            best_responses(game, a)
                .into_iter()
                .map(|b| game.payoffs.payoff(1, (a, b)))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut outcomes = Vec::new();
    for (k, &a) in first_options.iter().enumerate() {
        let threat = first_options
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(m, _)| worst[m])
            .fold(f64::NEG_INFINITY, f64::max);
        for b in best_responses(game, a) {
            if game.payoffs.payoff(1, (a, b)) >= threat - TIE {
                outcomes.push((a, b));
            }
        }
    }
    outcomes.sort();
    Ok(match outcomes.as_slice() {
        [only] => Solution::Unique(*only),
        _ => Solution::Multiple(outcomes),
    })
}
