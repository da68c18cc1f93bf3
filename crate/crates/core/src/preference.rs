//! Weak preference, indifference and strong preference of one country
//! between two strategy matrices on the same graph and powers.
//!
//! All three relations only look at states. Weak preference of `V` over `U`
//! by `i` holds when every friend of `i` (including `i`) is secure under `V`
//! or already unsafe under `U`, and every adversary is not safe under `V` or
//! already safe under `U`. Indifference asks every friend and adversary to
//! keep its state. Strong preference asks `i` to go from unsafe to secure.

use serde::Serialize;

use crate::allocation::{State, StrategyMatrix};
use crate::graph::Country;
use crate::{PagError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// The deciding country itself.
    Own,
    Friend,
    Adversary,
}

/// One row of evidence behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub country: Country,
    pub role: Role,
    pub before: State,
    pub after: State,
    /// The per-country weak-preference condition holds.
    pub weak_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreferenceVerdict {
    pub country: Country,
    pub weak: bool,
    pub indifferent: bool,
    pub strong: bool,
    pub witness: Vec<Witness>,
}

fn check_pair(i: Country, u: &StrategyMatrix, v: &StrategyMatrix) -> Result<()> {
    if !u.same_scenario(v) {
        return Err(PagError::ScenarioMismatch);
    }
    u.graph().check_label(i)
}

fn weak_condition(role: Role, before: State, after: State) -> bool {
    match role {
        Role::Own | Role::Friend => after.is_secure() || before == State::Unsafe,
        Role::Adversary => after != State::Safe || before == State::Safe,
    }
}

/// Evaluates all three relations for `i` comparing `U` (before) to `V`
/// (after), with one witness per friend or adversary.
pub fn compare(i: Country, u: &StrategyMatrix, v: &StrategyMatrix) -> Result<PreferenceVerdict> {
    check_pair(i, u, v)?;
    let g = u.graph();
    let mut witness = Vec::new();
    for j in 1..=g.n() {
        let role = if j == i {
            Role::Own
        } else if g.is_friend(i, j) {
            Role::Friend
        } else if g.is_adversary(i, j) {
            Role::Adversary
        } else {
            continue;
        };
        let (before, after) = (u.state(j), v.state(j));
        witness.push(Witness {
            country: j,
            role,
            before,
            after,
            weak_ok: weak_condition(role, before, after),
        });
    }
    Ok(PreferenceVerdict {
        country: i,
        weak: witness.iter().all(|w| w.weak_ok),
        indifferent: witness.iter().all(|w| w.before == w.after),
        strong: u.state(i) == State::Unsafe && v.state(i).is_secure(),
        witness,
    })
}

pub fn weakly_prefers(i: Country, u: &StrategyMatrix, v: &StrategyMatrix) -> Result<bool> {
    Ok(compare(i, u, v)?.weak)
}

pub fn indifferent(i: Country, u: &StrategyMatrix, v: &StrategyMatrix) -> Result<bool> {
    Ok(compare(i, u, v)?.indifferent)
}

/// `i` moves from unsafe under `U` to safe or precarious under `V`.
pub fn strongly_prefers(i: Country, u: &StrategyMatrix, v: &StrategyMatrix) -> Result<bool> {
    check_pair(i, u, v)?;
    Ok(u.state(i) == State::Unsafe && v.state(i).is_secure())
}
