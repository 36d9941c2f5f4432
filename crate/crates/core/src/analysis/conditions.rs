use crate::cayley::ActionCayleyTable;
use crate::world::{ActionId, ActionWord, StateId, World};

use super::analyze;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wc1Report {
    pub holds: bool,
    /// First undefined (state, action) in state-then-alphabet order.
    pub counterexample: Option<(StateId, ActionId)>,
}

/// Every minimum action is defined at every state reachable from the world's initial state.
pub fn check_wc1(world: &World) -> Wc1Report {
    let counterexample = world
        .reachable_from(world.initial())
        .into_iter()
        .flat_map(|w| world.actions().map(move |a| (w, a)))
        .find(|&(w, a)| world.apply_min(a, w).is_none());
    Wc1Report {
        holds: counterexample.is_none(),
        counterexample,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wc2Report {
    pub holds: bool,
    /// First element with no two-sided inverse.
    pub counterexample: Option<usize>,
    pub reason: Option<String>,
}

/// Every element of the table has a two-sided inverse with respect to the identity.
pub fn check_wc2(table: &ActionCayleyTable) -> Wc2Report {
    let report = analyze(table);
    if report.identity.two_sided.is_none() {
        return Wc2Report {
            holds: false,
            counterexample: None,
            reason: Some("no two-sided identity".to_owned()),
        };
    }
    let counterexample = report.inverses.iter().position(|i| i.two_sided.is_empty());
    Wc2Report {
        holds: counterexample.is_none(),
        counterexample,
        reason: counterexample.map(|a| format!("{} has no inverse", table.labels[a])),
    }
}

pub const DEFAULT_WC3_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wc3Outcome {
    Holds,
    /// No transition-preserving bijection sends the first state to the second.
    Fails(StateId, StateId),
    /// The search budget ran out while examining this pair.
    Inconclusive(StateId, StateId),
}

impl Wc3Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Wc3Outcome::Holds)
    }
}

/// For every ordered pair of states, searches for a bijection of the state set that maps the
/// first to the second and preserves every labelled transition in both directions, including
/// where transitions are missing. `cap` bounds the number of branching choices per pair.
pub fn check_wc3_homogeneity(world: &World, cap: usize) -> Wc3Outcome {
    let n = world.num_states();
    for w1 in world.states() {
        for w2 in world.states() {
            let mut budget = cap;
            let mut sigma = vec![None; n];
            let mut used = vec![false; n];
            match search(world, &mut sigma, &mut used, w1, w2, &mut budget) {
                Some(true) => {}
                Some(false) => return Wc3Outcome::Fails(w1, w2),
                None => return Wc3Outcome::Inconclusive(w1, w2),
            }
        }
    }
    Wc3Outcome::Holds
}

/// The bijection found for one pair, if any.
pub fn homogeneity_witness(world: &World, w1: StateId, w2: StateId) -> Option<Vec<StateId>> {
    let n = world.num_states();
    let mut budget = DEFAULT_WC3_CAP;
    let mut sigma = vec![None; n];
    let mut used = vec![false; n];
    match search(world, &mut sigma, &mut used, w1, w2, &mut budget) {
        Some(true) => Some(sigma.into_iter().map(Option::unwrap).collect()),
        _ => None,
    }
}

/// Assigns `s ↦ t`, propagates along transitions, then branches on the first unassigned
/// state. `None` means the budget ran out.
fn search(
    world: &World,
    sigma: &mut Vec<Option<StateId>>,
    used: &mut Vec<bool>,
    s: StateId,
    t: StateId,
    budget: &mut usize,
) -> Option<bool> {
    if !propagate(world, sigma, used, s, t) {
        return Some(false);
    }
    let Some(next) = sigma.iter().position(Option::is_none) else {
        return Some(true);
    };
    for target in world.states() {
        if used[target.index()] {
            continue;
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut s2 = sigma.clone();
        let mut u2 = used.clone();
        match search(world, &mut s2, &mut u2, StateId::new(next), target, budget) {
            Some(true) => {
                *sigma = s2;
                *used = u2;
                return Some(true);
            }
            Some(false) => {}
            None => return None,
        }
    }
    Some(false)
}

fn propagate(
    world: &World,
    sigma: &mut [Option<StateId>],
    used: &mut [bool],
    s: StateId,
    t: StateId,
) -> bool {
    let mut stack = vec![(s, t)];
    while let Some((s, t)) = stack.pop() {
        match sigma[s.index()] {
            Some(existing) if existing == t => continue,
            Some(_) => return false,
            None if used[t.index()] => return false,
            None => {
                sigma[s.index()] = Some(t);
                used[t.index()] = true;
            }
        }
        for a in world.actions() {
            match (world.apply_min(a, s), world.apply_min(a, t)) {
                (Some(s2), Some(t2)) => stack.push((s2, t2)),
                (None, None) => {}
                _ => return false,
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reversibility {
    Reversible,
    Irreversible,
    /// The word is undefined at the state; counted as not reversible.
    UndefinedAt,
}

impl Reversibility {
    pub fn is_reversible(self) -> bool {
        self == Reversibility::Reversible
    }
}

/// A word is reversible at `w` when `w` can be reached again from `word * w`.
pub fn is_reversible(world: &World, word: &ActionWord, w: StateId) -> Reversibility {
    match world.apply_word(word, w) {
        None => Reversibility::UndefinedAt,
        Some(after) if world.reachable_mask(after)[w.index()] => Reversibility::Reversible,
        Some(_) => Reversibility::Irreversible,
    }
}

/// Reversibility of every minimum action at `w`, in alphabet order.
pub fn reversible_actions(world: &World, w: StateId) -> Vec<(ActionId, Reversibility)> {
    world
        .actions()
        .map(|a| (a, is_reversible(world, &ActionWord::single(a), w)))
        .collect()
}
