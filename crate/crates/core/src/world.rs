//! Finite worlds as deterministic, possibly partial, labelled transition systems.
//!
//! Action words are written leftmost-last-applied: the word `RU` performs `U`
//! first and then `R`, i.e. it denotes the composite `R ∘ U`. Cayley tables,
//! class representatives and every file format follow this convention.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::PartialTransform;

/// Symbol of the identity (no-op) action.
pub const IDENTITY_SYMBOL: &str = "1";

/// Dense index of a state within its world.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(u32);

impl StateId {
    pub fn new(index: usize) -> Self {
        Self(u32::try_from(index).expect("state index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of a minimum action in its world's alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionId(u16);

impl ActionId {
    pub fn new(index: usize) -> Self {
        Self(u16::try_from(index).expect("alphabet larger than u16"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite sequence of minimum actions, stored leftmost-last-applied.
///
/// Ordering is shortlex: shorter words first, then lexicographic by alphabet index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ActionWord(Vec<ActionId>);

impl ActionWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(a: ActionId) -> Self {
        Self(vec![a])
    }

    pub fn from_symbols(symbols: Vec<ActionId>) -> Self {
        Self(symbols)
    }

    /// Symbols in written order (the first one is applied last).
    pub fn symbols(&self) -> &[ActionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Symbols in the order they are performed.
    pub fn applied(&self) -> impl Iterator<Item = ActionId> + '_ {
        self.0.iter().rev().copied()
    }

    /// The word for `self ∘ first`: perform `first`, then `self`.
    pub fn after(&self, first: &ActionWord) -> ActionWord {
        let mut symbols = Vec::with_capacity(self.len() + first.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&first.0);
        ActionWord(symbols)
    }

    /// `self` repeated `n` times.
    pub fn power(&self, n: usize) -> ActionWord {
        ActionWord(self.0.repeat(n))
    }
}

impl Ord for ActionWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ActionWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Policy for (state, action) pairs that have no explicit transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Treatment {
    /// Unlisted pairs behave like the identity action.
    Identity,
    /// Unlisted pairs are undefined.
    Masked,
}

impl Treatment {
    pub fn as_str(self) -> &'static str {
        match self {
            Treatment::Identity => "identity",
            Treatment::Masked => "masked",
        }
    }
}

impl fmt::Display for Treatment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Treatment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Treatment::Identity),
            "masked" => Ok(Treatment::Masked),
            other => Err(Error::InvalidParameter(format!(
                "treatment must be `identity` or `masked`, got `{other}`"
            ))),
        }
    }
}

/// One explicitly listed minimum transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: StateId,
    pub action: ActionId,
    pub to: StateId,
}

/// A finite deterministic world with an identity action.
///
/// The raw transition list is kept as given; `dynamics` is the frozen table after the
/// treatment has filled in unlisted pairs and the identity action has been added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct World {
    name: String,
    states: Vec<String>,
    actions: Vec<String>,
    identity: ActionId,
    treatment: Treatment,
    initial: StateId,
    raw: Vec<Transition>,
    dynamics: Vec<Option<StateId>>,
    generators: Vec<PartialTransform>,
}

impl World {
    /// Builds a world from labels. `transitions` are `(from, action, to)` triples.
    pub fn from_labels<S: AsRef<str>>(
        name: impl Into<String>,
        states: &[S],
        actions: &[S],
        transitions: &[(S, S, S)],
        treatment: Treatment,
        initial: &str,
    ) -> Result<World> {
        let states: Vec<String> = states.iter().map(|s| s.as_ref().to_owned()).collect();
        let actions: Vec<String> = actions.iter().map(|s| s.as_ref().to_owned()).collect();
        let state_index = index_labels(&states, Error::DuplicateState)?;
        let action_index = index_labels(&actions, Error::DuplicateAction)?;
        let lookup_state = |s: &str| {
            state_index
                .get(s)
                .copied()
                .map(StateId::new)
                .ok_or_else(|| Error::UnknownState(s.to_owned()))
        };
        let raw = transitions
            .iter()
            .map(|(from, action, to)| {
                Ok(Transition {
                    from: lookup_state(from.as_ref())?,
                    action: action_index
                        .get(action.as_ref())
                        .copied()
                        .map(ActionId::new)
                        .ok_or_else(|| Error::UnknownAction(action.as_ref().to_owned()))?,
                    to: lookup_state(to.as_ref())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let initial = lookup_state(initial)?;
        World::from_indexed(name, states, actions, raw, treatment, initial)
    }

    /// Builds a world from index-based transitions; labels must be unique.
    pub fn from_indexed(
        name: impl Into<String>,
        states: Vec<String>,
        actions: Vec<String>,
        raw: Vec<Transition>,
        treatment: Treatment,
        initial: StateId,
    ) -> Result<World> {
        if states.is_empty() {
            return Err(Error::NoStates);
        }
        index_labels(&states, Error::DuplicateState)?;
        index_labels(&actions, Error::DuplicateAction)?;
        let identity = actions
            .iter()
            .position(|a| a == IDENTITY_SYMBOL)
            .map(ActionId::new)
            .ok_or(Error::MissingIdentity)?;
        if initial.index() >= states.len() {
            return Err(Error::UnknownState(format!("#{}", initial.index())));
        }

        let n_actions = actions.len();
        let mut dynamics: Vec<Option<StateId>> = vec![None; states.len() * n_actions];
        let mut kept = Vec::with_capacity(raw.len());
        for t in raw {
            if t.from.index() >= states.len() || t.to.index() >= states.len() {
                return Err(Error::UnknownState(format!(
                    "#{}",
                    t.from.index().max(t.to.index())
                )));
            }
            if t.action.index() >= n_actions {
                return Err(Error::UnknownAction(format!("#{}", t.action.index())));
            }
            if t.action == identity {
                if t.from != t.to {
                    return Err(Error::IdentityNotTrivial {
                        from: states[t.from.index()].clone(),
                        to: states[t.to.index()].clone(),
                    });
                }
                // Identity self-loops are implied; they are not kept as raw data.
                continue;
            }
            let slot = &mut dynamics[t.from.index() * n_actions + t.action.index()];
            if slot.is_some() {
                return Err(Error::Determinism {
                    from: states[t.from.index()].clone(),
                    action: actions[t.action.index()].clone(),
                });
            }
            *slot = Some(t.to);
            kept.push(t);
        }

        for s in 0..states.len() {
            for a in 0..n_actions {
                let slot = &mut dynamics[s * n_actions + a];
                let stays = slot.is_none() && treatment == Treatment::Identity;
                if a == identity.index() || stays {
                    *slot = Some(StateId::new(s));
                }
            }
        }

        let generators = (0..n_actions)
            .map(|a| {
                PartialTransform::from_images(
                    (0..states.len())
                        .map(|s| dynamics[s * n_actions + a])
                        .collect(),
                )
            })
            .collect();

        Ok(World {
            name: name.into(),
            states,
            actions,
            identity,
            treatment,
            initial,
            raw: kept,
            dynamics,
            generators,
        })
    }

    /// Same raw transitions under a different treatment.
    pub fn with_treatment(&self, treatment: Treatment) -> World {
        World::from_indexed(
            self.name.clone(),
            self.states.clone(),
            self.actions.clone(),
            self.raw.clone(),
            treatment,
            self.initial,
        )
        .expect("re-treating a valid world cannot fail")
    }

    pub fn with_initial(&self, initial: StateId) -> Result<World> {
        if initial.index() >= self.states.len() {
            return Err(Error::UnknownState(format!("#{}", initial.index())));
        }
        let mut w = self.clone();
        w.initial = initial;
        Ok(w)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn treatment(&self) -> Treatment {
        self.treatment
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn identity_action(&self) -> ActionId {
        self.identity
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId::new)
    }

    pub fn actions(&self) -> impl Iterator<Item = ActionId> {
        (0..self.actions.len()).map(ActionId::new)
    }

    pub fn state_labels(&self) -> &[String] {
        &self.states
    }

    pub fn action_symbols(&self) -> &[String] {
        &self.actions
    }

    pub fn state_label(&self, w: StateId) -> &str {
        &self.states[w.index()]
    }

    pub fn action_symbol(&self, a: ActionId) -> &str {
        &self.actions[a.index()]
    }

    /// Explicit (pre-treatment) transitions, excluding identity self-loops.
    pub fn raw_transitions(&self) -> &[Transition] {
        &self.raw
    }

    pub fn state_id(&self, label: &str) -> Result<StateId> {
        self.states
            .iter()
            .position(|s| s == label)
            .map(StateId::new)
            .ok_or_else(|| Error::UnknownState(label.to_owned()))
    }

    pub fn action_id(&self, symbol: &str) -> Result<ActionId> {
        self.actions
            .iter()
            .position(|a| a == symbol)
            .map(ActionId::new)
            .ok_or_else(|| Error::UnknownAction(symbol.to_owned()))
    }

    /// `a * w` for a minimum action, after treatment.
    #[inline]
    pub fn apply_min(&self, a: ActionId, w: StateId) -> Option<StateId> {
        self.dynamics[w.index() * self.actions.len() + a.index()]
    }

    /// Label-level [`World::apply_min`]; unknown labels are input errors.
    pub fn apply_min_labels(&self, action: &str, state: &str) -> Result<Option<StateId>> {
        Ok(self.apply_min(self.action_id(action)?, self.state_id(state)?))
    }

    /// Right-to-left fold of [`World::apply_min`]; the first undefined step makes the
    /// whole application undefined.
    pub fn apply_word(&self, word: &ActionWord, w: StateId) -> Option<StateId> {
        word.applied()
            .try_fold(w, |state, a| self.apply_min(a, state))
    }

    /// The partial map of a single minimum action.
    pub fn action_transform(&self, a: ActionId) -> &PartialTransform {
        &self.generators[a.index()]
    }

    pub fn word_transform(&self, word: &ActionWord) -> PartialTransform {
        PartialTransform::from_images(self.states().map(|w| self.apply_word(word, w)).collect())
    }

    /// Every defined minimum transition, ordered by state then alphabet.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.states().flat_map(move |from| {
            self.actions().filter_map(move |action| {
                self.apply_min(action, from)
                    .map(|to| Transition { from, action, to })
            })
        })
    }

    /// Breadth-first closure of `w` under all defined minimum transitions, in state order.
    pub fn reachable_from(&self, w: StateId) -> Vec<StateId> {
        let mask = self.reachable_mask(w);
        self.states().filter(|s| mask[s.index()]).collect()
    }

    /// Reachability as a per-state flag vector.
    pub fn reachable_mask(&self, w: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::from([w]);
        seen[w.index()] = true;
        while let Some(s) = queue.pop_front() {
            for a in self.actions() {
                if let Some(t) = self.apply_min(a, s) {
                    if !std::mem::replace(&mut seen[t.index()], true) {
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    /// Parses a word by greedy longest match against the alphabet.
    ///
    /// Whitespace, parentheses, `·` and `∘` are separators; `ε` or an empty string is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<ActionWord> {
        let mut symbols = Vec::new();
        let mut rest = text;
        while let Some(c) = rest.chars().next() {
            if c.is_whitespace() || matches!(c, '(' | ')' | '·' | '∘' | 'ε') {
                rest = &rest[c.len_utf8()..];
                continue;
            }
            let best = self
                .actions
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_empty() && rest.starts_with(s.as_str()))
                .max_by_key(|(i, s)| (s.len(), std::cmp::Reverse(*i)));
            match best {
                Some((i, s)) => {
                    symbols.push(ActionId::new(i));
                    rest = &rest[s.len()..];
                }
                None => return Err(Error::BadWord(text.to_owned())),
            }
        }
        Ok(ActionWord(symbols))
    }

    /// Renders a word; symbols are concatenated when the alphabet is single-character,
    /// space-separated otherwise. The empty word renders as `ε`.
    pub fn format_word(&self, word: &ActionWord) -> String {
        if word.is_empty() {
            return "ε".to_owned();
        }
        let sep = if self.actions.iter().all(|a| a.chars().count() == 1) {
            ""
        } else {
            " "
        };
        word.symbols()
            .iter()
            .map(|a| self.action_symbol(*a))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn format_state(&self, w: Option<StateId>) -> String {
        match w {
            Some(w) => self.state_label(w).to_owned(),
            None => "⊥".to_owned(),
        }
    }
}

fn index_labels(labels: &[String], dup: fn(String) -> Error) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(dup(l.clone()));
        }
    }
    Ok(index)
}
