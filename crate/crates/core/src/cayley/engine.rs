//! The table-growing loop: initial labels, candidate search, equivalence search and
//! class splitting.
//!
//! The state table is kept virtual. Entry `(r, c)` is `t_c(t_r(w0))`, so only the label
//! transforms and the probe states `t_r(w0)` are stored. Equivalence lookups for new
//! candidates go through a hashed profile key:
//!
//! * the row of a word `a` is `(t_c(a * w0))_c`, which depends only on the point
//!   `a * w0`; points with equal rows share a `row_class` id, refined label by label;
//! * the column of `a` is `(t_a(r * w0))_r`, which depends only on `a`'s images of the
//!   distinct probe states.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::transform::PartialTransform;
use crate::world::{ActionWord, StateId, World};

use super::classes::{EquivalenceClass, EquivalenceClassSet};

/// What to do with composites whose transform is nowhere defined on the explored sub-world.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EmptyPolicy {
    /// Record them as null words; they are not elements and their table entries are undefined.
    #[default]
    Exclude,
    /// Admit the empty transform as an ordinary element.
    Include,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub max_elements: usize,
    pub empty_policy: EmptyPolicy,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            max_elements: 10_000,
            empty_policy: EmptyPolicy::Exclude,
        }
    }
}

/// Counters gathered while the table grows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub candidates_processed: usize,
    pub absorbed: usize,
    pub splits: usize,
    pub merged_at_init: usize,
}

#[derive(Clone, Debug)]
struct Member {
    word: ActionWord,
    transform: PartialTransform,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ProfileKey {
    row: u32,
    col: Vec<Option<StateId>>,
}

/// A state Cayley table under construction together with its classes and candidate queue.
#[derive(Clone, Debug)]
pub struct Exploration<'w> {
    world: &'w World,
    w0: StateId,
    reach: Vec<bool>,
    options: EngineOptions,

    labels: Vec<ActionWord>,
    transforms: Vec<PartialTransform>,
    probes: Vec<Option<StateId>>,
    // members acting like the label on every reachable state, label first
    classes: Vec<Vec<Member>>,
    // members that differ from the label somewhere on reach; only these can be split off
    dissenters: Vec<Vec<Member>>,
    dissent: BTreeSet<usize>,
    lookup: FxHashMap<ActionWord, usize>,
    positions: FxHashMap<ActionWord, usize>,

    null_words: Vec<ActionWord>,
    null_set: FxHashSet<ActionWord>,
    queue: VecDeque<Member>,
    queued: FxHashSet<ActionWord>,
    watermark: usize,

    row_class: Vec<u32>,
    probe_points: Vec<StateId>,
    probe_seen: Vec<bool>,
    key_index: FxHashMap<ProfileKey, Vec<usize>>,

    stats: EngineStats,
}

impl<'w> Exploration<'w> {
    /// An empty table; no labels, no classes.
    pub fn empty(world: &'w World, w0: StateId, options: EngineOptions) -> Result<Self> {
        if w0.index() >= world.num_states() {
            return Err(Error::UnknownState(format!("#{}", w0.index())));
        }
        let n = world.num_states();
        Ok(Exploration {
            world,
            w0,
            reach: world.reachable_mask(w0),
            options,
            labels: Vec::new(),
            transforms: Vec::new(),
            probes: Vec::new(),
            classes: Vec::new(),
            dissenters: Vec::new(),
            dissent: BTreeSet::new(),
            lookup: FxHashMap::default(),
            positions: FxHashMap::default(),
            null_words: Vec::new(),
            null_set: FxHashSet::default(),
            queue: VecDeque::new(),
            queued: FxHashSet::default(),
            watermark: 0,
            row_class: vec![0; n + 1],
            probe_points: Vec::new(),
            probe_seen: vec![false; n],
            key_index: FxHashMap::default(),
            stats: EngineStats::default(),
        })
    }

    /// The initial table: one label per minimum action in alphabet order, after which labels
    /// with identical profiles are merged, and the empty word joins the class of `1`.
    pub fn new(world: &'w World, w0: StateId, options: EngineOptions) -> Result<Self> {
        let mut ex = Self::empty(world, w0, options)?;
        for a in world.actions() {
            let word = ActionWord::single(a);
            if ex.is_null(world.action_transform(a)) {
                ex.null_set.insert(word.clone());
                ex.null_words.push(word);
            } else {
                ex.add_element(word)?;
            }
        }
        let mut i = 0;
        while i < ex.labels.len() {
            let label = ex.labels[i].clone();
            let equivalents = ex.search_for_equivalents(&label);
            for e in equivalents.into_iter().rev() {
                ex.merge_label_into(e, &label);
                ex.stats.merged_at_init += 1;
            }
            i = ex.label_position(&label).unwrap() + 1;
        }
        ex.rebuild_profiles();
        let one = ActionWord::single(world.identity_action());
        let home = ex.lookup[&one];
        ex.record(
            home,
            ActionWord::empty(),
            PartialTransform::identity(world.num_states()),
        );
        ex.watermark = 0;
        Ok(ex)
    }

    pub fn world(&self) -> &World {
        self.world
    }

    pub fn initial(&self) -> StateId {
        self.w0
    }

    pub fn labels(&self) -> &[ActionWord] {
        &self.labels
    }

    pub fn label_position(&self, word: &ActionWord) -> Option<usize> {
        self.positions.get(word).copied()
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    /// Words waiting to be examined, in queue order.
    pub fn pending(&self) -> impl Iterator<Item = &ActionWord> {
        self.queue.iter().map(|m| &m.word)
    }

    /// Members of the class labelled by `labels()[i]`, in recording order.
    pub fn class_members(&self, i: usize) -> impl Iterator<Item = &ActionWord> {
        self.classes[i]
            .iter()
            .chain(&self.dissenters[i])
            .map(|m| &m.word)
    }

    /// `c * (r * w0)` for label positions `r` and `c`.
    pub fn entry(&self, r: usize, c: usize) -> Option<StateId> {
        self.transforms[c].apply_opt(self.probes[r])
    }

    pub fn row(&self, r: usize) -> Vec<Option<StateId>> {
        (0..self.labels.len()).map(|c| self.entry(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Option<StateId>> {
        (0..self.labels.len()).map(|r| self.entry(r, c)).collect()
    }

    /// Adds `word` as a label with its own row and column. A word not yet recorded gets a
    /// fresh singleton class.
    pub fn add_element(&mut self, word: ActionWord) -> Result<()> {
        if self.label_position(&word).is_some() {
            return Err(Error::InvalidParameter(format!(
                "`{}` is already a label",
                self.world.format_word(&word)
            )));
        }
        let transform = self.world.word_transform(&word);
        match self.lookup.get(&word).copied() {
            Some(i) => {
                // promote an existing member to head its own class
                let member = match self.classes[i].iter().position(|m| m.word == word) {
                    Some(pos) => self.classes[i].remove(pos),
                    None => {
                        let pos = self.dissenters[i]
                            .iter()
                            .position(|m| m.word == word)
                            .unwrap();
                        self.dissenters[i].remove(pos)
                    }
                };
                self.refresh_dissent(i);
                self.push_class(vec![member]);
            }
            None => self.push_class(vec![Member { word, transform }]),
        }
        Ok(())
    }

    /// Labels whose row and column profiles match those of `word`.
    ///
    /// For a word that is itself a label the comparison skips that label's own row and
    /// column position; the label is not reported as its own equivalent.
    pub fn search_for_equivalents(&self, word: &ActionWord) -> Vec<usize> {
        if let Some(a) = self.label_position(word) {
            let profile = |r: usize| {
                let row: Vec<_> = (0..self.labels.len())
                    .filter(|&c| c != a)
                    .map(|c| self.entry(r, c))
                    .collect();
                let col: Vec<_> = (0..self.labels.len())
                    .filter(|&q| q != a)
                    .map(|q| self.entry(q, r))
                    .collect();
                (row, col)
            };
            let target = profile(a);
            return (0..self.labels.len())
                .filter(|&r| r != a && profile(r) == target)
                .collect();
        }
        let t = self.world.word_transform(word);
        self.equivalents_of_transform(&t)
    }

    /// Scans every (row, column) pair that involves a label added since the last scan.
    /// Each composite `c ∘ r` is absorbed into an equivalent class, set aside as a null word,
    /// or queued once.
    pub fn search_for_new_candidates(&mut self) {
        let n = self.labels.len();
        let old = self.watermark;
        for r in 0..n {
            // rows already scanned only pair with the new columns
            let first = if r < old { old } else { 0 };
            for c in first..n {
                let word = self.labels[c].after(&self.labels[r]);
                if self.lookup.contains_key(&word)
                    || self.queued.contains(&word)
                    || self.null_set.contains(&word)
                {
                    continue;
                }
                let transform = self.transforms[c].after(&self.transforms[r]);
                if self.is_null(&transform) {
                    self.null_set.insert(word.clone());
                    self.null_words.push(word);
                    continue;
                }
                if let Some(&e) = self.equivalents_of_transform(&transform).first() {
                    self.record(e, word, transform);
                    self.stats.absorbed += 1;
                } else {
                    self.queued.insert(word.clone());
                    self.queue.push_back(Member { word, transform });
                }
            }
        }
        self.watermark = n;
    }

    /// Splits every class with a member whose outcome at `x = a_c * w0` differs from its
    /// label's, then adds each split-off group as a new labelled class. Returns the new labels.
    pub fn search_for_broken_equivalence_classes(
        &mut self,
        a_c: &ActionWord,
    ) -> Result<Vec<ActionWord>> {
        let t = match self.lookup.get(a_c) {
            Some(&i) => self.classes[i]
                .iter()
                .chain(&self.dissenters[i])
                .find(|m| &m.word == a_c)
                .map(|m| m.transform.clone())
                .unwrap(),
            None => self.world.word_transform(a_c),
        };
        let groups = self.broken_classes(&t);
        let mut added = Vec::with_capacity(groups.len());
        for g in groups {
            added.push(g[0].word.clone());
            self.stats.splits += 1;
            self.push_class(g);
            self.check_cap()?;
        }
        Ok(added)
    }

    /// Examines the next queued candidate. Returns false once the queue is empty.
    pub fn step(&mut self) -> Result<bool> {
        let Some(candidate) = self.queue.pop_front() else {
            return Ok(false);
        };
        self.queued.remove(&candidate.word);
        self.stats.candidates_processed += 1;
        if let Some(&e) = self.equivalents_of_transform(&candidate.transform).first() {
            self.record(e, candidate.word, candidate.transform);
            self.stats.absorbed += 1;
            return Ok(true);
        }
        for g in self.broken_classes(&candidate.transform) {
            self.stats.splits += 1;
            self.push_class(g);
            self.check_cap()?;
        }
        self.push_class(vec![candidate]);
        self.check_cap()?;
        self.search_for_new_candidates();
        Ok(true)
    }

    /// Runs the candidate loop to its fixed point.
    ///
    /// Profiles only see the states the table happens to probe, so a class can still hold
    /// members that act differently from its label once the queue drains. Those members are
    /// split off by transform and the loop resumes until every class is uniform.
    pub fn run(mut self) -> Result<Exploration<'w>> {
        loop {
            self.search_for_new_candidates();
            while self.step()? {}
            if self.dissent.is_empty() {
                return Ok(self);
            }
            for g in self.split_dissenters() {
                self.stats.splits += 1;
                self.push_class(g);
                self.check_cap()?;
            }
        }
    }

    /// Freezes the labels into canonical classes.
    pub fn into_classes(self) -> EquivalenceClassSet {
        let classes = self
            .labels
            .iter()
            .zip(&self.transforms)
            .zip(self.classes.iter().zip(&self.dissenters))
            .map(|((label, transform), (members, dissenters))| {
                let mut words: Vec<ActionWord> = members
                    .iter()
                    .chain(dissenters)
                    .map(|m| m.word.clone())
                    .collect();
                words.sort();
                let representative = words
                    .iter()
                    .find(|w| !w.is_empty())
                    .cloned()
                    .unwrap_or_default();
                EquivalenceClass {
                    representative,
                    label: label.clone(),
                    members: words,
                    transform: transform.restrict(&self.reach),
                }
            })
            .collect();
        EquivalenceClassSet::new(classes, self.null_words, self.reach, self.w0)
    }

    fn is_null(&self, t: &PartialTransform) -> bool {
        self.options.empty_policy == EmptyPolicy::Exclude && t.restrict(&self.reach).is_empty()
    }

    fn check_cap(&self) -> Result<()> {
        if self.labels.len() > self.options.max_elements {
            return Err(Error::Capped {
                cap: self.options.max_elements,
                elements: self.labels.len(),
                pending: self.queue.len(),
            });
        }
        Ok(())
    }

    fn record(&mut self, class: usize, word: ActionWord, transform: PartialTransform) {
        self.lookup.insert(word.clone(), class);
        if transform.agrees_on(&self.transforms[class], &self.reach) {
            self.classes[class].push(Member { word, transform });
        } else {
            self.dissent.insert(class);
            self.dissenters[class].push(Member { word, transform });
        }
    }

    fn push_class(&mut self, members: Vec<Member>) {
        let i = self.labels.len();
        for m in &members {
            self.lookup.insert(m.word.clone(), i);
        }
        let t = members[0].transform.clone();
        let (agree, differ): (Vec<Member>, Vec<Member>) = members
            .into_iter()
            .partition(|m| m.transform.agrees_on(&t, &self.reach));
        self.positions.insert(agree[0].word.clone(), i);
        self.labels.push(agree[0].word.clone());
        self.probes.push(t.apply(self.w0));
        self.transforms.push(t);
        self.classes.push(agree);
        self.dissenters.push(differ);
        self.refresh_dissent(i);
        self.refine_profiles(i);
    }

    fn refresh_dissent(&mut self, class: usize) {
        if self.dissenters[class].is_empty() {
            self.dissent.remove(&class);
        } else {
            self.dissent.insert(class);
        }
    }

    fn merge_label_into(&mut self, from: usize, into: &ActionWord) {
        let mut members = self.classes.remove(from);
        members.extend(self.dissenters.remove(from));
        self.labels.remove(from);
        self.transforms.remove(from);
        self.probes.remove(from);
        self.positions = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let into = self.label_position(into).unwrap();
        for m in members {
            self.record(into, m.word, m.transform);
        }
        self.lookup.clear();
        for (i, class) in self.classes.iter().zip(&self.dissenters).enumerate() {
            for m in class.0.iter().chain(class.1) {
                self.lookup.insert(m.word.clone(), i);
            }
        }
        self.dissent = (0..self.labels.len())
            .filter(|&i| !self.dissenters[i].is_empty())
            .collect();
    }

    /// Removes every disagreeing member from its class, grouped by restricted transform.
    fn split_dissenters(&mut self) -> Vec<Vec<Member>> {
        let mut groups = Vec::new();
        for r in std::mem::take(&mut self.dissent) {
            let split = std::mem::take(&mut self.dissenters[r]);
            let mut by_transform: Vec<(PartialTransform, Vec<Member>)> = Vec::new();
            for m in split {
                let t = m.transform.restrict(&self.reach);
                match by_transform.iter_mut().find(|(k, _)| *k == t) {
                    Some((_, g)) => g.push(m),
                    None => by_transform.push((t, vec![m])),
                }
            }
            groups.extend(by_transform.into_iter().map(|(_, g)| g));
        }
        groups
    }

    fn point_index(&self, x: Option<StateId>) -> usize {
        x.map_or(self.world.num_states(), StateId::index)
    }

    fn key_of(&self, t: &PartialTransform) -> ProfileKey {
        ProfileKey {
            row: self.row_class[self.point_index(t.apply(self.w0))],
            col: self.probe_points.iter().map(|&p| t.apply(p)).collect(),
        }
    }

    fn equivalents_of_transform(&self, t: &PartialTransform) -> Vec<usize> {
        self.key_index
            .get(&self.key_of(t))
            .cloned()
            .unwrap_or_default()
    }

    /// Incorporates label `c` into the row partition and probe list, then re-keys all labels.
    fn refine_profiles(&mut self, c: usize) {
        let t = &self.transforms[c];
        let before = self.row_class.iter().max().map_or(0, |m| m + 1);
        let mut ids: HashMap<(u32, Option<StateId>), u32> = HashMap::new();
        let n = self.world.num_states();
        for x in 0..=n {
            let image = if x == n {
                None
            } else {
                t.apply(StateId::new(x))
            };
            let next = ids.len() as u32;
            self.row_class[x] = *ids.entry((self.row_class[x], image)).or_insert(next);
        }
        // ids are numbered by first appearance, so an unrefined partition keeps its numbering
        let mut changed = ids.len() as u32 != before;
        if let Some(p) = self.probes[c] {
            if !std::mem::replace(&mut self.probe_seen[p.index()], true) {
                self.probe_points.push(p);
                changed = true;
            }
        }
        if changed {
            self.rebuild_key_index();
        } else {
            let key = self.key_of(&self.transforms[c]);
            self.key_index.entry(key).or_default().push(c);
        }
    }

    fn rebuild_profiles(&mut self) {
        self.row_class.iter_mut().for_each(|x| *x = 0);
        self.probe_seen.iter_mut().for_each(|x| *x = false);
        self.probe_points.clear();
        self.key_index.clear();
        for c in 0..self.labels.len() {
            self.refine_profiles(c);
        }
        self.rebuild_key_index();
    }

    fn rebuild_key_index(&mut self) {
        let mut index: FxHashMap<ProfileKey, Vec<usize>> = FxHashMap::default();
        for (i, t) in self.transforms.iter().enumerate() {
            index.entry(self.key_of(t)).or_default().push(i);
        }
        self.key_index = index;
    }

    fn broken_classes(&mut self, t: &PartialTransform) -> Vec<Vec<Member>> {
        let Some(x) = t.apply(self.w0) else {
            return Vec::new();
        };
        // a member that agrees with its label on reach cannot be separated at x
        let mut groups = Vec::new();
        let dissenting: Vec<usize> = self.dissent.iter().copied().collect();
        for r in dissenting {
            let outcome = self.transforms[r].apply(x);
            let (keep, split): (Vec<Member>, Vec<Member>) = std::mem::take(&mut self.dissenters[r])
                .into_iter()
                .partition(|m| m.transform.apply(x) == outcome);
            self.dissenters[r] = keep;
            self.refresh_dissent(r);
            let mut by_outcome: Vec<(Option<StateId>, Vec<Member>)> = Vec::new();
            for m in split {
                let o = m.transform.apply(x);
                match by_outcome.iter_mut().find(|(k, _)| *k == o) {
                    Some((_, g)) => g.push(m),
                    None => by_outcome.push((o, vec![m])),
                }
            }
            groups.extend(by_outcome.into_iter().map(|(_, g)| g));
        }
        groups
    }
}
