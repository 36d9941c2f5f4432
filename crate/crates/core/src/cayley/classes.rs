use rustc_hash::FxHashMap;

use crate::transform::PartialTransform;
use crate::world::{ActionWord, StateId, World};

/// One element of the action algebra: a class of behaviourally equivalent words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Shortest non-empty member, ties broken by alphabet order.
    pub representative: ActionWord,
    /// The word that labelled this class while the table was being grown.
    pub label: ActionWord,
    /// Every recorded member, in shortlex order.
    pub members: Vec<ActionWord>,
    /// The partial transform shared by all members on the explored sub-world.
    pub transform: PartialTransform,
}

/// The partition of all recorded words into classes, ordered by representative.
#[derive(Clone, Debug)]
pub struct EquivalenceClassSet {
    pub(crate) classes: Vec<EquivalenceClass>,
    pub(crate) lookup: FxHashMap<ActionWord, usize>,
    pub(crate) null_words: Vec<ActionWord>,
    pub(crate) reach: Vec<bool>,
    pub(crate) initial: StateId,
}

impl EquivalenceClassSet {
    pub(crate) fn new(
        mut classes: Vec<EquivalenceClass>,
        mut null_words: Vec<ActionWord>,
        reach: Vec<bool>,
        initial: StateId,
    ) -> Self {
        classes.sort_by(|a, b| a.representative.cmp(&b.representative));
        null_words.sort();
        let mut lookup = FxHashMap::default();
        for (i, c) in classes.iter().enumerate() {
            for m in &c.members {
                lookup.insert(m.clone(), i);
            }
        }
        EquivalenceClassSet {
            classes,
            lookup,
            null_words,
            reach,
            initial,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[EquivalenceClass] {
        &self.classes
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// States reachable from the initial state; equivalence is judged on these only.
    pub fn reach_mask(&self) -> &[bool] {
        &self.reach
    }

    /// Recorded composites whose transform is nowhere defined on the explored sub-world.
    pub fn null_words(&self) -> &[ActionWord] {
        &self.null_words
    }

    /// Class index of a recorded word.
    pub fn class_index(&self, word: &ActionWord) -> Option<usize> {
        self.lookup.get(word).copied()
    }

    /// Representative of a recorded word's class.
    pub fn representative_of(&self, word: &ActionWord) -> Option<&ActionWord> {
        self.class_index(word)
            .map(|i| &self.classes[i].representative)
    }

    /// Class of any word, recorded or not, decided by its transform on the explored sub-world.
    pub fn class_of(&self, world: &World, word: &ActionWord) -> Option<usize> {
        if let Some(i) = self.class_index(word) {
            return Some(i);
        }
        let t = world.word_transform(word);
        self.class_of_transform(&t)
    }

    pub fn class_of_transform(&self, t: &PartialTransform) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.transform.agrees_on(t, &self.reach))
    }

    /// Index of the class holding the empty word.
    pub fn identity_index(&self) -> usize {
        self.lookup[&ActionWord::empty()]
    }

    /// Total number of recorded words across all classes.
    pub fn recorded_words(&self) -> usize {
        self.lookup.len()
    }
}
