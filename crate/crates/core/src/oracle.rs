//! Brute-force closure of the generator transforms under composition.
//!
//! Words are enumerated breadth-first by length and deduplicated by transform, so the
//! first word to reach a transform is its shortlex-minimal witness. This shares no code with
//! the table-growing engine and serves as its reference.

use rustc_hash::FxHashMap as HashMap;

use crate::cayley::{ActionCayleyTable, EquivalenceClassSet};
use crate::error::{Error, Result};
use crate::transform::PartialTransform;
use crate::world::{ActionWord, StateId, World};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Compare transforms on all states instead of the reachable set.
    pub unrestricted: bool,
    /// Admit the nowhere-defined transform as a member.
    pub include_empty: bool,
    pub max_elements: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            unrestricted: false,
            include_empty: false,
            max_elements: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Members in discovery order, which is shortlex order of their witnesses.
    pub transforms: Vec<PartialTransform>,
    pub witnesses: Vec<ActionWord>,
    /// `[r][c]` is the member equal to `c ∘ r`, or `None` for the empty transform.
    pub composition: Vec<Vec<Option<usize>>>,
    /// Member pairs whose composite is nowhere defined (when the empty transform is excluded).
    pub empty_pairs: usize,
    /// The states transforms were compared on.
    pub mask: Vec<bool>,
    index: HashMap<PartialTransform, usize>,
}

impl ClosureResult {
    pub fn len(&self) -> usize {
        self.transforms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transforms.is_empty()
    }

    /// Member index of a transform, after cutting it down to the comparison mask.
    pub fn index_of(&self, t: &PartialTransform) -> Option<usize> {
        self.index.get(&t.restrict(&self.mask)).copied()
    }

    pub fn witness_of(&self, t: &PartialTransform) -> Option<&ActionWord> {
        self.index_of(t).map(|i| &self.witnesses[i])
    }

    /// True if composing any two members yields a member or the empty transform.
    pub fn is_closed(&self) -> bool {
        self.transforms.iter().all(|r| {
            self.transforms.iter().all(|c| {
                let t = c.after(r);
                t.is_empty() || self.index.contains_key(&t)
            })
        })
    }
}

pub fn generate_closure(
    world: &World,
    restrict_to_reachable_from: StateId,
    options: ClosureOptions,
) -> Result<ClosureResult> {
    let mask = if options.unrestricted {
        vec![true; world.num_states()]
    } else {
        world.reachable_mask(restrict_to_reachable_from)
    };
    let generators: Vec<(ActionWord, PartialTransform)> = world
        .actions()
        .map(|a| {
            (
                ActionWord::single(a),
                world.action_transform(a).restrict(&mask),
            )
        })
        .collect();

    let mut b = Builder {
        options,
        transforms: Vec::new(),
        witnesses: Vec::new(),
        index: HashMap::default(),
    };
    let mut frontier = Vec::new();
    for (word, t) in &generators {
        if let Some(i) = b.admit(word.clone(), t.clone())? {
            frontier.push(i);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (g_word, g) in &generators {
            for &f in &frontier {
                let t = g.after(&b.transforms[f]);
                let word = g_word.after(&b.witnesses[f]);
                if let Some(i) = b.admit(word, t)? {
                    next.push(i);
                }
            }
        }
        // keep the frontier in shortlex order so the next level is enumerated in order
        next.sort_by(|&x, &y| b.witnesses[x].cmp(&b.witnesses[y]));
        frontier = next;
    }

    let Builder {
        transforms,
        witnesses,
        index,
        ..
    } = b;
    let mut empty_pairs = 0;
    let composition = transforms
        .iter()
        .map(|r| {
            transforms
                .iter()
                .map(|c| {
                    let t = c.after(r);
                    let k = index.get(&t).copied();
                    if k.is_none() {
                        debug_assert!(t.is_empty());
                        empty_pairs += 1;
                    }
                    k
                })
                .collect()
        })
        .collect();
    Ok(ClosureResult {
        transforms,
        witnesses,
        composition,
        empty_pairs,
        mask,
        index,
    })
}

struct Builder {
    options: ClosureOptions,
    transforms: Vec<PartialTransform>,
    witnesses: Vec<ActionWord>,
    index: HashMap<PartialTransform, usize>,
}

impl Builder {
    fn admit(&mut self, word: ActionWord, t: PartialTransform) -> Result<Option<usize>> {
        if (t.is_empty() && !self.options.include_empty) || self.index.contains_key(&t) {
            return Ok(None);
        }
        if self.transforms.len() >= self.options.max_elements {
            return Err(Error::Capped {
                cap: self.options.max_elements,
                elements: self.transforms.len() + 1,
                pending: 0,
            });
        }
        let i = self.transforms.len();
        self.index.insert(t.clone(), i);
        self.transforms.push(t);
        self.witnesses.push(word);
        Ok(Some(i))
    }
}

/// Outcome of checking an engine run against the closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub engine_elements: usize,
    pub oracle_elements: usize,
    pub mismatch: Option<Mismatch>,
}

impl PartitionReport {
    pub fn matches(&self) -> bool {
        self.mismatch.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// The word the disagreement was found at.
    pub word: String,
    pub reason: String,
}

/// Checks, in order: element counts, that each class transform occurs exactly once in the
/// closure, that every recorded member acts like its class, and that the two composition
/// tables agree under the class-to-witness correspondence. The first failure is reported.
pub fn compare_partitions(
    world: &World,
    classes: &EquivalenceClassSet,
    table: &ActionCayleyTable,
    closure: &ClosureResult,
) -> PartitionReport {
    let mut report = PartitionReport {
        engine_elements: classes.len(),
        oracle_elements: closure.len(),
        mismatch: None,
    };
    let fail = |word: &ActionWord, reason: String| {
        Some(Mismatch {
            word: world.format_word(word),
            reason,
        })
    };
    if classes.len() != closure.len() {
        // name the first element present on one side only
        let extra = classes
            .classes()
            .iter()
            .find(|c| closure.index_of(&c.transform).is_none())
            .map(|c| {
                (
                    c.representative.clone(),
                    "engine class missing from closure",
                )
            })
            .or_else(|| {
                closure
                    .transforms
                    .iter()
                    .zip(&closure.witnesses)
                    .find(|(t, _)| classes.class_of_transform(t).is_none())
                    .map(|(_, w)| (w.clone(), "closure element missing from engine classes"))
            });
        let (word, why) = extra.unwrap_or_else(|| (ActionWord::empty(), "count differs"));
        report.mismatch = fail(
            &word,
            format!(
                "{why}: engine has {}, closure has {}",
                classes.len(),
                closure.len()
            ),
        );
        return report;
    }
    let mut to_oracle = Vec::with_capacity(classes.len());
    let mut seen = vec![false; closure.len()];
    for c in classes.classes() {
        match closure.index_of(&c.transform) {
            None => {
                report.mismatch = fail(&c.representative, "transform not in closure".into());
                return report;
            }
            Some(k) if seen[k] => {
                report.mismatch = fail(
                    &c.representative,
                    format!(
                        "shares its transform with another class (closure witness {})",
                        world.format_word(&closure.witnesses[k])
                    ),
                );
                return report;
            }
            Some(k) => {
                seen[k] = true;
                to_oracle.push(k);
            }
        }
    }
    for c in classes.classes() {
        for m in &c.members {
            let t = world.word_transform(m);
            if !t.agrees_on(&c.transform, classes.reach_mask()) {
                report.mismatch = fail(
                    m,
                    format!(
                        "member acts differently from its class {}",
                        world.format_word(&c.representative)
                    ),
                );
                return report;
            }
        }
    }
    if table.len() != classes.len() {
        report.mismatch = fail(
            &ActionWord::empty(),
            "table size differs from class count".into(),
        );
        return report;
    }
    for r in 0..table.len() {
        for c in 0..table.len() {
            let engine = table.entries[r][c].map(|k| to_oracle[k]);
            let oracle = closure.composition[to_oracle[r]][to_oracle[c]];
            if engine != oracle {
                let word = classes.classes()[c]
                    .representative
                    .after(&classes.classes()[r].representative);
                report.mismatch = fail(&word, "composition differs".into());
                return report;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{explore, EngineOptions};
    use crate::gallery;
    use crate::world::Treatment;

    fn closure(world: &World) -> ClosureResult {
        generate_closure(world, world.initial(), ClosureOptions::default()).unwrap()
    }

    #[test]
    fn gallery_sizes() {
        let expect = [
            ("cyclical-2x2", 4),
            ("wall-identity", 26),
            ("block-1d4", 17),
            ("consumable-identity", 64),
            ("wall-masked", 58),
            ("consumable-masked", 20),
        ];
        for (key, n) in expect {
            let c = closure(&gallery::lookup(key).unwrap().build());
            assert_eq!(c.len(), n, "{key}");
            assert!(c.is_closed(), "{key}");
        }
    }

    #[test]
    fn identity_only_alphabet() {
        let world =
            World::from_labels("one", &["a", "b"], &["1"], &[], Treatment::Masked, "a").unwrap();
        let c = closure(&world);
        assert_eq!(c.len(), 1);
        assert_eq!(c.transforms[0].images(), [Some(StateId::new(0)), None]);
    }

    #[test]
    fn witnesses_are_shortlex_minimal() {
        let world = gallery::cyclical_2x2();
        let c = closure(&world);
        let names: Vec<String> = c.witnesses.iter().map(|w| world.format_word(w)).collect();
        assert_eq!(names, ["1", "U", "L", "UL"]);
        assert!(c.witnesses.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn empty_composites_are_counted() {
        let c = closure(&gallery::wall_masked());
        assert!(c.empty_pairs > 0);
        let with = generate_closure(
            &gallery::wall_masked(),
            StateId::new(0),
            ClosureOptions {
                include_empty: true,
                ..ClosureOptions::default()
            },
        )
        .unwrap();
        assert_eq!(with.len(), 59);
        assert_eq!(with.empty_pairs, 0);
        assert_eq!(closure(&gallery::cyclical_2x2()).empty_pairs, 0);
    }

    #[test]
    fn identity_treatment_gives_total_monoids() {
        for key in ["wall-identity", "block-1d4", "consumable-identity"] {
            let c = closure(&gallery::lookup(key).unwrap().build());
            assert!(c.transforms.iter().all(|t| t.restrict(&c.mask) == *t));
            assert!(c.composition.iter().flatten().all(Option::is_some), "{key}");
        }
    }

    #[test]
    fn unrestricted_sees_unreachable_states() {
        // from a consumed state only half the consumable world is reachable
        let world = gallery::consumable_identity();
        let start = world.state_id("w4").unwrap();
        let narrow = generate_closure(&world, start, ClosureOptions::default()).unwrap();
        let wide = generate_closure(
            &world,
            start,
            ClosureOptions {
                unrestricted: true,
                ..ClosureOptions::default()
            },
        )
        .unwrap();
        assert!(narrow.len() < wide.len());
    }

    #[test]
    fn engine_agrees_on_the_gallery() {
        for e in gallery::ENTRIES {
            let world = e.build();
            let run = explore(&world, world.initial(), EngineOptions::default()).unwrap();
            let report =
                compare_partitions(&world, &run.classes, &run.action_table, &closure(&world));
            assert!(report.matches(), "{}: {:?}", e.key, report.mismatch);
        }
    }

    #[test]
    fn corrupted_classes_are_caught() {
        let world = gallery::cyclical_2x2();
        let run = explore(&world, world.initial(), EngineOptions::default()).unwrap();
        let mut classes = run.classes.clone();
        // move L into the class of U
        let l = world.parse_word("L").unwrap();
        let u = classes
            .class_index(&world.parse_word("U").unwrap())
            .unwrap();
        let from = classes.class_index(&l).unwrap();
        classes.classes[from].members.retain(|m| *m != l);
        classes.classes[u].members.push(l);
        let report = compare_partitions(&world, &classes, &run.action_table, &closure(&world));
        let m = report.mismatch.expect("mismatch");
        assert_eq!(m.word, "L");

        let mut table = run.action_table.clone();
        table.entries[1][1] = Some(2);
        let report = compare_partitions(&world, &run.classes, &table, &closure(&world));
        assert!(!report.matches());
    }
}
