//! Partitions written by hand or by another tool, so they can be checked against the closure.
//!
//! ```toml
//! [[classes]]
//! members = ["1", "RL"]
//!
//! [[classes]]
//! members = ["U", "D"]
//! ```

use std::fs;
use std::path::Path;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::world::{ActionWord, StateId, World};

use super::classes::{EquivalenceClass, EquivalenceClassSet};
use super::tables::ActionCayleyTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub classes: Vec<PartitionClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionClass {
    pub members: Vec<String>,
}

fn schema(origin: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: origin.to_owned(),
        message: message.into(),
    }
}

pub fn partition_from_str(world: &World, text: &str, origin: &str) -> Result<Vec<Vec<ActionWord>>> {
    let file: PartitionFile = toml::from_str(text).map_err(|e| schema(origin, e.to_string()))?;
    file.classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.members.is_empty() {
                return Err(schema(origin, format!("classes[{i}].members is empty")));
            }
            c.members
                .iter()
                .map(|m| {
                    world
                        .parse_word(m)
                        .map_err(|e| schema(origin, format!("classes[{i}].members: {e}")))
                })
                .collect()
        })
        .collect()
}

pub fn load_partition(world: &World, path: impl AsRef<Path>) -> Result<Vec<Vec<ActionWord>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    partition_from_str(world, &text, &path.display().to_string())
}

/// Every recorded member of every class.
pub fn partition_to_string(world: &World, classes: &EquivalenceClassSet) -> String {
    let file = PartitionFile {
        classes: classes
            .classes()
            .iter()
            .map(|c| PartitionClass {
                members: c.members.iter().map(|m| world.format_word(m)).collect(),
            })
            .collect(),
    };
    toml::to_string(&file).expect("partitions always serialize")
}

/// Classes and action table for a given partition of words, relative to `w0`.
///
/// Each class takes the transform of its representative. Table entries are found by
/// composing class transforms; a composite that matches no class is left undefined so a
/// checker can report it rather than fail here.
pub fn tables_from_partition(
    world: &World,
    w0: StateId,
    partition: Vec<Vec<ActionWord>>,
) -> Result<(ActionCayleyTable, EquivalenceClassSet)> {
    if w0.index() >= world.num_states() {
        return Err(Error::UnknownState(format!("#{}", w0.index())));
    }
    let reach = world.reachable_mask(w0);
    let mut owner: FxHashMap<ActionWord, usize> = FxHashMap::default();
    let mut classes = Vec::with_capacity(partition.len());
    for (i, mut members) in partition.into_iter().enumerate() {
        members.sort();
        members.dedup();
        for m in &members {
            if let Some(j) = owner.insert(m.clone(), i) {
                return Err(Error::InvalidParameter(format!(
                    "`{}` is listed in classes {j} and {i}",
                    world.format_word(m)
                )));
            }
        }
        let representative = members
            .iter()
            .find(|w| !w.is_empty())
            .cloned()
            .unwrap_or_default();
        classes.push(EquivalenceClass {
            label: representative.clone(),
            transform: world.word_transform(&representative).restrict(&reach),
            representative,
            members,
        });
    }
    let set = EquivalenceClassSet::new(classes, Vec::new(), reach, w0);
    let entries = set
        .classes()
        .iter()
        .map(|r| {
            set.classes()
                .iter()
                .map(|c| set.class_of_transform(&c.transform.after(&r.transform)))
                .collect()
        })
        .collect();
    let labels = set
        .classes()
        .iter()
        .map(|c| world.format_word(&c.representative))
        .collect();
    let table = ActionCayleyTable::new(labels, entries)?;
    Ok((table, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{explore, EngineOptions};
    use crate::gallery;
    use crate::oracle::{compare_partitions, generate_closure, ClosureOptions};

    #[test]
    fn engine_partition_round_trips() {
        let world = gallery::cyclical_2x2();
        let run = explore(&world, world.initial(), EngineOptions::default()).unwrap();
        let text = partition_to_string(&world, &run.classes);
        let parsed = partition_from_str(&world, &text, "p.toml").unwrap();
        let (table, classes) = tables_from_partition(&world, world.initial(), parsed).unwrap();
        assert_eq!(table, run.action_table);
        for (a, b) in classes.classes().iter().zip(run.classes.classes()) {
            assert_eq!((&a.members, &a.transform), (&b.members, &b.transform));
        }
    }

    #[test]
    fn misplaced_member_is_named() {
        let world = gallery::cyclical_2x2();
        let text = r#"
            [[classes]]
            members = ["1", "U"]
            [[classes]]
            members = ["D"]
            [[classes]]
            members = ["L", "R"]
            [[classes]]
            members = ["UL"]
        "#;
        let parsed = partition_from_str(&world, text, "bad.toml").unwrap();
        let (table, classes) = tables_from_partition(&world, world.initial(), parsed).unwrap();
        let closure = generate_closure(&world, world.initial(), ClosureOptions::default()).unwrap();
        let report = compare_partitions(&world, &classes, &table, &closure);
        assert_eq!(report.mismatch.unwrap().word, "U");
    }

    #[test]
    fn bad_files_are_schema_errors() {
        let world = gallery::cyclical_2x2();
        for text in [
            "classes = 3",
            "[[classes]]\nmembers = []",
            "[[classes]]\nmembers = [\"X\"]",
        ] {
            assert!(matches!(
                partition_from_str(&world, text, "f.toml"),
                Err(Error::Schema { .. })
            ));
        }
        let twice = vec![
            vec![world.parse_word("1").unwrap()],
            vec![world.parse_word("1").unwrap()],
        ];
        assert!(tables_from_partition(&world, world.initial(), twice).is_err());
    }
}
