use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::transform::PartialTransform;
use crate::world::{ActionWord, World};

use super::classes::{EquivalenceClass, EquivalenceClassSet};
use super::tables::ActionCayleyTable;

/// Moves the algebra to the new initial state `d * w0` without rerunning the engine.
///
/// Every class transform is cut down to the states reachable from the new initial state.
/// Classes that become nowhere defined are dropped and classes that coincide are merged.
pub fn rebase(
    action_table: &ActionCayleyTable,
    classes: &EquivalenceClassSet,
    world: &World,
    d: &ActionWord,
) -> Result<(ActionCayleyTable, EquivalenceClassSet)> {
    if action_table.len() != classes.len() {
        return Err(Error::InvalidParameter(
            "action table and classes come from different runs".to_owned(),
        ));
    }
    let w0 = classes.initial();
    let Some(start) = world.apply_word(d, w0) else {
        return Err(Error::UndefinedAt {
            word: world.format_word(d),
            state: world.state_label(w0).to_owned(),
        });
    };
    let reach = world.reachable_mask(start);

    let mut merged: Vec<EquivalenceClass> = Vec::new();
    let mut by_transform: HashMap<PartialTransform, usize> = HashMap::new();
    let mut null_words: Vec<ActionWord> = classes.null_words().to_vec();
    for class in classes.classes() {
        let t = class.transform.restrict(&reach);
        if t.is_empty() {
            null_words.extend(class.members.iter().cloned());
            continue;
        }
        match by_transform.get(&t) {
            Some(&i) => {
                let into = &mut merged[i];
                into.members.extend(class.members.iter().cloned());
                into.members.sort();
                if class.representative < into.representative {
                    into.representative = class.representative.clone();
                    into.label = class.label.clone();
                }
            }
            None => {
                by_transform.insert(t.clone(), merged.len());
                merged.push(EquivalenceClass {
                    representative: class.representative.clone(),
                    label: class.label.clone(),
                    members: class.members.clone(),
                    transform: t,
                });
            }
        }
    }
    let set = EquivalenceClassSet::new(merged, null_words, reach, start);

    let index: HashMap<&PartialTransform, usize> = set
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.transform, i))
        .collect();
    let entries = set
        .classes()
        .iter()
        .map(|r| {
            set.classes()
                .iter()
                .map(|c| {
                    let t = c.transform.after(&r.transform);
                    if t.is_empty() {
                        Ok(None)
                    } else {
                        index.get(&t).map(|&k| Some(k)).ok_or_else(|| {
                            Error::ClosureViolation(
                                world.format_word(&c.representative.after(&r.representative)),
                            )
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = set
        .classes()
        .iter()
        .map(|c| world.format_word(&c.representative))
        .collect();
    Ok((ActionCayleyTable { labels, entries }, set))
}
