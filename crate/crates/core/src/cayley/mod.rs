//! Cayley tables of the action algebra.
//!
//! [`generate_state_cayley_table`] grows a table of representative words until every
//! composite of two labels is accounted for; [`generate_action_cayley_table`] then reads
//! the composition table off the recorded words. [`explore`] does both.

mod classes;
mod engine;
mod partition;
mod rebase;
mod tables;

pub use classes::{EquivalenceClass, EquivalenceClassSet};
pub use engine::{EmptyPolicy, EngineOptions, EngineStats, Exploration};
pub use partition::{
    load_partition, partition_from_str, partition_to_string, tables_from_partition, PartitionClass,
    PartitionFile,
};
pub use rebase::rebase;
pub use tables::{ActionCayleyTable, StateCayleyTable};

use crate::error::{Error, Result};
use crate::world::{StateId, World};

/// Everything produced by one run of the engine.
#[derive(Clone, Debug)]
pub struct AlgebraRun {
    pub state_table: StateCayleyTable,
    pub action_table: ActionCayleyTable,
    pub classes: EquivalenceClassSet,
    pub stats: EngineStats,
}

impl AlgebraRun {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn explore(world: &World, w0: StateId, options: EngineOptions) -> Result<AlgebraRun> {
    let (state_table, classes, stats) = grow(world, w0, options)?;
    let action_table = generate_action_cayley_table(&state_table, &classes, world, w0)?;
    Ok(AlgebraRun {
        state_table,
        action_table,
        classes,
        stats,
    })
}

pub fn generate_state_cayley_table(
    world: &World,
    w0: StateId,
    options: EngineOptions,
) -> Result<(StateCayleyTable, EquivalenceClassSet)> {
    grow(world, w0, options).map(|(t, c, _)| (t, c))
}

fn grow(
    world: &World,
    w0: StateId,
    options: EngineOptions,
) -> Result<(StateCayleyTable, EquivalenceClassSet, EngineStats)> {
    let ex = Exploration::new(world, w0, options)?.run()?;
    let stats = ex.stats();
    let classes = ex.into_classes();
    Ok((state_table_of(world, &classes), classes, stats))
}

/// Materializes the state table over canonical representatives.
pub fn state_table_of(world: &World, classes: &EquivalenceClassSet) -> StateCayleyTable {
    let w0 = classes.initial();
    let probes: Vec<_> = classes
        .classes()
        .iter()
        .map(|c| c.transform.apply(w0))
        .collect();
    StateCayleyTable {
        labels: classes
            .classes()
            .iter()
            .map(|c| world.format_word(&c.representative))
            .collect(),
        words: classes
            .classes()
            .iter()
            .map(|c| c.representative.clone())
            .collect(),
        initial: w0,
        entries: probes
            .iter()
            .map(|&p| {
                classes
                    .classes()
                    .iter()
                    .map(|c| c.transform.apply_opt(p))
                    .collect()
            })
            .collect(),
    }
}

/// Entry `[r][c]` is the class recorded for the word `label_c ∘ label_r`, where the labels
/// are the words that headed each class while the table grew. A composite that was set aside
/// as nowhere defined gives `None`.
pub fn generate_action_cayley_table(
    state_table: &StateCayleyTable,
    classes: &EquivalenceClassSet,
    world: &World,
    w0: StateId,
) -> Result<ActionCayleyTable> {
    if state_table.len() != classes.len() || classes.initial() != w0 {
        return Err(Error::InvalidParameter(
            "state table and classes come from different runs".to_owned(),
        ));
    }
    let n = classes.len();
    let mut entries = vec![vec![None; n]; n];
    for (r, row) in classes.classes().iter().enumerate() {
        for (c, col) in classes.classes().iter().enumerate() {
            let word = col.label.after(&row.label);
            entries[r][c] = match classes.class_index(&word) {
                Some(k) => Some(k),
                None => {
                    let t = world.word_transform(&word).restrict(classes.reach_mask());
                    if !t.is_empty() {
                        return Err(Error::ClosureViolation(world.format_word(&word)));
                    }
                    None
                }
            };
        }
    }
    Ok(ActionCayleyTable {
        labels: state_table.labels.clone(),
        entries,
    })
}
