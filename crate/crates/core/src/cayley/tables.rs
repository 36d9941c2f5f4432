use crate::world::{ActionWord, StateId};

/// Entry `[r][c]` is `c * (r * w0)`; rows and columns follow class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCayleyTable {
    pub labels: Vec<String>,
    pub words: Vec<ActionWord>,
    pub initial: StateId,
    pub entries: Vec<Vec<Option<StateId>>>,
}

impl StateCayleyTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get(&self, row: &str, col: &str) -> Option<Option<StateId>> {
        Some(self.entries[self.position(row)?][self.position(col)?])
    }
}

/// Entry `[r][c]` is the class of `c ∘ r`, or `None` where the composite is nowhere defined.
///
/// The table carries no reference to a world, so it can also be built by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionCayleyTable {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Option<usize>>>,
}

impl ActionCayleyTable {
    /// Checks that the table is square and every entry is in range.
    pub fn new(labels: Vec<String>, entries: Vec<Vec<Option<usize>>>) -> crate::Result<Self> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(crate::Error::MalformedStructure(format!(
                "table for {n} labels is not {n}x{n}"
            )));
        }
        if entries.iter().flatten().flatten().any(|&e| e >= n) {
            return Err(crate::Error::MalformedStructure(
                "table entry out of range".to_owned(),
            ));
        }
        Ok(ActionCayleyTable { labels, entries })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `c ∘ r` by index.
    pub fn compose(&self, c: usize, r: usize) -> Option<usize> {
        self.entries[r][c]
    }

    /// Label-level lookup of entry `[row][col]`; the outer `None` means an unknown label.
    pub fn get(&self, row: &str, col: &str) -> Option<Option<&str>> {
        let e = self.entries[self.position(row)?][self.position(col)?];
        Some(e.map(|i| self.labels[i].as_str()))
    }

    pub fn undefined_count(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter(|e| e.is_none())
            .count()
    }
}
