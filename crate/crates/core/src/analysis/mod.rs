//! Algebraic properties of an action Cayley table, element orders and the world conditions.
//!
//! Everything here reads the table alone: entry `[r][c]` is `c ∘ r`.

mod conditions;

pub use conditions::{
    check_wc1, check_wc2, check_wc3_homogeneity, homogeneity_witness, is_reversible,
    reversible_actions, Reversibility, Wc1Report, Wc2Report, Wc3Outcome, DEFAULT_WC3_CAP,
};

use crate::cayley::ActionCayleyTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    CommutativeGroup,
    Group,
    CommutativeMonoid,
    Monoid,
    SmallCategory,
    /// No two-sided identity, or composition is not associative.
    Unstructured,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::CommutativeGroup => "commutative group",
            Classification::Group => "group",
            Classification::CommutativeMonoid => "commutative monoid",
            Classification::Monoid => "monoid",
            Classification::SmallCategory => "small category",
            Classification::Unstructured => "unstructured",
        }
    }

    pub fn is_group(self) -> bool {
        matches!(
            self,
            Classification::CommutativeGroup | Classification::Group
        )
    }

    /// Groups count as monoids.
    pub fn is_monoid(self) -> bool {
        self.is_group()
            || matches!(
                self,
                Classification::CommutativeMonoid | Classification::Monoid
            )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityInfo {
    pub two_sided: Option<usize>,
    /// `e` with `e ∘ a = a` for every `a`.
    pub left: Vec<usize>,
    /// `e` with `a ∘ e = a` for every `a`.
    pub right: Vec<usize>,
}

/// Inverses of one element relative to the two-sided identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InverseInfo {
    /// `b` with `b ∘ a = 1`.
    pub left: Vec<usize>,
    /// `b` with `a ∘ b = 1`.
    pub right: Vec<usize>,
    pub two_sided: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderInfo {
    /// `a^n` is the identity and `n` is minimal.
    GroupOrder(usize),
    /// `a^index = a^(index + period)` with both minimal; no power is the identity.
    IndexPeriod { index: usize, period: usize },
    /// `a^(defined + 1)` is undefined; only the first `defined` powers exist.
    Partial { defined: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub labels: Vec<String>,
    pub totality: bool,
    pub identity: IdentityInfo,
    pub inverses: Vec<InverseInfo>,
    pub associative: bool,
    /// `(a, b, c)` with `c ∘ (b ∘ a) ≠ (c ∘ b) ∘ a`.
    pub associativity_counterexample: Option<(usize, usize, usize)>,
    pub commutative: bool,
    /// `(a, b)` with `b ∘ a ≠ a ∘ b`.
    pub commutativity_counterexample: Option<(usize, usize)>,
    pub classification: Classification,
    pub orders: Vec<OrderInfo>,
}

impl AlgebraReport {
    /// Every element has a two-sided inverse.
    pub fn all_invertible(&self) -> bool {
        self.identity.two_sided.is_some() && self.inverses.iter().all(|i| !i.two_sided.is_empty())
    }

    /// The five property rows as (name, holds).
    pub fn property_rows(&self) -> [(&'static str, bool); 5] {
        [
            ("Totality", self.totality),
            ("Identity", self.identity.two_sided.is_some()),
            ("Inverse", self.all_invertible()),
            ("Associative", self.associative),
            ("Commutative", self.commutative),
        ]
    }
}

pub fn analyze(table: &ActionCayleyTable) -> AlgebraReport {
    let n = table.len();
    let e = &table.entries;
    let totality = e.iter().flatten().all(Option::is_some);

    let left: Vec<usize> = (0..n)
        .filter(|&id| (0..n).all(|a| e[a][id] == Some(a)))
        .collect();
    let right: Vec<usize> = (0..n)
        .filter(|&id| (0..n).all(|a| e[id][a] == Some(a)))
        .collect();
    let two_sided = left.iter().copied().find(|l| right.contains(l));
    let identity = IdentityInfo {
        two_sided,
        left,
        right,
    };

    let inverses = (0..n)
        .map(|a| match two_sided {
            None => InverseInfo::default(),
            Some(id) => {
                let left: Vec<usize> = (0..n).filter(|&b| e[a][b] == Some(id)).collect();
                let right: Vec<usize> = (0..n).filter(|&b| e[b][a] == Some(id)).collect();
                let two_sided = left.iter().copied().filter(|b| right.contains(b)).collect();
                InverseInfo {
                    left,
                    right,
                    two_sided,
                }
            }
        })
        .collect();

    let associativity_counterexample = associativity_violation(table);
    let commutativity_counterexample = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| e[a][b] != e[b][a]);

    let mut report = AlgebraReport {
        labels: table.labels.clone(),
        totality,
        identity,
        inverses,
        associative: associativity_counterexample.is_none(),
        associativity_counterexample,
        commutative: commutativity_counterexample.is_none(),
        commutativity_counterexample,
        classification: Classification::Unstructured,
        orders: element_orders(table),
    };
    report.classification = classify(&report);
    report
}

fn classify(r: &AlgebraReport) -> Classification {
    if r.identity.two_sided.is_none() || !r.associative {
        return Classification::Unstructured;
    }
    match (r.totality, r.all_invertible(), r.commutative) {
        (false, _, _) => Classification::SmallCategory,
        (true, true, true) => Classification::CommutativeGroup,
        (true, true, false) => Classification::Group,
        (true, false, true) => Classification::CommutativeMonoid,
        (true, false, false) => Classification::Monoid,
    }
}

/// First triple, in index order, where the two bracketings differ. Undefined composites
/// must be undefined on both sides.
pub fn associativity_violation(table: &ActionCayleyTable) -> Option<(usize, usize, usize)> {
    let n = table.len();
    let e = &table.entries;
    for a in 0..n {
        for b in 0..n {
            let ba = e[a][b];
            for c in 0..n {
                let outer = ba.and_then(|x| e[x][c]);
                let inner = e[b][c].and_then(|cb| e[a][cb]);
                if outer != inner {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Orders of all elements, following powers `a^(k+1) = a ∘ a^k` through the table.
pub fn element_orders(table: &ActionCayleyTable) -> Vec<OrderInfo> {
    let n = table.len();
    let e = &table.entries;
    let identity = (0..n).find(|&id| (0..n).all(|a| e[a][id] == Some(a) && e[id][a] == Some(a)));
    (0..n)
        .map(|a| {
            // first_seen[x] = k such that a^k = x
            let mut first_seen = vec![0usize; n];
            let mut power = a;
            let mut k = 1;
            loop {
                if Some(power) == identity {
                    return OrderInfo::GroupOrder(k);
                }
                if first_seen[power] != 0 {
                    let index = first_seen[power];
                    return OrderInfo::IndexPeriod {
                        index,
                        period: k - index,
                    };
                }
                first_seen[power] = k;
                match e[power][a] {
                    Some(next) => power = next,
                    None => return OrderInfo::Partial { defined: k },
                }
                k += 1;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests;
