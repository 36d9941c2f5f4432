use std::collections::HashMap;

use crate::cayley::AlgebraRun;
use crate::error::{Error, Result};
use crate::world::World;

/// A finite algebra acting on a finite carrier, both given as tables.
///
/// `compose[r][c]` is `c ∘ r` and `act[a][x]` is `a * x`; `None` is undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteActionStructure {
    pub elements: Vec<String>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identity: usize,
    pub carrier: Vec<String>,
    pub act: Vec<Vec<Option<usize>>>,
}

impl FiniteActionStructure {
    /// Builds and fully validates an action: shapes, identity, associativity of the defined
    /// composites, and `a' * (a * x) = (a' ∘ a) * x` wherever all three sides are defined.
    pub fn new(
        elements: Vec<String>,
        compose: Vec<Vec<Option<usize>>>,
        identity: usize,
        carrier: Vec<String>,
        act: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let s = Self::candidate(elements, compose, identity, carrier, act)?;
        if let Some((a2, a, x)) = s.compatibility_violation() {
            return Err(Error::MalformedStructure(format!(
                "{} * ({} * {}) differs from ({} ∘ {}) * {}",
                s.elements[a2],
                s.elements[a],
                s.carrier[x],
                s.elements[a2],
                s.elements[a],
                s.carrier[x]
            )));
        }
        Ok(s)
    }

    /// Like [`FiniteActionStructure::new`] but without the compatibility check, so that a
    /// proposed action can be tested against a composition table it may not respect.
    pub fn candidate(
        elements: Vec<String>,
        compose: Vec<Vec<Option<usize>>>,
        identity: usize,
        carrier: Vec<String>,
        act: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = elements.len();
        let m = carrier.len();
        let bad = |msg: String| Err(Error::MalformedStructure(msg));
        if n == 0 {
            return bad("no elements".into());
        }
        if identity >= n {
            return bad("identity out of range".into());
        }
        if compose.len() != n || compose.iter().any(|r| r.len() != n) {
            return bad(format!("composition table must be {n}x{n}"));
        }
        if compose.iter().flatten().flatten().any(|&e| e >= n) {
            return bad("composition entry out of range".into());
        }
        if act.len() != n || act.iter().any(|r| r.len() != m) {
            return bad(format!("action table must be {n}x{m}"));
        }
        if act.iter().flatten().flatten().any(|&x| x >= m) {
            return bad("action entry out of range".into());
        }
        unique(&elements, "element")?;
        unique(&carrier, "carrier point")?;
        let s = FiniteActionStructure {
            elements,
            compose,
            identity,
            carrier,
            act,
        };
        for a in 0..n {
            if s.compose[a][identity] != Some(a) || s.compose[identity][a] != Some(a) {
                return bad(format!(
                    "{} is not a two-sided identity",
                    s.elements[identity]
                ));
            }
        }
        for x in 0..m {
            if s.act[identity][x] != Some(x) {
                return bad(format!("identity moves {}", s.carrier[x]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let outer = s.compose[a][b].and_then(|ba| s.compose[ba][c]);
                    let inner = s.compose[b][c].and_then(|cb| s.compose[a][cb]);
                    if outer != inner {
                        return bad(format!(
                            "composition is not associative at ({}, {}, {})",
                            s.elements[a], s.elements[b], s.elements[c]
                        ));
                    }
                }
            }
        }
        Ok(s)
    }

    /// The algebra of an engine run acting on the states reachable from its initial state.
    pub fn from_algebra(world: &World, run: &AlgebraRun) -> Self {
        let reach = run.classes.reach_mask();
        let states: Vec<usize> = (0..world.num_states()).filter(|&i| reach[i]).collect();
        let mut position = vec![usize::MAX; world.num_states()];
        for (k, &s) in states.iter().enumerate() {
            position[s] = k;
        }
        FiniteActionStructure {
            elements: run.action_table.labels.clone(),
            compose: run.action_table.entries.clone(),
            identity: run.classes.identity_index(),
            carrier: states
                .iter()
                .map(|&s| world.state_labels()[s].clone())
                .collect(),
            act: run
                .classes
                .classes()
                .iter()
                .map(|c| {
                    states
                        .iter()
                        .map(|&s| c.transform.images()[s].map(|t| position[t.index()]))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn point(&self, label: &str) -> Option<usize> {
        self.carrier.iter().position(|p| p == label)
    }

    /// `a' ∘ a`.
    pub fn then(&self, a: usize, a2: usize) -> Option<usize> {
        self.compose[a][a2]
    }

    /// First `(a', a, x)` with `a' * (a * x)` and `(a' ∘ a) * x` both defined and different.
    pub fn compatibility_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.elements.len();
        for a2 in 0..n {
            for a in 0..n {
                let Some(c) = self.compose[a][a2] else {
                    continue;
                };
                for x in 0..self.carrier.len() {
                    if let (Some(y), Some(z)) = (
                        self.act[a][x].and_then(|ax| self.act[a2][ax]),
                        self.act[c][x],
                    ) {
                        if y != z {
                            return Some((a2, a, x));
                        }
                    }
                }
            }
        }
        None
    }

    /// Carrier points grouped by the set of elements defined at them, in order of first point.
    pub fn object_partition(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut by_signature: HashMap<Vec<bool>, usize> = HashMap::new();
        for x in 0..self.carrier.len() {
            let sig: Vec<bool> = self.act.iter().map(|row| row[x].is_some()).collect();
            let next = blocks.len();
            let b = *by_signature.entry(sig).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(x);
        }
        blocks
    }
}

fn unique(labels: &[String], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::MalformedStructure(format!("duplicate {what} `{l}`")));
        }
    }
    Ok(())
}

/// A total map between two carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMapEta {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub images: Vec<usize>,
}

impl StateMapEta {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::MalformedStructure(format!(
                "map has {} images for {} points",
                images.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&z| z >= codomain.len()) {
            return Err(Error::MalformedStructure(format!(
                "image index {bad} outside the codomain"
            )));
        }
        Ok(StateMapEta {
            domain,
            codomain,
            images,
        })
    }

    /// Builds a map from `(point, image)` label pairs; every domain point must appear once.
    pub fn from_pairs(domain: &[&str], codomain: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let mut images = vec![None; domain.len()];
        for (from, to) in pairs {
            let i = domain
                .iter()
                .position(|d| d == from)
                .ok_or_else(|| Error::MalformedStructure(format!("unknown point `{from}`")))?;
            let j = codomain
                .iter()
                .position(|c| c == to)
                .ok_or_else(|| Error::MalformedStructure(format!("unknown image `{to}`")))?;
            if images[i].replace(j).is_some() {
                return Err(Error::MalformedStructure(format!("`{from}` mapped twice")));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::MalformedStructure(format!("`{}` has no image", domain[i])))
            })
            .collect::<Result<_>>()?;
        Self::new(
            domain.iter().map(|s| s.to_string()).collect(),
            codomain.iter().map(|s| s.to_string()).collect(),
            images,
        )
    }

    pub fn identity(carrier: &[String]) -> Self {
        StateMapEta {
            domain: carrier.to_vec(),
            codomain: carrier.to_vec(),
            images: (0..carrier.len()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `theta ∘ self`.
    pub fn then(&self, theta: &StateMapEta) -> Result<StateMapEta> {
        if self.codomain != theta.domain {
            return Err(Error::MalformedStructure(
                "maps do not compose: codomain and domain differ".into(),
            ));
        }
        Ok(StateMapEta {
            domain: self.domain.clone(),
            codomain: theta.codomain.clone(),
            images: self.images.iter().map(|&z| theta.images[z]).collect(),
        })
    }
}
