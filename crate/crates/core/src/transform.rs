use std::fmt;

use crate::error::{Error, Result};
use crate::world::StateId;

/// A partial self-map of a world's state set, indexed by state index.
///
/// `None` marks a state where the map is undefined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTransform {
    images: Vec<Option<StateId>>,
}

impl PartialTransform {
    pub fn identity(states: usize) -> Self {
        Self {
            images: (0..states).map(|i| Some(StateId::new(i))).collect(),
        }
    }

    /// The nowhere-defined transform.
    pub fn empty(states: usize) -> Self {
        Self {
            images: vec![None; states],
        }
    }

    pub fn from_images(images: Vec<Option<StateId>>) -> Self {
        Self { images }
    }

    pub fn images(&self) -> &[Option<StateId>] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.iter().all(Option::is_none)
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Some(StateId::new(i)))
    }

    /// Total and injective.
    pub fn is_bijection(&self) -> bool {
        if !self.is_total() {
            return false;
        }
        let mut seen = vec![false; self.images.len()];
        for w in self.images.iter().flatten() {
            if std::mem::replace(&mut seen[w.index()], true) {
                return false;
            }
        }
        true
    }

    #[inline]
    pub fn apply(&self, w: StateId) -> Option<StateId> {
        self.images[w.index()]
    }

    /// Applies to a possibly undefined state; undefined stays undefined.
    #[inline]
    pub fn apply_opt(&self, w: Option<StateId>) -> Option<StateId> {
        w.and_then(|w| self.images[w.index()])
    }

    /// `self ∘ first`: apply `first`, then `self`.
    ///
    /// Panics if the dimensions differ; see [`compose_transforms`] for the checked form.
    pub fn after(&self, first: &PartialTransform) -> PartialTransform {
        assert_eq!(self.len(), first.len(), "transform dimension mismatch");
        PartialTransform {
            images: first.images.iter().map(|w| self.apply_opt(*w)).collect(),
        }
    }

    /// Forgets the map outside `keep`; entries for states where `keep` is false become undefined.
    pub fn restrict(&self, keep: &[bool]) -> PartialTransform {
        PartialTransform {
            images: self
                .images
                .iter()
                .zip(keep)
                .map(|(w, &k)| if k { *w } else { None })
                .collect(),
        }
    }

    /// True if the two transforms agree on every state where `keep` is set.
    pub fn agrees_on(&self, other: &PartialTransform, keep: &[bool]) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .zip(keep)
            .all(|((a, b), &k)| !k || a == b)
    }
}

/// Checked composition `g ∘ f` (apply `f` first).
pub fn compose_transforms(g: &PartialTransform, f: &PartialTransform) -> Result<PartialTransform> {
    if g.len() != f.len() {
        return Err(Error::DimensionMismatch {
            left: g.len(),
            right: f.len(),
        });
    }
    Ok(g.after(f))
}

impl fmt::Display for PartialTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match w {
                Some(w) => write!(f, "{}", w.index())?,
                None => f.write_str("⊥")?,
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[Option<usize>]) -> PartialTransform {
        PartialTransform::from_images(v.iter().map(|w| w.map(StateId::new)).collect())
    }

    #[test]
    fn identity_is_neutral() {
        let f = t(&[Some(1), None, Some(0)]);
        let id = PartialTransform::identity(3);
        assert_eq!(compose_transforms(&id, &f).unwrap(), f);
        assert_eq!(compose_transforms(&f, &id).unwrap(), f);
    }

    #[test]
    fn composition_propagates_undefined() {
        let f = t(&[Some(1), Some(2), None]);
        let g = t(&[Some(0), None, Some(2)]);
        // g∘f: 0 -> 1 -> ⊥, 1 -> 2 -> 2, 2 -> ⊥
        assert_eq!(g.after(&f), t(&[None, Some(2), None]));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = compose_transforms(
            &PartialTransform::identity(2),
            &PartialTransform::identity(3),
        );
        assert!(matches!(
            err,
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn bijection_detection() {
        assert!(t(&[Some(1), Some(0)]).is_bijection());
        assert!(!t(&[Some(1), Some(1)]).is_bijection());
        assert!(!t(&[Some(1), None]).is_bijection());
    }
}
