//! Equivariance of maps between finite actions of one algebra, and disentangling with
//! respect to a direct-product decomposition.

mod decomposition;
pub mod files;
mod structure;

pub use decomposition::{
    check_disentangled, check_disentangled_equivariance, factor_action, Decomposition,
    DisentangleReport, DisentangleViolation, DisentangledEquivarianceReport, Factor, FactorFailure,
};
pub use structure::{FiniteActionStructure, StateMapEta};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Where `a * w` is defined, `a * η(w)` must be defined and equal `η(a * w)`.
    #[default]
    Lenient,
    /// As lenient, and where `a * w` is undefined so must `a * η(w)` be.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub holds: bool,
    /// First failing (element, point) in element-then-point order.
    pub counterexample: Option<(usize, usize)>,
    /// Domain points grouped by object, with whether each block passed.
    pub objects: Vec<(Vec<usize>, bool)>,
}

/// Checks `η(a * w) = a * η(w)` for every element and domain point.
pub fn check_equivariance(
    act_w: &FiniteActionStructure,
    act_z: &FiniteActionStructure,
    eta: &StateMapEta,
    mode: Mode,
) -> Result<EquivarianceReport> {
    same_algebra(act_w, act_z)?;
    if eta.domain != act_w.carrier || eta.codomain != act_z.carrier {
        return Err(Error::MalformedStructure(
            "map does not go from the first carrier to the second".into(),
        ));
    }
    let ok = |a: usize, w: usize| -> bool {
        let there = act_z.act[a][eta.apply(w)];
        match act_w.act[a][w] {
            Some(aw) => there == Some(eta.apply(aw)),
            None => mode == Mode::Lenient || there.is_none(),
        }
    };
    let counterexample = (0..act_w.elements.len())
        .flat_map(|a| (0..act_w.carrier.len()).map(move |w| (a, w)))
        .find(|&(a, w)| !ok(a, w));
    let objects = act_w
        .object_partition()
        .into_iter()
        .map(|block| {
            let pass = block
                .iter()
                .all(|&w| (0..act_w.elements.len()).all(|a| ok(a, w)));
            (block, pass)
        })
        .collect();
    Ok(EquivarianceReport {
        holds: counterexample.is_none(),
        counterexample,
        objects,
    })
}

fn same_algebra(a: &FiniteActionStructure, b: &FiniteActionStructure) -> Result<()> {
    if a.elements != b.elements {
        return Err(Error::MismatchedAlgebras("element lists differ".into()));
    }
    if a.compose != b.compose {
        return Err(Error::MismatchedAlgebras(
            "composition tables differ".into(),
        ));
    }
    if a.identity != b.identity {
        return Err(Error::MismatchedAlgebras("identities differ".into()));
    }
    Ok(())
}

/// `η(w) = η(w')` but `η(a * w) ≠ η(a * w')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientCounterexample {
    pub element: usize,
    pub point: usize,
    pub other: usize,
}

/// The action on `η`'s codomain that makes `η` equivariant, if `η` is a congruence.
///
/// Points outside the image of `η` are fixed by the identity and undefined for every other
/// element. An element is defined at an image point when it is defined at some preimage.
pub fn quotient_action(
    act_w: &FiniteActionStructure,
    eta: &StateMapEta,
) -> Result<std::result::Result<FiniteActionStructure, QuotientCounterexample>> {
    if eta.domain != act_w.carrier {
        return Err(Error::MalformedStructure(
            "map domain is not the action's carrier".into(),
        ));
    }
    let m = eta.codomain.len();
    let mut act = vec![vec![None; m]; act_w.elements.len()];
    for (a, row) in act.iter_mut().enumerate() {
        // the domain point that fixed each entry, for reporting
        let mut source = vec![usize::MAX; m];
        for w in 0..act_w.carrier.len() {
            let Some(aw) = act_w.act[a][w] else { continue };
            let z = eta.apply(w);
            let image = eta.apply(aw);
            match row[z] {
                None => {
                    row[z] = Some(image);
                    source[z] = w;
                }
                Some(prev) if prev != image => {
                    return Ok(Err(QuotientCounterexample {
                        element: a,
                        point: source[z],
                        other: w,
                    }));
                }
                Some(_) => {}
            }
        }
    }
    for (z, slot) in act[act_w.identity].iter_mut().enumerate() {
        *slot = Some(z);
    }
    Ok(Ok(FiniteActionStructure {
        elements: act_w.elements.clone(),
        compose: act_w.compose.clone(),
        identity: act_w.identity,
        carrier: eta.codomain.clone(),
        act,
    }))
}

#[cfg(test)]
mod tests;
