use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

use super::structure::{FiniteActionStructure, StateMapEta};
use super::{check_equivariance, Mode};

/// One factor of a product algebra together with the carrier it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub elements: Vec<String>,
    /// `[r][c]` is `c ∘ r`.
    pub compose: Vec<Vec<Option<usize>>>,
    pub identity: usize,
    pub carrier: Vec<String>,
}

/// Coordinates for an action structure: each carrier point and each element becomes a
/// tuple with one entry per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub point_coords: Vec<Vec<usize>>,
    pub element_coords: Vec<Vec<usize>>,
}

impl Decomposition {
    /// The single-factor decomposition of a structure onto itself.
    pub fn trivial(act: &FiniteActionStructure) -> Self {
        Decomposition {
            factors: vec![Factor {
                elements: act.elements.clone(),
                compose: act.compose.clone(),
                identity: act.identity,
                carrier: act.carrier.clone(),
            }],
            point_coords: (0..act.carrier.len()).map(|x| vec![x]).collect(),
            element_coords: (0..act.elements.len()).map(|a| vec![a]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Checks the coordinates against `act`: point coordinates must be a bijection onto the
    /// product of the factor carriers, and element coordinates must respect composition
    /// factor by factor wherever `act` composes.
    pub fn validate(&self, act: &FiniteActionStructure) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedDecomposition(msg));
        let n = self.factors.len();
        if n == 0 {
            return bad("no factors".into());
        }
        for (j, f) in self.factors.iter().enumerate() {
            let k = f.elements.len();
            if k == 0 || f.identity >= k {
                return bad(format!("factor {j} has no valid identity"));
            }
            if f.compose.len() != k || f.compose.iter().any(|r| r.len() != k) {
                return bad(format!("factor {j} composition table is not {k}x{k}"));
            }
            if f.compose.iter().flatten().flatten().any(|&e| e >= k) {
                return bad(format!("factor {j} composition entry out of range"));
            }
        }
        if self.point_coords.len() != act.carrier.len() {
            return bad("every carrier point needs coordinates".into());
        }
        if self.element_coords.len() != act.elements.len() {
            return bad("every element needs coordinates".into());
        }
        for (x, c) in self.point_coords.iter().enumerate() {
            if c.len() != n
                || c.iter()
                    .zip(&self.factors)
                    .any(|(&v, f)| v >= f.carrier.len())
            {
                return bad(format!("bad coordinates for point {}", act.carrier[x]));
            }
        }
        for (a, c) in self.element_coords.iter().enumerate() {
            if c.len() != n
                || c.iter()
                    .zip(&self.factors)
                    .any(|(&v, f)| v >= f.elements.len())
            {
                return bad(format!("bad coordinates for element {}", act.elements[a]));
            }
        }
        let distinct: HashSet<&Vec<usize>> = self.point_coords.iter().collect();
        let product: usize = self.factors.iter().map(|f| f.carrier.len()).product();
        if distinct.len() != self.point_coords.len() || product != self.point_coords.len() {
            return bad("point coordinates are not a bijection onto the product".into());
        }
        if self.element_coords[act.identity]
            .iter()
            .zip(&self.factors)
            .any(|(&v, f)| v != f.identity)
        {
            return bad("identity does not map to the tuple of factor identities".into());
        }
        for a in 0..act.elements.len() {
            for b in 0..act.elements.len() {
                let Some(ba) = act.compose[a][b] else {
                    continue;
                };
                for (j, f) in self.factors.iter().enumerate() {
                    let want = f.compose[self.element_coords[a][j]][self.element_coords[b][j]];
                    if want != Some(self.element_coords[ba][j]) {
                        return bad(format!(
                            "coordinates of {} ∘ {} disagree with factor {j}",
                            act.elements[b], act.elements[a]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn point_of(&self, coords: &[usize]) -> Option<usize> {
        self.point_coords.iter().position(|c| c == coords)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisentangleViolation {
    /// Two (element, point) pairs agree in coordinate `factor` of both element and point
    /// but their results differ in that coordinate.
    NotComponentwise {
        factor: usize,
        element: usize,
        point: usize,
        earlier_element: usize,
        earlier_point: usize,
    },
    /// The element is the identity in coordinate `factor` but moves that coordinate.
    NotInvariant {
        factor: usize,
        element: usize,
        point: usize,
    },
    /// `element * point` is undefined although every coordinate pair is defined elsewhere.
    DefinednessNotFactorized { element: usize, point: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisentangleReport {
    pub holds: bool,
    pub violation: Option<DisentangleViolation>,
}

/// Checks that the action works coordinate by coordinate: coordinate `j` of `a * x` depends
/// only on coordinate `j` of `a` and of `x`, and is left alone when `a` is the identity
/// there. Where the action is partial, definedness must also split over the factors.
pub fn check_disentangled(
    act: &FiniteActionStructure,
    dec: &Decomposition,
) -> Result<DisentangleReport> {
    dec.validate(act)?;
    let violation = componentwise_violation(act, dec)
        .or_else(|| invariance_violation(act, dec))
        .or_else(|| definedness_violation(act, dec));
    Ok(DisentangleReport {
        holds: violation.is_none(),
        violation,
    })
}

fn pairs(act: &FiniteActionStructure) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..act.elements.len()).flat_map(move |a| (0..act.carrier.len()).map(move |x| (a, x)))
}

fn componentwise_violation(
    act: &FiniteActionStructure,
    dec: &Decomposition,
) -> Option<DisentangleViolation> {
    // per factor: (element coordinate, point coordinate) -> (result, element, point)
    type Seen = HashMap<(usize, usize), (usize, usize, usize)>;
    let mut seen: Vec<Seen> = vec![HashMap::new(); dec.len()];
    for (a, x) in pairs(act) {
        let Some(y) = act.act[a][x] else { continue };
        for (j, seen) in seen.iter_mut().enumerate() {
            let key = (dec.element_coords[a][j], dec.point_coords[x][j]);
            let out = dec.point_coords[y][j];
            match seen.get(&key) {
                Some(&(prev, ea, ex)) if prev != out => {
                    return Some(DisentangleViolation::NotComponentwise {
                        factor: j,
                        element: a,
                        point: x,
                        earlier_element: ea,
                        earlier_point: ex,
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (out, a, x));
                }
            }
        }
    }
    None
}

fn invariance_violation(
    act: &FiniteActionStructure,
    dec: &Decomposition,
) -> Option<DisentangleViolation> {
    for (a, x) in pairs(act) {
        let Some(y) = act.act[a][x] else { continue };
        for (j, f) in dec.factors.iter().enumerate() {
            if dec.element_coords[a][j] == f.identity
                && dec.point_coords[y][j] != dec.point_coords[x][j]
            {
                return Some(DisentangleViolation::NotInvariant {
                    factor: j,
                    element: a,
                    point: x,
                });
            }
        }
    }
    None
}

fn definedness_violation(
    act: &FiniteActionStructure,
    dec: &Decomposition,
) -> Option<DisentangleViolation> {
    let mut defined: Vec<HashSet<(usize, usize)>> = vec![HashSet::new(); dec.len()];
    for (a, x) in pairs(act) {
        if act.act[a][x].is_some() {
            for (j, d) in defined.iter_mut().enumerate() {
                d.insert((dec.element_coords[a][j], dec.point_coords[x][j]));
            }
        }
    }
    pairs(act)
        .find(|&(a, x)| {
            act.act[a][x].is_none()
                && defined
                    .iter()
                    .enumerate()
                    .all(|(j, d)| d.contains(&(dec.element_coords[a][j], dec.point_coords[x][j])))
        })
        .map(|(element, point)| DisentangleViolation::DefinednessNotFactorized { element, point })
}

/// The action of factor `j` on its own carrier, read off a disentangled structure.
///
/// Pairs never observed are undefined, except that the factor identity fixes every point.
pub fn factor_action(
    act: &FiniteActionStructure,
    dec: &Decomposition,
    j: usize,
) -> Result<FiniteActionStructure> {
    let report = check_disentangled(act, dec)?;
    if !report.holds {
        return Err(Error::MalformedDecomposition(format!(
            "structure is not disentangled: {:?}",
            report.violation.unwrap()
        )));
    }
    let f = dec
        .factors
        .get(j)
        .ok_or_else(|| Error::MalformedDecomposition(format!("no factor {j}")))?;
    let mut table = vec![vec![None; f.carrier.len()]; f.elements.len()];
    for (a, x) in pairs(act) {
        if let Some(y) = act.act[a][x] {
            table[dec.element_coords[a][j]][dec.point_coords[x][j]] = Some(dec.point_coords[y][j]);
        }
    }
    for (x, slot) in table[f.identity].iter_mut().enumerate() {
        *slot = Some(x);
    }
    FiniteActionStructure::candidate(
        f.elements.clone(),
        f.compose.clone(),
        f.identity,
        f.carrier.clone(),
        table,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorFailure {
    DomainNotDisentangled(DisentangleViolation),
    CodomainNotDisentangled(DisentangleViolation),
    /// Component `factor` fails its own equivariance at (factor element, factor point).
    Component {
        factor: usize,
        element: usize,
        point: usize,
    },
    /// The given composite differs from the tuple of components at this domain point.
    CompositeDiffers {
        point: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisentangledEquivarianceReport {
    pub holds: bool,
    pub failure: Option<FactorFailure>,
    /// `w ↦ (η_1(w_1), …, η_n(w_n))` as a map between the full carriers.
    pub composite: StateMapEta,
}

/// Checks that each component map is equivariant between the matching factor actions and
/// that the components assemble into the composite map, when one is given.
pub fn check_disentangled_equivariance(
    rho: (&FiniteActionStructure, &Decomposition),
    tau: (&FiniteActionStructure, &Decomposition),
    components: &[StateMapEta],
    composite: Option<&StateMapEta>,
    mode: Mode,
) -> Result<DisentangledEquivarianceReport> {
    let (rho_act, rho_dec) = rho;
    let (tau_act, tau_dec) = tau;
    rho_dec.validate(rho_act)?;
    tau_dec.validate(tau_act)?;
    let n = rho_dec.len();
    if tau_dec.len() != n || components.len() != n {
        return Err(Error::MalformedDecomposition(format!(
            "factor counts differ: {} , {} and {} components",
            n,
            tau_dec.len(),
            components.len()
        )));
    }
    for (j, (f, g)) in rho_dec.factors.iter().zip(&tau_dec.factors).enumerate() {
        if f.elements != g.elements || f.compose != g.compose || f.identity != g.identity {
            return Err(Error::MismatchedAlgebras(format!(
                "factor {j} algebras differ"
            )));
        }
        if components[j].domain != f.carrier || components[j].codomain != g.carrier {
            return Err(Error::MalformedDecomposition(format!(
                "component {j} does not map factor carrier to factor carrier"
            )));
        }
    }

    let built = StateMapEta {
        domain: rho_act.carrier.clone(),
        codomain: tau_act.carrier.clone(),
        images: rho_dec
            .point_coords
            .iter()
            .map(|c| {
                let target: Vec<usize> = c
                    .iter()
                    .zip(components)
                    .map(|(&v, eta)| eta.apply(v))
                    .collect();
                tau_dec
                    .point_of(&target)
                    .expect("point coordinates cover the product")
            })
            .collect(),
    };
    let done = |failure: Option<FactorFailure>| DisentangledEquivarianceReport {
        holds: failure.is_none(),
        failure,
        composite: built.clone(),
    };

    if let Some(v) = check_disentangled(rho_act, rho_dec)?.violation {
        return Ok(done(Some(FactorFailure::DomainNotDisentangled(v))));
    }
    if let Some(v) = check_disentangled(tau_act, tau_dec)?.violation {
        return Ok(done(Some(FactorFailure::CodomainNotDisentangled(v))));
    }
    for (j, eta) in components.iter().enumerate() {
        let r = factor_action(rho_act, rho_dec, j)?;
        let t = factor_action(tau_act, tau_dec, j)?;
        if let Some((element, point)) = check_equivariance(&r, &t, eta, mode)?.counterexample {
            return Ok(done(Some(FactorFailure::Component {
                factor: j,
                element,
                point,
            })));
        }
    }
    if let Some(given) = composite {
        if given.domain != built.domain || given.codomain != built.codomain {
            return Err(Error::MalformedStructure(
                "composite map has the wrong carriers".into(),
            ));
        }
        if let Some(point) = (0..built.images.len()).find(|&w| given.images[w] != built.images[w]) {
            return Ok(done(Some(FactorFailure::CompositeDiffers { point })));
        }
    }
    Ok(done(None))
}
