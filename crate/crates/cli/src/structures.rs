//! Commands on action-structure, map and decomposition files.

use std::path::Path;

use action_algebra::equivariance::files::{
    load_decomposition, load_eta, load_structure, structure_to_string,
};
use action_algebra::equivariance::{
    check_disentangled, check_disentangled_equivariance, check_equivariance, quotient_action,
    DisentangleViolation, FactorFailure, FiniteActionStructure, Mode, StateMapEta,
};
use action_algebra::Result;

use crate::commands::emit;
use crate::Outcome;

fn mode(strict: bool) -> Mode {
    if strict {
        Mode::Strict
    } else {
        Mode::Lenient
    }
}

fn point(carrier: &[String], x: Option<usize>) -> String {
    x.map_or_else(|| "undefined".to_owned(), |x| carrier[x].clone())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn equivariance(domain: &Path, codomain: &Path, eta: &Path, strict: bool) -> Result<Outcome> {
    let w = load_structure(domain)?;
    let z = load_structure(codomain)?;
    let eta = load_eta(eta)?;
    let report = check_equivariance(&w, &z, &eta, mode(strict))?;
    let mut text = String::new();
    match report.counterexample {
        None => text.push_str("PASS\n"),
        Some((a, x)) => {
            let moved = w.act[a][x].map(|y| eta.apply(y));
            let there = z.act[a][eta.apply(x)];
            text.push_str(&format!(
                "FAIL at element {e}, point {p}: η({e} * {p}) = {l}, {e} * η({p}) = {r}\n",
                e = w.elements[a],
                p = w.carrier[x],
                l = point(&z.carrier, moved),
                r = point(&z.carrier, there),
            ));
        }
    }
    for (block, pass) in &report.objects {
        let names: Vec<&str> = block.iter().map(|&x| w.carrier[x].as_str()).collect();
        text.push_str(&format!(
            "object {{{}}}: {}\n",
            names.join(", "),
            verdict(*pass)
        ));
    }
    emit(&text, None)?;
    Ok(if report.holds {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

pub fn quotient(domain: &Path, eta: &Path, out: Option<&Path>) -> Result<Outcome> {
    let w = load_structure(domain)?;
    let eta = load_eta(eta)?;
    match quotient_action(&w, &eta)? {
        Ok(tau) => {
            emit(&structure_to_string(&tau), out)?;
            Ok(Outcome::Pass)
        }
        Err(cx) => {
            let e = &w.elements[cx.element];
            let (p, q) = (&w.carrier[cx.point], &w.carrier[cx.other]);
            emit(
                &format!(
                    "not a congruence: η({p}) = η({q}) but {e} * {p} and {e} * {q} map apart\n"
                ),
                None,
            )?;
            Ok(Outcome::Fail)
        }
    }
}

fn describe(v: &DisentangleViolation, s: &FiniteActionStructure) -> String {
    match *v {
        DisentangleViolation::NotComponentwise {
            factor,
            element,
            point,
            earlier_element,
            earlier_point,
        } => format!(
            "factor {factor}: {} * {} and {} * {} agree in that coordinate but their results do not",
            s.elements[element], s.carrier[point], s.elements[earlier_element], s.carrier[earlier_point]
        ),
        DisentangleViolation::NotInvariant {
            factor,
            element,
            point,
        } => format!(
            "factor {factor}: {} is the identity there but moves {} in that coordinate",
            s.elements[element], s.carrier[point]
        ),
        DisentangleViolation::DefinednessNotFactorized { element, point } => format!(
            "{} * {} is undefined although each coordinate pair is defined elsewhere",
            s.elements[element], s.carrier[point]
        ),
    }
}

pub fn disentangle(
    structure: &Path,
    decomposition: &Path,
    codomain: Option<(&Path, &Path)>,
    components: &[std::path::PathBuf],
    eta: Option<&Path>,
    strict: bool,
) -> Result<Outcome> {
    let rho = load_structure(structure)?;
    let rho_dec = load_decomposition(decomposition, &rho)?;
    let report = check_disentangled(&rho, &rho_dec)?;
    let mut text = match &report.violation {
        None => "decomposition: PASS\n".to_owned(),
        Some(v) => format!("decomposition: FAIL: {}\n", describe(v, &rho)),
    };
    let mut ok = report.holds;
    if let Some((tau_path, tau_dec_path)) = codomain {
        let tau = load_structure(tau_path)?;
        let tau_dec = load_decomposition(tau_dec_path, &tau)?;
        let maps: Vec<StateMapEta> = components.iter().map(load_eta).collect::<Result<_>>()?;
        let composite = eta.map(load_eta).transpose()?;
        let r = check_disentangled_equivariance(
            (&rho, &rho_dec),
            (&tau, &tau_dec),
            &maps,
            composite.as_ref(),
            mode(strict),
        )?;
        ok &= r.holds;
        let line = match &r.failure {
            None => "PASS".to_owned(),
            Some(FactorFailure::DomainNotDisentangled(v)) => {
                format!("FAIL: domain: {}", describe(v, &rho))
            }
            Some(FactorFailure::CodomainNotDisentangled(v)) => {
                format!("FAIL: codomain: {}", describe(v, &tau))
            }
            Some(FactorFailure::Component {
                factor,
                element,
                point,
            }) => {
                let f = &rho_dec.factors[*factor];
                format!(
                    "FAIL: component {factor} at element {}, point {}",
                    f.elements[*element], f.carrier[*point]
                )
            }
            Some(FactorFailure::CompositeDiffers { point }) => format!(
                "FAIL: the composite map differs from the components at {}",
                rho.carrier[*point]
            ),
        };
        text.push_str(&format!("componentwise equivariance: {line}\n"));
        let images: Vec<String> = r
            .composite
            .images
            .iter()
            .zip(&r.composite.domain)
            .map(|(&z, w)| format!("{w} -> {}", r.composite.codomain[z]))
            .collect();
        text.push_str(&format!("composite: {}\n", images.join(", ")));
    }
    emit(&text, None)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}
