//! TOML files for action structures, state maps and decompositions.
//!
//! Undefined table entries are written as the string `"undefined"`, which therefore cannot
//! be used as a label.
//!
//! ```toml
//! # action structure: compose[r][c] = c ∘ r, act[a][x] = a * x
//! elements = ["1", "L"]
//! identity = "1"
//! carrier = ["c0", "c1"]
//! compose = [["1", "L"], ["L", "1"]]
//! act = [["c0", "c1"], ["c1", "c0"]]
//! ```
//!
//! ```toml
//! # state map
//! domain = ["w0", "w1"]
//! codomain = ["z0"]
//! images = ["z0", "z0"]
//! ```
//!
//! ```toml
//! # decomposition of a structure; one [[factors]] table per factor
//! points = [["w0", ["c0", "r0"]], ["w1", ["c1", "r0"]]]
//! elements = [["1", ["1", "1"]], ["L", ["L", "1"]]]
//!
//! [[factors]]
//! elements = ["1", "L"]
//! identity = "1"
//! carrier = ["c0", "c1"]
//! compose = [["1", "L"], ["L", "1"]]
//! ```

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::decomposition::{Decomposition, Factor};
use super::structure::{FiniteActionStructure, StateMapEta};

pub const UNDEFINED: &str = "undefined";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionStructureFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub carrier: Vec<String>,
    pub compose: Vec<Vec<String>>,
    pub act: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaFile {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub carrier: Vec<String>,
    pub compose: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub points: Vec<(String, Vec<String>)>,
    pub elements: Vec<(String, Vec<String>)>,
    pub factors: Vec<FactorFile>,
}

fn schema(origin: &str, field: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: if field.is_empty() {
            origin.to_owned()
        } else {
            format!("{origin}: {field}")
        },
        message: message.into(),
    }
}

fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| schema(origin, "", e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: String) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn index_of(labels: &[String], label: &str, origin: &str, field: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| schema(origin, field, format!("unknown label `{label}`")))
}

fn cell(labels: &[String], text: &str, origin: &str, field: &str) -> Result<Option<usize>> {
    if text == UNDEFINED {
        Ok(None)
    } else {
        index_of(labels, text, origin, field).map(Some)
    }
}

fn table(
    rows: &[Vec<String>],
    labels: &[String],
    origin: &str,
    field: &str,
) -> Result<Vec<Vec<Option<usize>>>> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, t)| cell(labels, t, origin, &format!("{field}[{r}][{c}]")))
                .collect()
        })
        .collect()
}

fn render(entries: &[Vec<Option<usize>>], labels: &[String]) -> Vec<Vec<String>> {
    entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.map_or_else(|| UNDEFINED.to_owned(), |i| labels[i].clone()))
                .collect()
        })
        .collect()
}

fn reserved(labels: &[String], origin: &str, field: &str) -> Result<()> {
    if labels.iter().any(|l| l == UNDEFINED) {
        return Err(schema(origin, field, format!("`{UNDEFINED}` is reserved")));
    }
    Ok(())
}

fn to_toml<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("file types always serialize")
}

impl ActionStructureFile {
    pub fn into_structure(self, origin: &str) -> Result<FiniteActionStructure> {
        reserved(&self.elements, origin, "elements")?;
        reserved(&self.carrier, origin, "carrier")?;
        let identity = index_of(&self.elements, &self.identity, origin, "identity")?;
        let compose = table(&self.compose, &self.elements, origin, "compose")?;
        let act = table(&self.act, &self.carrier, origin, "act")?;
        FiniteActionStructure::new(self.elements, compose, identity, self.carrier, act)
            .map_err(|e| schema(origin, "", e.to_string()))
    }

    pub fn from_structure(s: &FiniteActionStructure) -> Self {
        ActionStructureFile {
            elements: s.elements.clone(),
            identity: s.elements[s.identity].clone(),
            carrier: s.carrier.clone(),
            compose: render(&s.compose, &s.elements),
            act: render(&s.act, &s.carrier),
        }
    }
}

pub fn structure_from_str(text: &str, origin: &str) -> Result<FiniteActionStructure> {
    parse::<ActionStructureFile>(text, origin)?.into_structure(origin)
}

pub fn structure_to_string(s: &FiniteActionStructure) -> String {
    to_toml(&ActionStructureFile::from_structure(s))
}

pub fn load_structure(path: impl AsRef<Path>) -> Result<FiniteActionStructure> {
    let path = path.as_ref();
    structure_from_str(&read(path)?, &path.display().to_string())
}

pub fn save_structure(s: &FiniteActionStructure, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), structure_to_string(s))
}

impl EtaFile {
    pub fn into_eta(self, origin: &str) -> Result<StateMapEta> {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, z)| index_of(&self.codomain, z, origin, &format!("images[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        StateMapEta::new(self.domain, self.codomain, images)
            .map_err(|e| schema(origin, "", e.to_string()))
    }

    pub fn from_eta(eta: &StateMapEta) -> Self {
        EtaFile {
            domain: eta.domain.clone(),
            codomain: eta.codomain.clone(),
            images: eta
                .images
                .iter()
                .map(|&z| eta.codomain[z].clone())
                .collect(),
        }
    }
}

pub fn eta_from_str(text: &str, origin: &str) -> Result<StateMapEta> {
    parse::<EtaFile>(text, origin)?.into_eta(origin)
}

pub fn eta_to_string(eta: &StateMapEta) -> String {
    to_toml(&EtaFile::from_eta(eta))
}

pub fn load_eta(path: impl AsRef<Path>) -> Result<StateMapEta> {
    let path = path.as_ref();
    eta_from_str(&read(path)?, &path.display().to_string())
}

pub fn save_eta(eta: &StateMapEta, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), eta_to_string(eta))
}

impl DecompositionFile {
    /// Resolves labels against the structure being decomposed and validates the result.
    pub fn into_decomposition(
        self,
        act: &FiniteActionStructure,
        origin: &str,
    ) -> Result<Decomposition> {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let field = format!("factors[{j}]");
                reserved(&f.elements, origin, &field)?;
                Ok(Factor {
                    elements: f.elements.clone(),
                    compose: table(&f.compose, &f.elements, origin, &format!("{field}.compose"))?,
                    identity: index_of(&f.elements, &f.identity, origin, &field)?,
                    carrier: f.carrier.clone(),
                })
            })
            .collect::<Result<Vec<Factor>>>()?;
        let coords = |entries: &[(String, Vec<String>)],
                      owners: &[String],
                      pick: fn(&Factor) -> &Vec<String>,
                      field: &str|
         -> Result<Vec<Vec<usize>>> {
            let mut out = vec![None; owners.len()];
            for (i, (label, tuple)) in entries.iter().enumerate() {
                let at = format!("{field}[{i}]");
                let k = index_of(owners, label, origin, &at)?;
                if tuple.len() != factors.len() {
                    return Err(schema(origin, &at, "wrong number of coordinates"));
                }
                let c = tuple
                    .iter()
                    .zip(&factors)
                    .map(|(t, f)| index_of(pick(f), t, origin, &at))
                    .collect::<Result<Vec<_>>>()?;
                if out[k].replace(c).is_some() {
                    return Err(schema(origin, &at, format!("`{label}` listed twice")));
                }
            }
            out.into_iter()
                .enumerate()
                .map(|(k, c)| {
                    c.ok_or_else(|| {
                        schema(origin, field, format!("`{}` has no coordinates", owners[k]))
                    })
                })
                .collect()
        };
        let point_coords = coords(&self.points, &act.carrier, |f| &f.carrier, "points")?;
        let element_coords = coords(&self.elements, &act.elements, |f| &f.elements, "elements")?;
        let dec = Decomposition {
            factors,
            point_coords,
            element_coords,
        };
        dec.validate(act)
            .map_err(|e| schema(origin, "", e.to_string()))?;
        Ok(dec)
    }

    pub fn from_decomposition(dec: &Decomposition, act: &FiniteActionStructure) -> Self {
        let tuple = |c: &Vec<usize>, pick: fn(&Factor) -> &Vec<String>| -> Vec<String> {
            c.iter()
                .zip(&dec.factors)
                .map(|(&v, f)| pick(f)[v].clone())
                .collect()
        };
        DecompositionFile {
            points: dec
                .point_coords
                .iter()
                .enumerate()
                .map(|(x, c)| (act.carrier[x].clone(), tuple(c, |f| &f.carrier)))
                .collect(),
            elements: dec
                .element_coords
                .iter()
                .enumerate()
                .map(|(a, c)| (act.elements[a].clone(), tuple(c, |f| &f.elements)))
                .collect(),
            factors: dec
                .factors
                .iter()
                .map(|f| FactorFile {
                    elements: f.elements.clone(),
                    identity: f.elements[f.identity].clone(),
                    carrier: f.carrier.clone(),
                    compose: render(&f.compose, &f.elements),
                })
                .collect(),
        }
    }
}

pub fn decomposition_from_str(
    text: &str,
    act: &FiniteActionStructure,
    origin: &str,
) -> Result<Decomposition> {
    parse::<DecompositionFile>(text, origin)?.into_decomposition(act, origin)
}

pub fn decomposition_to_string(dec: &Decomposition, act: &FiniteActionStructure) -> String {
    to_toml(&DecompositionFile::from_decomposition(dec, act))
}

pub fn load_decomposition(
    path: impl AsRef<Path>,
    act: &FiniteActionStructure,
) -> Result<Decomposition> {
    let path = path.as_ref();
    decomposition_from_str(&read(path)?, act, &path.display().to_string())
}

pub fn save_decomposition(
    dec: &Decomposition,
    act: &FiniteActionStructure,
    path: impl AsRef<Path>,
) -> Result<()> {
    write(path.as_ref(), decomposition_to_string(dec, act))
}
