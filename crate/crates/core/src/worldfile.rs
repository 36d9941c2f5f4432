//! TOML world files.
//!
//! ```toml
//! name = "cyclical-2x2"
//! states = ["w0", "w1", "w2", "w3"]
//! actions = ["1", "U", "D", "L", "R"]
//! treatment = "identity"
//! initial = "w0"
//! transitions = [
//!     { from = "w0", action = "U", to = "w2" },
//! ]
//! ```
//!
//! Unknown fields are rejected. Pairs that are not listed are resolved by `treatment`;
//! identity self-loops may be listed but are never written.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::world::{Treatment, World};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldSpecFile {
    pub name: String,
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub treatment: Treatment,
    pub initial: String,
    #[serde(default)]
    pub transitions: Vec<TransitionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub from: String,
    pub action: String,
    pub to: String,
}

impl WorldSpecFile {
    pub fn from_world(world: &World) -> Self {
        WorldSpecFile {
            name: world.name().to_owned(),
            states: world.state_labels().to_vec(),
            actions: world.action_symbols().to_vec(),
            treatment: world.treatment(),
            initial: world.state_label(world.initial()).to_owned(),
            transitions: world
                .raw_transitions()
                .iter()
                .map(|t| TransitionEntry {
                    from: world.state_label(t.from).to_owned(),
                    action: world.action_symbol(t.action).to_owned(),
                    to: world.state_label(t.to).to_owned(),
                })
                .collect(),
        }
    }

    /// Validates and builds the world. Errors name the offending field.
    pub fn into_world(self, origin: &str) -> Result<World> {
        let schema = |field: String, message: String| Error::Schema {
            path: format!("{origin}: {field}"),
            message,
        };
        let states: HashSet<&str> = self.states.iter().map(String::as_str).collect();
        let actions: HashSet<&str> = self.actions.iter().map(String::as_str).collect();
        let mut seen = HashSet::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let field = format!("transitions[{i}]");
            if !states.contains(t.from.as_str()) {
                return Err(schema(field, format!("unknown state `{}`", t.from)));
            }
            if !states.contains(t.to.as_str()) {
                return Err(schema(field, format!("unknown state `{}`", t.to)));
            }
            if !actions.contains(t.action.as_str()) {
                return Err(schema(field, format!("unknown action `{}`", t.action)));
            }
            if !seen.insert((t.from.as_str(), t.action.as_str())) {
                return Err(schema(
                    field,
                    format!(
                        "determinism violation: ({}, {}) is listed more than once",
                        t.from, t.action
                    ),
                ));
            }
        }
        let triples: Vec<(&str, &str, &str)> = self
            .transitions
            .iter()
            .map(|t| (t.from.as_str(), t.action.as_str(), t.to.as_str()))
            .collect();
        let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
        let actions: Vec<&str> = self.actions.iter().map(String::as_str).collect();
        World::from_labels(
            self.name.clone(),
            &states,
            &actions,
            &triples,
            self.treatment,
            &self.initial,
        )
        .map_err(|e| Error::Schema {
            path: origin.to_owned(),
            message: e.to_string(),
        })
    }
}

pub fn world_from_str(text: &str, origin: &str) -> Result<World> {
    let spec: WorldSpecFile = toml::from_str(text).map_err(|e| Error::Schema {
        path: origin.to_owned(),
        message: e.to_string(),
    })?;
    spec.into_world(origin)
}

pub fn world_to_string(world: &World) -> String {
    toml::to_string(&WorldSpecFile::from_world(world)).expect("world files always serialize")
}

pub fn load_world(path: impl AsRef<Path>) -> Result<World> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    world_from_str(&text, &path.display().to_string())
}

pub fn save_world(world: &World, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, world_to_string(world)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
