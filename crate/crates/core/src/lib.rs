//! The algebra of an agent's actions in a finite world.
//!
//! A [`World`] is a deterministic labelled transition system whose alphabet contains the
//! identity action `1`. Words over the alphabet act on states as partial transforms, and
//! two words are equivalent when they act the same way on every state reachable from the
//! initial state. The [`cayley`] engine enumerates the classes and their Cayley tables,
//! [`oracle`] recomputes them by brute force, [`analysis`] classifies the result and
//! [`equivariance`] checks representation maps against it.
//!
//! Words are written leftmost-last-applied: `RU` applies `U` first.

pub mod analysis;
pub mod cayley;
pub mod dot;
pub mod equivariance;
pub mod error;
pub mod gallery;
pub mod oracle;
pub mod render;
pub mod testkit;
pub mod transform;
pub mod world;
pub mod worldfile;

pub use error::{Error, Result};
pub use transform::{compose_transforms, PartialTransform};
pub use world::{ActionId, ActionWord, StateId, Transition, Treatment, World, IDENTITY_SYMBOL};
