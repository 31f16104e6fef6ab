//! Modular data of small unitary modular tensor categories.
//!
//! The crate computes `(fusion ring, S, T)` data for SU(2)_k and a few
//! level-1 families, condenses Z2 bosonic simple currents (including the
//! resolution of fixed points), and assembles the quantum doubles of the
//! A-D-E subfactors with index below 4 as such condensations.

pub mod catalog;
pub mod doubles;
pub mod error;
pub mod fusion;
pub mod modular;
pub mod phase;
pub mod resolve;
pub mod simple_current;

pub use catalog::{CatalogId, CatalogRegistry, FibonacciVariant};
pub use error::{Error, Result};
pub use fusion::{FusionRing, Label, ObjectVector};
pub use modular::{ModularData, Tolerances, VerificationReport};
pub use phase::RationalPhase;
