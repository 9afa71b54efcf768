//! Computational toolkit for the monoids of orientation-preserving and
//! oriented alternating partial permutations of a finite chain.

pub mod acceptance;
pub mod classify;
pub mod cli;
pub mod congruence;
pub mod engine;
pub mod error;
pub mod gens;
pub mod green;
pub mod group;
pub mod pperm;

pub use classify::{MonoidKind, OrientFlags};
pub use engine::{ElementId, MonoidSet};
pub use error::{Error, Result};
pub use green::GreenStructure;
pub use group::GroupType;
pub use pperm::{ChainSize, Gap, PartialPerm, Permutation};
