//! Domain-level enumeration of DNA strand-displacement reaction networks.
//!
//! Starting from a set of complexes, [`enumerate::enumerate`] explores the
//! reactions they can undergo, separating fast unimolecular moves from slow
//! bimolecular association, and [`condense::condense`] reduces the detailed
//! network to one over resting sets.

pub mod condense;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod kernel;
pub mod kinetics;
pub mod model;
pub mod moves;
pub mod network;
pub mod run;
mod scc;

pub use condense::{condense, CondensedNetwork};
pub use enumerate::{enumerate, EnumConfig};
pub use error::{CondenseError, EnumerateError, InputError, KineticsError, ModelError};
pub use kinetics::KineticsConfig;
pub use model::{Complex, Domain, Loc, Strand, Structure};
pub use moves::{MoveConfig, MoveType, Reaction};
pub use network::{NetReaction, ReactionNetwork};
