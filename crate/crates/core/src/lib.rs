//! Exact computations with exceptional collections over path algebras of
//! acyclic quivers: representations, the bounded derived category, simple
//! tilts of hearts and their action on stability conditions.

pub mod derived;
pub mod error;
pub mod exactla;
pub mod heartex;
pub mod quiver;
pub mod rep;
pub mod stab;
pub mod tilt;

pub use derived::{DerivedCategory, DerivedObject, Direction};
pub use error::{Error, Result};
pub use heartex::{ExchangeGraph, HeartKey};
pub use quiver::Quiver;
pub use rep::{IndecId, IndecKey, IndecRegistry, Representation};
pub use stab::StabilityCondition;
pub use tilt::{SymbolicCollection, TiltStep};
