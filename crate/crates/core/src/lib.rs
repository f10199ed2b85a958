//! Relative root systems, Chevalley commutator calculus, Steinberg group
//! presentations and finite matrix-group experiments over explicit finite
//! commutative rings.

pub mod algebra;
pub mod campaign;
pub mod chevalley;
pub mod error;
pub mod grouplab;
pub mod relcalc;
pub mod relroots;
pub mod rootcore;
pub mod steinberg;

pub use error::{Error, Result};
