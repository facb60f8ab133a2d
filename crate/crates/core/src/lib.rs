//! Exact verification toolkit for reflection-equation algebras, their characters and orbit
//! quantizations.

pub mod cpoly;
pub mod error;
pub mod field;
pub mod freealg;
pub mod linalg;
pub mod poisson;
pub mod presentations;
pub mod qtensor;
pub mod report;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
