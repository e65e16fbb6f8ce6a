//! Exact rational solutions of the KZ system for the natural representation of the symmetric group.

pub mod acceptance;
pub mod arith;
pub mod assembly;
pub mod builder;
pub mod coords;
pub mod error;
pub mod hypergeom;
pub mod io;
pub mod report;
pub mod series;
pub mod symmetric;

pub use error::{KzError, Result};
