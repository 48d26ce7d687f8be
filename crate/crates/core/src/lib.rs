//! Enumeration and invariants of virtual strings represented as nanowords.

pub mod census;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod nanoword;
pub mod store;

pub use error::{Error, Result};
pub use nanoword::{count, CountKind, CrossingType, Nanoword, Transform};
