//! Finite Chu constructions over profunctors, Tambara modules and coend
//! optics, with exhaustive law checking on small instances.

pub mod chu;
pub mod cli;
pub mod error;
pub mod events;
pub mod finbase;
pub mod prof;
pub mod setval;
pub mod tambara;

pub use error::{Error, Result};
