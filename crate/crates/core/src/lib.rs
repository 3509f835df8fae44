//! Exact computations with reductive group data: prime classification for
//! root data, relative Jordan decomposition over truncated discrete
//! valuation rings, and dynamic parabolics with Bala-Carter enumeration.

pub mod cli;
pub mod dvr;
pub mod dynamic;
pub mod error;
pub mod jordan;
pub mod lattice;
pub mod primes;
pub mod rootdata;
pub mod verify;

pub use error::{Error, Result};
