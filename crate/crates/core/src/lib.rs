//! Exact local-monodromy arithmetic for hypergeometric sheaves, simple-spectrum
//! oracles for finite classical groups, and arithmetic decision gates.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod repkit;
pub mod chargeom;
pub mod splus;
pub mod weilgl;
pub mod stonevn;
pub mod gates;
pub mod constructions;
pub mod cli;
