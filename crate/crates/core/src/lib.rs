//! Integral points on two genus-one families via elliptic logarithms and
//! lattice reduction.

pub mod bounds;
pub mod config;
pub mod curve;
pub mod elog;
pub mod error;
pub mod lattice;
pub mod models;
pub mod numerics;
pub mod pipeline;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use numerics::{PrecisionContext, Real};
