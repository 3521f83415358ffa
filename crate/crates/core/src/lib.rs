//! Exact certification of valuation bounds, partition identities and
//! dimension counts around the global nilpotent cone of Hitchin systems.

pub mod error;
mod intseries;
pub mod cert;
pub mod cli;
pub mod linalg;
pub mod liealg;
pub mod partition;
pub mod report;
pub mod series;

pub use error::{Error, Result};
