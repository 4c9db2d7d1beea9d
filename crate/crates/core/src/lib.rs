//! Exact linear algebra, cohomology and formal deformations for coalgebras
//! equipped with a coderivation.

pub mod catalog;
pub mod coalg;
pub mod cochain;
pub mod cohomology;
pub mod comodule;
pub mod config;
pub mod deform;
pub mod duality;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod par;
pub mod random;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
