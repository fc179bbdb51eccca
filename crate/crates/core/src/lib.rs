//! Finite quantales and the enriched structures built on them.

pub mod cli;
pub mod dsl;
pub mod enumerate;
pub mod lv;
mod error;
pub mod order;
pub mod pvalg;
pub mod monoids;
pub mod report;
pub mod suplat;
pub mod vcat;
pub mod vmat;
pub mod vmod;

pub use error::{Error, Result};
pub use order::{Quantale, QuantaleMorphism};
pub use report::{LawReport, Violation};
pub use vmat::VMatrix;
