//! Finite complete lattices, quantales and their morphisms.

pub mod catalog;
mod lattice;
mod morphism;
mod quantale;

pub use lattice::{
    check_complete_lattice, check_complete_lattice_exhaustive, FiniteLattice,
    EXHAUSTIVE_SUBSET_LIMIT,
};
pub use morphism::{check_quantale_morphism, enumerate_quantale_morphisms, QuantaleMorphism};
pub use quantale::{check_quantale, Quantale, QuantaleData};
