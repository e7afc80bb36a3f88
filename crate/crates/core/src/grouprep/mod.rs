//! Finite matrix groups given by integer generators.

pub mod catalog;
mod rep;

pub use catalog::{catalog_entry, catalog_rep, random_monomial_rep, standard_catalog, CatalogEntry};
pub use rep::{
    character_of_rep, close_group, conjugacy_classes, validate_rep, ClassFunction, ConjClass, ConjClasses, Rep,
    RepReport,
};
