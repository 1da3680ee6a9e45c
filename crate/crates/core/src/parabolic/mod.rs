//! Adjacency and associate classes of isometries `J → S`, `R`-reflectivity,
//! and a root-system conjugacy oracle.

mod adjacency;
mod config;
mod roots;
mod scan;

pub use adjacency::{
    adjacent_image, adjacent_isometries, associate_class_of, associate_classes, is_r_reflective,
    opposition_on, reflection_action, AssociateClass,
};
pub use config::ParabolicConfig;
pub use roots::{oracle_classes, oracle_conjugate, RootSystem, DEFAULT_ORACLE_LIMIT};
pub use scan::{all_larger_extensions_reflective, larger_extension_scan, ScanReport, ScanWitness};
