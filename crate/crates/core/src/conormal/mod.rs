//! Singular loci, projectivized conormal varieties, polar degrees, dual
//! varieties and Segre classes.

mod data;
mod segre;
mod variety;

pub use data::{conormal_ideal, conormal_ring, dual_variety, ConormalData, DUAL, PRIMAL};
pub use segre::segre_class;
pub use variety::ProjectiveVariety;
