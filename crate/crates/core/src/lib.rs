//! Exact computations around p-weights of finite permutation groups:
//! radical subgroups, ordinary character tables, p-blocks, and the Galois and
//! automorphism actions needed to compare weights with Brauer characters.

#![allow(clippy::needless_range_loop)]

pub mod actions;
pub mod bridge;
pub mod chartab;
pub mod cyclo;
pub mod equivcheck;
pub mod error;
pub mod numtheory;
pub mod perm;
pub mod weights;

pub use error::{Error, Result};

/// Resource bounds shared by the enumerative algorithms.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest group order for which an element-to-class index is built.
    pub max_order: u64,
    /// Up to this order classes are found by walking every element; above it
    /// by random sampling with a size-sum certificate.
    pub deterministic_class_threshold: u64,
    /// Largest class count for which character tables are computed in-process.
    pub max_classes: usize,
    /// Largest number of subgroups of a Sylow subgroup enumerated for radicals.
    pub max_subgroups: usize,
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 10_000_000, deterministic_class_threshold: 1_000_000, max_classes: 40, max_subgroups: 100_000, threads: 1 }
    }
}
