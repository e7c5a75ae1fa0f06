//! Permutation groups: stabilizer chains, classes, and subgroup searches.

mod chain;
mod classes;
mod group;
mod hom;
mod io;
mod permutation;
mod search;
mod sylow;

pub use chain::StabChain;
pub use classes::{ClassData, ConjugacyClass};
pub use group::{closure_order, PermutationGroup};
pub use hom::{GroupHom, Quotient};
pub use io::{GeneratorSpec, GroupFile, MAX_FILE_DEGREE};
pub use permutation::Permutation;
pub use search::{SchreierOrbit, SubgroupKey, SubgroupOrbit};
