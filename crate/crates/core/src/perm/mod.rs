//! Permutation groups: BSGS, named constructions, subgroup lattices and
//! brute-force Hall properties.

mod brute;
mod bsgs;
mod elements;
mod lattice;
mod named;
mod permutation;

pub use brute::{is_pi_number, Brute, BruteOutcome, BruteProperty, Witness};
pub use bsgs::PermGroup;
pub use elements::ElementTable;
pub use lattice::{canonical_gens, enumerate_subgroups, generate, Lattice, SubgroupClass, DEFAULT_MAX_ORDER};
pub use named::{construct_named, direct_product, SmallField, PSL2_MAX_Q};
pub use permutation::Perm;
