//! Finite lattices: partition lattices, difference subspaces, closure systems
//! and exhaustive searches.

mod closure;
mod lattice;
mod partition;
mod search;
mod subspace;

pub use closure::{lemma24_campaign, ClosureSystem, Lemma24Campaign, Lemma24Report, MAX_CLOSURE_GROUND};
pub use lattice::{FiniteError, FiniteLattice};
pub use partition::{all_partitions, partition_lattice, Partition, MAX_PARTITION_BASE};
pub use search::{
    dn_failure, find_mk, identity_failure, is_njsd, is_nmsd, njsd_failure, nmsd_failure, MkEmbedding,
    MAX_ASSIGNMENTS, MAX_SEARCH,
};
pub use subspace::{
    difference, difference_set, phi, psi, rel_subspace_lattice, verify_isomorphism, DiffSubspace,
    IsomorphismReport, MAX_SUBSPACE_BASE,
};
