//! Exact-rational laboratory for lattices of convex sets.
//!
//! * [`geom`]: rational points, polytopes, LP, hulls, witnesses.
//! * [`term`]: lattice terms, a small DSL, identity builders and checkers.
//! * [`conv`]: lattice adapters over polytopes and relatively convex sets.
//! * [`star`]: the snowflake arithmetic and star-set lattices.
//! * [`finite`]: finite lattices, partitions, closure systems.
//! * [`gallery`]: named counterexamples and positive constructions.

pub mod geom;
pub mod term;
pub mod conv;
pub mod star;
pub mod finite;
pub mod gallery;
