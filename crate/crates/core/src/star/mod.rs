//! Snowflake arithmetic and star sets: unions of segments through the origin
//! that are relatively convex in the union of their full rays.

mod config;
pub mod ext;
mod experiments;
mod snowflake;

pub use config::{circuits, Circuit, CircuitReport, StarConfig, StarError, MAX_RAYS};
pub use experiments::{
    ascending_chain_experiment, chain_config, hexagon_vector, largest_antichain, longest_chain,
    octagon_exploration, segment, snowflake_mismatches, ChainReport, OctagonReport, StarLattice,
};
pub use ext::{ExtRational, Finite, Inf};
pub use snowflake::{
    close_under_ops, snow_descending_chain, snow_enumerate, snow_generate, snow_join, snow_meet, SnowGeneration,
    Snowflake,
};
