//! Lattice adapters over convex sets.

mod jsd;
mod polytope;
mod relativize;
mod relconv;

pub use jsd::jsd_premise_sampler;
pub use polytope::{polytope_witness, PointedPolytopeLattice, PolytopeLattice};
pub use relativize::RelativizedLattice;
pub use relconv::{
    describe_ground, hull_lattice_r1_meet_check, line_meet_campaign, rel_closure, ConvError, LineMeetCampaign,
    RelConvLattice, RelSet,
    ENUMERATION_GUARD, MAX_GROUND,
};
