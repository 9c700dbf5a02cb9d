//! Exact rational geometry.

pub mod dd;
mod error;
pub mod io;
pub mod linalg;
pub mod lp;
mod polytope;
pub mod rational;
pub mod sample;
mod witness;

pub use error::GeomError;
pub use polytope::{HPolytope, HalfSpace, Hyperplane, Polytope};
pub use rational::{int, parse_rational, ratio, format_rational, Rational, RationalPoint};
pub use witness::{
    caratheodory_witness, cone_meets, helly_verify, radon_partition, visibility_cone,
    ConvexWitness, RadonPartition, VisibilityCone,
};
