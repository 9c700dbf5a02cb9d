//! Seeded random rational points and polytopes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::polytope::Polytope;
use super::rational::{ratio, RationalPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub dim: usize,
    /// Each set is the hull of 1..=points_per_set random points.
    pub points_per_set: usize,
    /// Coordinates are `num/den` with `1 <= den <= denominator_bound`.
    pub denominator_bound: i64,
    /// Coordinates lie in `[-coordinate_range, coordinate_range]`.
    pub coordinate_range: i64,
    /// Adds the origin to every generator list.
    pub include_origin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid sampler configuration: {0}")]
pub struct SamplerError(pub String);

impl SamplerConfig {
    pub fn new(dim: usize) -> SamplerConfig {
        SamplerConfig {
            dim,
            points_per_set: 3,
            denominator_bound: 3,
            coordinate_range: 2,
            include_origin: false,
        }
    }

    pub fn pointed(dim: usize) -> SamplerConfig {
        SamplerConfig {
            include_origin: true,
            ..SamplerConfig::new(dim)
        }
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.dim == 0 {
            return Err(SamplerError("dim must be at least 1".into()));
        }
        if self.points_per_set == 0 {
            return Err(SamplerError("points_per_set must be at least 1".into()));
        }
        if self.denominator_bound < 1 {
            return Err(SamplerError("denominator_bound must be at least 1".into()));
        }
        if self.coordinate_range < 1 {
            return Err(SamplerError("coordinate_range must be at least 1".into()));
        }
        Ok(())
    }

    pub fn point(&self, rng: &mut impl Rng) -> RationalPoint {
        let coords = (0..self.dim)
            .map(|_| {
                let den = rng.gen_range(1..=self.denominator_bound);
                let lim = self.coordinate_range * den;
                ratio(rng.gen_range(-lim..=lim), den)
            })
            .collect();
        RationalPoint::new(coords)
    }

    pub fn polytope(&self, rng: &mut impl Rng) -> Polytope {
        let k = rng.gen_range(1..=self.points_per_set);
        let mut pts: Vec<RationalPoint> = (0..k).map(|_| self.point(rng)).collect();
        if self.include_origin {
            pts.push(RationalPoint::origin(self.dim));
        }
        Polytope::hull(&pts, self.dim).expect("sampled points share the dimension")
    }
}

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
