//! Relatively convex subsets of a finite ground set.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::geom::io::{point_to_json, polytope_to_json};
use crate::geom::sample::{trial_rng, SamplerConfig};
use crate::geom::{Polytope, RationalPoint};
use crate::term::LatticeHandle;

pub const MAX_GROUND: usize = 64;
pub const ENUMERATION_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvError {
    #[error("ground set has {0} points; at most {MAX_GROUND} are supported")]
    GroundTooLarge(usize),
    #[error("ground set has {0} points; enumeration is limited to {ENUMERATION_GUARD}")]
    GuardExceeded(usize),
    #[error("point {0} is not in the ground set")]
    NotInGround(String),
    #[error("ground set points must all have dimension {0}")]
    Dimension(usize),
    #[error("ground set contains a repeated point {0}")]
    Duplicate(String),
    #[error("base point index {0} is out of range")]
    BadBasePoint(usize),
    #[error("expected dimension 1, found {0}")]
    NotLine(usize),
    #[error("subset is not relatively convex")]
    NotClosed,
}

/// A subset of the ground set, as a bitmask over point indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelSet(pub u64);

impl RelSet {
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }
    pub fn from_indices(idx: &[usize]) -> RelSet {
        RelSet(idx.iter().fold(0, |m, &i| m | 1 << i))
    }
    pub fn is_subset_of(self, other: RelSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// RelConv(S), or RelConv(S)_{>={p}} when a base point is set.
#[derive(Debug, Clone)]
pub struct RelConvLattice {
    dim: usize,
    ground: Vec<RationalPoint>,
    base: Option<usize>,
}

impl RelConvLattice {
    pub fn new(dim: usize, ground: Vec<RationalPoint>) -> Result<RelConvLattice, ConvError> {
        if ground.len() > MAX_GROUND {
            return Err(ConvError::GroundTooLarge(ground.len()));
        }
        if ground.iter().any(|p| p.dim() != dim) {
            return Err(ConvError::Dimension(dim));
        }
        for (i, p) in ground.iter().enumerate() {
            if ground[..i].contains(p) {
                return Err(ConvError::Duplicate(p.to_string()));
            }
        }
        Ok(RelConvLattice {
            dim,
            ground,
            base: None,
        })
    }

    /// The interval above the singleton of point `base`.
    pub fn pointed(dim: usize, ground: Vec<RationalPoint>, base: usize) -> Result<RelConvLattice, ConvError> {
        let mut l = RelConvLattice::new(dim, ground)?;
        if base >= l.ground.len() {
            return Err(ConvError::BadBasePoint(base));
        }
        l.base = Some(base);
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ground(&self) -> &[RationalPoint] {
        &self.ground
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn full(&self) -> RelSet {
        RelSet(if self.ground.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground.len()) - 1
        })
    }

    pub fn points(&self, s: RelSet) -> Vec<RationalPoint> {
        s.indices().into_iter().map(|i| self.ground[i].clone()).collect()
    }

    pub fn hull(&self, s: RelSet) -> Polytope {
        Polytope::hull(&self.points(s), self.dim).expect("ground points share the dimension")
    }

    /// `c.h.(s) ∩ S`.
    pub fn closure(&self, s: RelSet) -> RelSet {
        if s.len() <= 1 {
            return s;
        }
        let h = self.hull(s).to_h_rep();
        let mut out = s;
        for (i, p) in self.ground.iter().enumerate() {
            if !out.contains(i) && h.contains(p) {
                out.0 |= 1 << i;
            }
        }
        out
    }

    pub fn is_closed(&self, s: RelSet) -> bool {
        self.closure(s) == s
    }

    pub fn index_of(&self, p: &RationalPoint) -> Option<usize> {
        self.ground.iter().position(|g| g == p)
    }

    pub fn set_of(&self, pts: &[RationalPoint]) -> Result<RelSet, ConvError> {
        let mut s = RelSet(0);
        for p in pts {
            let i = self.index_of(p).ok_or_else(|| ConvError::NotInGround(p.to_string()))?;
            s.0 |= 1 << i;
        }
        Ok(s)
    }

    /// All closed sets (above the base point, if any) in lectic order.
    pub fn enumerate_closed_sets(&self) -> Result<Vec<RelSet>, ConvError> {
        let m = self.ground.len();
        if m > ENUMERATION_GUARD {
            return Err(ConvError::GuardExceeded(m));
        }
        let floor = self.base.map_or(RelSet(0), |b| RelSet(1 << b));
        let close = |s: RelSet| self.closure(RelSet(s.0 | floor.0));
        let mut out = Vec::new();
        let mut a = close(RelSet(0));
        loop {
            out.push(a);
            let mut next = None;
            for i in (0..m).rev() {
                if a.contains(i) {
                    continue;
                }
                let below = (1u64 << i) - 1;
                let b = close(RelSet((a.0 & below) | 1 << i));
                if b.0 & below == a.0 & below {
                    next = Some(b);
                    break;
                }
            }
            match next {
                Some(b) => a = b,
                None => break,
            }
        }
        Ok(out)
    }

    /// Closure of a random subset (plus the base point).
    pub fn sample(&self, rng: &mut impl Rng) -> RelSet {
        let mut s = RelSet(rng.gen::<u64>() & self.full().0);
        if let Some(b) = self.base {
            s.0 |= 1 << b;
        }
        self.closure(s)
    }
}

impl LatticeHandle for RelConvLattice {
    type Elem = RelSet;

    fn selector(&self) -> String {
        match self.base {
            None => format!("relconv[{}]", self.ground.len()),
            Some(b) => format!("relconv-pointed[{}]:{b}", self.ground.len()),
        }
    }
    fn meet(&self, a: &RelSet, b: &RelSet) -> RelSet {
        RelSet(a.0 & b.0)
    }
    fn join(&self, a: &RelSet, b: &RelSet) -> RelSet {
        self.closure(RelSet(a.0 | b.0))
    }
    fn leq(&self, a: &RelSet, b: &RelSet) -> bool {
        a.is_subset_of(*b)
    }
    fn bottom(&self) -> Option<RelSet> {
        Some(self.base.map_or(RelSet(0), |b| RelSet(1 << b)))
    }
    fn validate(&self, e: &RelSet) -> Result<(), String> {
        if !e.is_subset_of(self.full()) {
            return Err("index outside the ground set".into());
        }
        if let Some(b) = self.base {
            if !e.contains(b) {
                return Err(format!("does not contain base point {b}"));
            }
        }
        if !self.is_closed(*e) {
            return Err("not relatively convex".into());
        }
        Ok(())
    }
    fn describe(&self, e: &RelSet) -> Value {
        json!({
            "indices": e.indices(),
            "points": self.points(*e).iter().map(point_to_json).collect::<Vec<_>>(),
        })
    }
    fn witness(&self, larger: &RelSet, smaller: &RelSet) -> Option<RationalPoint> {
        RelSet(larger.0 & !smaller.0)
            .indices()
            .first()
            .map(|&i| self.ground[i].clone())
    }
}

/// `c.h.(A) ∩ S` for an explicit point subset `A ⊆ S`.
pub fn rel_closure(ground: &[RationalPoint], subset: &[RationalPoint]) -> Result<Vec<RationalPoint>, ConvError> {
    let dim = ground.first().map_or(0, RationalPoint::dim);
    let l = RelConvLattice::new(dim, ground.to_vec())?;
    let s = l.set_of(subset)?;
    Ok(l.points(l.closure(s)))
}

/// On a line, hulls of relatively convex sets meet like the sets themselves:
/// `c.h.(x) ∩ c.h.(y) = c.h.(x ∩ y)`.
pub fn hull_lattice_r1_meet_check(l: &RelConvLattice, x: RelSet, y: RelSet) -> Result<bool, ConvError> {
    if l.dim() != 1 {
        return Err(ConvError::NotLine(l.dim()));
    }
    if !l.is_closed(x) || !l.is_closed(y) {
        return Err(ConvError::NotClosed);
    }
    let lhs = l.hull(x).meet(&l.hull(y)).expect("same dimension");
    Ok(lhs == l.hull(RelSet(x.0 & y.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct LineMeetCampaign {
    pub seed: u64,
    pub trials: u64,
    pub failures: u64,
    pub first_failure: Option<Value>,
}

/// Random ground sets of up to ten rationals with random relatively convex
/// `x`, `y`, each run through [`hull_lattice_r1_meet_check`].
pub fn line_meet_campaign(trials: u64, seed: u64) -> LineMeetCampaign {
    let cfg = SamplerConfig { denominator_bound: 4, coordinate_range: 5, ..SamplerConfig::new(1) };
    let mut failures = 0;
    let mut first_failure = None;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let size = rng.gen_range(1..=10);
        let mut ground: Vec<RationalPoint> = Vec::new();
        while ground.len() < size {
            let p = cfg.point(&mut rng);
            if !ground.contains(&p) {
                ground.push(p);
            }
        }
        let l = RelConvLattice::new(1, ground).expect("distinct points on a line");
        let (x, y) = (l.sample(&mut rng), l.sample(&mut rng));
        if !hull_lattice_r1_meet_check(&l, x, y).expect("closed sets on a line") {
            failures += 1;
            first_failure.get_or_insert_with(|| {
                json!({"trial": t, "ground": describe_ground(&l), "x": l.describe(&x), "y": l.describe(&y)})
            });
        }
    }
    LineMeetCampaign { seed, trials, failures, first_failure }
}

/// Ground set summary for reports.
pub fn describe_ground(l: &RelConvLattice) -> Value {
    json!({
        "dim": l.dim(),
        "points": l.ground().iter().map(point_to_json).collect::<Vec<_>>(),
        "hull": polytope_to_json(&l.hull(l.full())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[i64]) -> RelConvLattice {
        RelConvLattice::new(1, xs.iter().map(|&x| RationalPoint::from_ints(&[x])).collect()).unwrap()
    }

    #[test]
    fn closure_fills_between() {
        let l = line(&[0, 1, 2]);
        assert_eq!(l.closure(RelSet::from_indices(&[0, 2])), RelSet(0b111));
        assert_eq!(l.closure(RelSet(0)), RelSet(0));
    }

    #[test]
    fn collinear_three_has_seven_closed_sets() {
        assert_eq!(line(&[0, 1, 2]).enumerate_closed_sets().unwrap().len(), 7);
    }

    #[test]
    fn triangle_has_eight_closed_sets() {
        let l = RelConvLattice::new(
            2,
            vec![
                RationalPoint::from_ints(&[0, 0]),
                RationalPoint::from_ints(&[1, 0]),
                RationalPoint::from_ints(&[0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(l.enumerate_closed_sets().unwrap().len(), 8);
    }

    #[test]
    fn pointed_enumeration_keeps_base() {
        let l = RelConvLattice::pointed(
            1,
            [0, 1, 2].iter().map(|&x| RationalPoint::from_ints(&[x])).collect(),
            1,
        )
        .unwrap();
        let sets = l.enumerate_closed_sets().unwrap();
        assert!(sets.iter().all(|s| s.contains(1)));
        assert_eq!(sets.len(), 4);
    }

    #[test]
    fn rejects_points_outside_ground() {
        let g: Vec<_> = [0, 1].iter().map(|&x| RationalPoint::from_ints(&[x])).collect();
        assert!(rel_closure(&g, &[RationalPoint::from_ints(&[5])]).is_err());
    }

    #[test]
    fn line_meet_check() {
        let l = line(&[0, 1, 2, 3]);
        let x = RelSet::from_indices(&[0, 1, 2]);
        let y = RelSet::from_indices(&[1, 2, 3]);
        assert!(hull_lattice_r1_meet_check(&l, x, y).unwrap());
        let x = RelSet::from_indices(&[0, 1]);
        let y = RelSet::from_indices(&[2, 3]);
        assert!(hull_lattice_r1_meet_check(&l, x, y).unwrap());
    }
}
