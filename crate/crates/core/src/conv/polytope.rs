use serde_json::Value;

use crate::geom::io::polytope_to_json;
use crate::geom::{Polytope, RationalPoint};
use crate::term::LatticeHandle;

/// Conv(Q^n) restricted to polytopes, including the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolytopeLattice {
    pub dim: usize,
}

/// Polytopes containing the origin; the origin alone is the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointedPolytopeLattice {
    pub dim: usize,
}

/// First vertex of `larger` not contained in `smaller`.
pub fn polytope_witness(larger: &Polytope, smaller: &Polytope) -> Option<RationalPoint> {
    if smaller.is_empty() {
        return larger.vertices().first().cloned();
    }
    let h = smaller.to_h_rep();
    larger.vertices().iter().find(|v| !h.contains(v)).cloned()
}

fn check_dim(dim: usize, e: &Polytope) -> Result<(), String> {
    if e.dim() == dim {
        Ok(())
    } else {
        Err(format!("dimension {} instead of {dim}", e.dim()))
    }
}

impl LatticeHandle for PolytopeLattice {
    type Elem = Polytope;

    fn selector(&self) -> String {
        format!("conv:{}", self.dim)
    }
    fn meet(&self, a: &Polytope, b: &Polytope) -> Polytope {
        a.meet(b).expect("validated dimensions")
    }
    fn join(&self, a: &Polytope, b: &Polytope) -> Polytope {
        a.join(b).expect("validated dimensions")
    }
    fn leq(&self, a: &Polytope, b: &Polytope) -> bool {
        a.is_subset_of(b).expect("validated dimensions")
    }
    fn bottom(&self) -> Option<Polytope> {
        Some(Polytope::empty(self.dim))
    }
    fn validate(&self, e: &Polytope) -> Result<(), String> {
        check_dim(self.dim, e)
    }
    fn describe(&self, e: &Polytope) -> Value {
        polytope_to_json(e)
    }
    fn witness(&self, larger: &Polytope, smaller: &Polytope) -> Option<RationalPoint> {
        polytope_witness(larger, smaller)
    }
}

impl LatticeHandle for PointedPolytopeLattice {
    type Elem = Polytope;

    fn selector(&self) -> String {
        format!("pointed:{}", self.dim)
    }
    fn meet(&self, a: &Polytope, b: &Polytope) -> Polytope {
        a.meet(b).expect("validated dimensions")
    }
    fn join(&self, a: &Polytope, b: &Polytope) -> Polytope {
        a.join(b).expect("validated dimensions")
    }
    fn leq(&self, a: &Polytope, b: &Polytope) -> bool {
        a.is_subset_of(b).expect("validated dimensions")
    }
    fn bottom(&self) -> Option<Polytope> {
        Some(Polytope::point(RationalPoint::origin(self.dim)))
    }
    fn validate(&self, e: &Polytope) -> Result<(), String> {
        check_dim(self.dim, e)?;
        if e.contains(&RationalPoint::origin(self.dim)).unwrap_or(false) {
            Ok(())
        } else {
            Err("does not contain the origin".into())
        }
    }
    fn describe(&self, e: &Polytope) -> Value {
        polytope_to_json(e)
    }
    fn witness(&self, larger: &Polytope, smaller: &Polytope) -> Option<RationalPoint> {
        polytope_witness(larger, smaller)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: &[i64], b: &[i64]) -> Polytope {
        Polytope::hull(&[RationalPoint::from_ints(a), RationalPoint::from_ints(b)], a.len()).unwrap()
    }

    #[test]
    fn pointed_rejects_sets_missing_origin() {
        let l = PointedPolytopeLattice { dim: 2 };
        assert!(l.validate(&seg(&[0, 0], &[1, 1])).is_ok());
        assert!(l.validate(&seg(&[1, 0], &[1, 1])).is_err());
        assert!(l.validate(&Polytope::empty(2)).is_err());
    }

    #[test]
    fn witness_is_outside_smaller() {
        let l = PolytopeLattice { dim: 1 };
        let big = seg(&[0], &[4]);
        let small = seg(&[0], &[2]);
        assert_eq!(l.witness(&big, &small), Some(RationalPoint::from_ints(&[4])));
        assert_eq!(l.witness(&small, &big), None);
        assert!(l.leq(&small, &big));
    }
}
