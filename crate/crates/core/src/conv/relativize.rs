//! Relativization of a lattice to a family of pieces.

use serde_json::Value;

use crate::geom::RationalPoint;
use crate::term::LatticeHandle;

/// Elements of `base` fixed by `int(x) = ⋁_i (x ∧ S_i)`, with meet
/// `x ∧_S y = ⋁_i (x ∧ y ∧ S_i)` and the join of `base`.
pub struct RelativizedLattice<'a, L: LatticeHandle> {
    pub base: &'a L,
    pub pieces: Vec<L::Elem>,
}

impl<'a, L: LatticeHandle> RelativizedLattice<'a, L> {
    pub fn new(base: &'a L, pieces: Vec<L::Elem>) -> Self {
        assert!(!pieces.is_empty(), "relativization needs at least one piece");
        RelativizedLattice { base, pieces }
    }

    fn join_over_pieces(&self, x: &L::Elem) -> L::Elem {
        let mut parts = self.pieces.iter().map(|s| self.base.meet(x, s));
        let first = parts.next().expect("nonempty pieces");
        parts.fold(first, |acc, p| self.base.join(&acc, &p))
    }

    pub fn interior(&self, x: &L::Elem) -> L::Elem {
        self.join_over_pieces(x)
    }

    pub fn is_fixed(&self, x: &L::Elem) -> bool {
        self.base.equal(&self.interior(x), x)
    }
}

impl<L: LatticeHandle> LatticeHandle for RelativizedLattice<'_, L> {
    type Elem = L::Elem;

    fn selector(&self) -> String {
        format!("relativized({};{})", self.base.selector(), self.pieces.len())
    }
    fn meet(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        self.join_over_pieces(&self.base.meet(a, b))
    }
    fn join(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        self.base.join(a, b)
    }
    fn equal(&self, a: &L::Elem, b: &L::Elem) -> bool {
        self.base.equal(a, b)
    }
    fn leq(&self, a: &L::Elem, b: &L::Elem) -> bool {
        self.base.leq(a, b)
    }
    fn bottom(&self) -> Option<L::Elem> {
        self.base.bottom().map(|b| self.interior(&b))
    }
    fn validate(&self, e: &L::Elem) -> Result<(), String> {
        self.base.validate(e)?;
        if self.is_fixed(e) {
            Ok(())
        } else {
            Err("not fixed by the interior operator".into())
        }
    }
    fn describe(&self, e: &L::Elem) -> Value {
        self.base.describe(e)
    }
    fn witness(&self, larger: &L::Elem, smaller: &L::Elem) -> Option<RationalPoint> {
        self.base.witness(larger, smaller)
    }
}
