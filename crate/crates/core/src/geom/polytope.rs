//! Polytopes in canonical V-representation and their H-representations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::{extreme_rays, DdError};
use super::error::{check_dim, GeomError};
use super::linalg::{rank, solve, AffineHull};
use super::lp;
use super::rational::{dot, primitive_integer, Rational, RationalPoint};

/// Convex hull of finitely many rational points, stored by its extreme points
/// in lexicographic order. Two polytopes are equal iff their values are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RationalPoint>,
}

/// `normal · x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: RationalPoint,
    pub offset: Rational,
}

/// `normal · x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: RationalPoint,
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub equalities: Vec<Hyperplane>,
    pub inequalities: Vec<HalfSpace>,
}

impl HPolytope {
    pub fn contains(&self, q: &RationalPoint) -> bool {
        self.equalities
            .iter()
            .all(|h| h.normal.dot(q) == h.offset)
            && self
                .inequalities
                .iter()
                .all(|h| h.normal.dot(q) <= h.offset)
    }
}

fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Normalizes `(normal, offset)` to a primitive integer row. Equalities are
/// additionally sign-normalized so the first nonzero entry is positive.
fn normalize(normal: &[Rational], offset: &Rational, equality: bool) -> (RationalPoint, Rational) {
    let mut row = normal.to_vec();
    row.push(offset.clone());
    let mut ints = primitive_integer(&row);
    if equality {
        if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in ints.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    let off = Rational::from_integer(ints.pop().expect("nonempty"));
    (RationalPoint::new(to_rationals(&ints)), off)
}

/// Facets of the hull of `points` (distinct, at least two) in the intrinsic
/// coordinates of their affine hull, as integer pairs `(a, b)` meaning
/// `a · y <= b`.
fn intrinsic_facets(points: &[RationalPoint]) -> (AffineHull, Vec<Vec<Rational>>, Vec<(Vec<Rational>, Rational)>) {
    let aff = AffineHull::of(points);
    let k = aff.dim();
    let ys: Vec<Vec<Rational>> = points.iter().map(|p| aff.project(p)).collect();
    let rows: Vec<Vec<BigInt>> = ys
        .iter()
        .map(|y| {
            let mut r: Vec<Rational> = y.iter().map(|c| -c.clone()).collect();
            r.push(Rational::one());
            primitive_integer(&r)
        })
        .collect();
    let rays = extreme_rays(&rows, k + 1).expect("points span their affine hull");
    let facets = rays
        .into_iter()
        .filter(|r| r[..k].iter().any(|x| !x.is_zero()))
        .map(|r| {
            let q = to_rationals(&r);
            (q[..k].to_vec(), q[k].clone())
        })
        .collect();
    (aff, ys, facets)
}

impl Polytope {
    pub fn empty(dim: usize) -> Polytope {
        Polytope {
            dim,
            vertices: Vec::new(),
        }
    }

    pub fn point(p: RationalPoint) -> Polytope {
        Polytope {
            dim: p.dim(),
            vertices: vec![p],
        }
    }

    /// Canonical convex hull of `points`.
    pub fn hull(points: &[RationalPoint], dim: usize) -> Result<Polytope, GeomError> {
        for p in points {
            check_dim(dim, p.dim())?;
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 1 {
            return Ok(Polytope { dim, vertices: pts });
        }
        let (aff, ys, facets) = intrinsic_facets(&pts);
        let k = aff.dim();
        let vertices = pts
            .into_iter()
            .zip(&ys)
            .filter(|(_, y)| {
                let tight: Vec<Vec<Rational>> = facets
                    .iter()
                    .filter(|(a, b)| &dot(a, y) == b)
                    .map(|(a, _)| a.clone())
                    .collect();
                rank(&tight, k) == k
            })
            .map(|(p, _)| p)
            .collect();
        Ok(Polytope { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(AffineHull::of(&self.vertices).dim())
        }
    }

    /// Exact membership by LP feasibility over convex coefficients.
    pub fn contains(&self, q: &RationalPoint) -> Result<bool, GeomError> {
        check_dim(self.dim, q.dim())?;
        Ok(convex_coefficients(&self.vertices, q).is_some())
    }

    /// `self ⊆ other`, checked by testing every vertex against the facets of
    /// `other`.
    pub fn is_subset_of(&self, other: &Polytope) -> Result<bool, GeomError> {
        check_dim(self.dim, other.dim)?;
        if self.is_empty() {
            return Ok(true);
        }
        let h = other.to_h_rep();
        Ok(self.vertices.iter().all(|v| h.contains(v)))
    }

    pub fn join(&self, other: &Polytope) -> Result<Polytope, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        Polytope::hull(&pts, self.dim)
    }

    pub fn meet(&self, other: &Polytope) -> Result<Polytope, GeomError> {
        check_dim(self.dim, other.dim)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.dim));
        }
        let a = self.to_h_rep();
        let b = other.to_h_rep();
        let mut eqs = a.equalities;
        eqs.extend(b.equalities);
        let mut ineqs = a.inequalities;
        ineqs.extend(b.inequalities);
        match from_constraints(self.dim, &eqs, &ineqs, true) {
            Err(GeomError::Inconsistent) => Ok(Polytope::empty(self.dim)),
            other => other,
        }
    }

    /// Facet description inside the affine hull. Rows are primitive integer
    /// vectors in sorted order; the empty polytope is `0 <= -1`.
    pub fn to_h_rep(&self) -> HPolytope {
        let n = self.dim;
        if self.is_empty() {
            return HPolytope {
                dim: n,
                equalities: Vec::new(),
                inequalities: vec![HalfSpace {
                    normal: RationalPoint::origin(n),
                    offset: -Rational::one(),
                }],
            };
        }
        if self.vertices.len() == 1 {
            let p = &self.vertices[0];
            let equalities = (0..n)
                .map(|i| {
                    let (normal, offset) =
                        normalize(RationalPoint::unit(n, i).coords(), &p.coords()[i], true);
                    Hyperplane { normal, offset }
                })
                .collect();
            return HPolytope {
                dim: n,
                equalities,
                inequalities: Vec::new(),
            };
        }
        let (aff, _, facets) = intrinsic_facets(&self.vertices);
        let mut equalities: Vec<Hyperplane> = aff
            .equalities()
            .into_iter()
            .map(|(u, c)| {
                let (normal, offset) = normalize(&u, &c, true);
                Hyperplane { normal, offset }
            })
            .collect();
        equalities.sort();
        let mut inequalities: Vec<HalfSpace> = facets
            .into_iter()
            .map(|(a, b)| {
                let mut normal = vec![Rational::zero(); n];
                let mut offset = b;
                for (aj, &pc) in a.iter().zip(&aff.pivots) {
                    normal[pc] = aj.clone();
                    offset += aj * &aff.origin.coords()[pc];
                }
                let (normal, offset) = normalize(&normal, &offset, false);
                HalfSpace { normal, offset }
            })
            .collect();
        inequalities.sort();
        HPolytope {
            dim: n,
            equalities,
            inequalities,
        }
    }

    /// Vertex enumeration of a bounded H-description.
    pub fn from_h_rep(h: &HPolytope) -> Result<Polytope, GeomError> {
        for e in &h.equalities {
            check_dim(h.dim, e.normal.dim())?;
        }
        for i in &h.inequalities {
            check_dim(h.dim, i.normal.dim())?;
        }
        from_constraints(h.dim, &h.equalities, &h.inequalities, false)
    }

    /// `{q : q·p <= 1 for all p in self}`; requires 0 in the interior.
    pub fn polar_dual(&self) -> Result<Polytope, GeomError> {
        if self.is_empty() {
            return Err(GeomError::Empty);
        }
        let h = self.to_h_rep();
        if !h.equalities.is_empty() {
            return Err(GeomError::OriginNotInterior);
        }
        let mut pts = Vec::with_capacity(h.inequalities.len());
        for f in &h.inequalities {
            if !f.offset.is_positive() {
                return Err(GeomError::OriginNotInterior);
            }
            pts.push(f.normal.scale(&f.offset.recip()));
        }
        Polytope::hull(&pts, self.dim)
    }

    /// Image under `x -> x + t`.
    pub fn translate(&self, t: &RationalPoint) -> Polytope {
        let mut vertices: Vec<RationalPoint> = self.vertices.iter().map(|v| v + t).collect();
        vertices.sort();
        Polytope {
            dim: self.dim,
            vertices,
        }
    }
}

/// Convex coefficients expressing `q` over `points`, as a basic feasible
/// solution (at most `dim + 1` nonzeros), or `None` if `q` is outside.
pub(crate) fn convex_coefficients(points: &[RationalPoint], q: &RationalPoint) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let n = q.dim();
    let m = points.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|j| points.iter().map(|p| p.coords()[j].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); m]);
    let mut b = q.coords().to_vec();
    b.push(Rational::one());
    lp::feasible(&a, &b, m)
}

/// Feasibility of `A x <= b` with free `x`.
fn inequalities_feasible(a: &[Vec<Rational>], b: &[Rational], k: usize) -> bool {
    let m = a.len();
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(row.iter().map(|v| -v.clone()));
            r.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    lp::feasible(&rows, b, 2 * k + m).is_some()
}

pub(crate) fn from_constraints(
    n: usize,
    eqs: &[Hyperplane],
    ineqs: &[HalfSpace],
    known_bounded: bool,
) -> Result<Polytope, GeomError> {
    let e_rows: Vec<Vec<Rational>> = eqs.iter().map(|h| h.normal.coords().to_vec()).collect();
    let e_rhs: Vec<Rational> = eqs.iter().map(|h| h.offset.clone()).collect();
    let (x0, null) = solve(&e_rows, &e_rhs, n).ok_or(GeomError::Inconsistent)?;
    let x0 = RationalPoint::new(x0);
    let k = null.len();
    // Inequalities in the parameters t of x = x0 + N t.
    let a_t: Vec<Vec<Rational>> = ineqs
        .iter()
        .map(|h| null.iter().map(|col| dot(h.normal.coords(), col)).collect())
        .collect();
    let b_t: Vec<Rational> = ineqs
        .iter()
        .map(|h| &h.offset - h.normal.dot(&x0))
        .collect();
    if k == 0 {
        let ok = b_t.iter().all(|b| !b.is_negative());
        return Ok(if ok {
            Polytope::point(x0)
        } else {
            Polytope::empty(n)
        });
    }
    let lift = |t: &[Rational]| {
        let mut x = x0.coords().to_vec();
        for (ti, col) in t.iter().zip(&null) {
            for (xv, cv) in x.iter_mut().zip(col) {
                *xv += ti * cv;
            }
        }
        RationalPoint::new(x)
    };
    let mut rows: Vec<Vec<BigInt>> = a_t
        .iter()
        .zip(&b_t)
        .map(|(a, b)| {
            let mut r: Vec<Rational> = a.iter().map(|v| -v.clone()).collect();
            r.push(b.clone());
            primitive_integer(&r)
        })
        .collect();
    let mut homog = vec![BigInt::zero(); k + 1];
    homog[k] = BigInt::one();
    rows.push(homog);
    let rays = match extreme_rays(&rows, k + 1) {
        Ok(r) => r,
        Err(DdError::NotPointed) => {
            if known_bounded || !inequalities_feasible(&a_t, &b_t, k) {
                return Ok(Polytope::empty(n));
            }
            return Err(GeomError::Unbounded);
        }
    };
    let mut vertices = Vec::new();
    let mut recession = false;
    for r in rays {
        let s = &r[k];
        if s.is_zero() {
            recession = true;
            continue;
        }
        let s = Rational::from_integer(s.clone());
        let t: Vec<Rational> = r[..k]
            .iter()
            .map(|x| Rational::from_integer(x.clone()) / &s)
            .collect();
        vertices.push(lift(&t));
    }
    if vertices.is_empty() {
        return Ok(Polytope::empty(n));
    }
    if recession {
        return Err(GeomError::Unbounded);
    }
    vertices.sort();
    vertices.dedup();
    Ok(Polytope { dim: n, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::{int, ratio};

    fn pt(c: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(c)
    }

    fn poly(pts: &[&[i64]]) -> Polytope {
        let v: Vec<RationalPoint> = pts.iter().map(|c| pt(c)).collect();
        Polytope::hull(&v, v[0].dim()).unwrap()
    }

    fn bx(lo: i64, hi: i64) -> Polytope {
        poly(&[&[lo, lo], &[lo, hi], &[hi, lo], &[hi, hi]])
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = vec![
            pt(&[0, 0]),
            pt(&[1, 0]),
            pt(&[0, 1]),
            RationalPoint::new(vec![ratio(1, 4), ratio(1, 4)]),
        ];
        let p = Polytope::hull(&pts, 2).unwrap();
        assert_eq!(p.vertices(), &[pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0])]);
    }

    #[test]
    fn hull_of_collinear_points() {
        let p = poly(&[&[0, 0], &[1, 1], &[3, 3], &[2, 2]]);
        assert_eq!(p.vertices(), &[pt(&[0, 0]), pt(&[3, 3])]);
    }

    #[test]
    fn hull_rejects_mixed_dimensions() {
        let err = Polytope::hull(&[pt(&[0, 0]), pt(&[1])], 2).unwrap_err();
        assert_eq!(err, GeomError::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn membership() {
        let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(t
            .contains(&RationalPoint::new(vec![ratio(1, 2), ratio(1, 2)]))
            .unwrap());
        assert!(!t.contains(&pt(&[2, 2])).unwrap());
    }

    #[test]
    fn box_meet() {
        assert_eq!(bx(0, 2).meet(&bx(1, 3)).unwrap(), bx(1, 2));
    }

    #[test]
    fn disjoint_segments_meet_empty() {
        let a = poly(&[&[0], &[1]]);
        let b = poly(&[&[2], &[3]]);
        assert!(a.meet(&b).unwrap().is_empty());
    }

    #[test]
    fn crossing_segments_meet_in_point() {
        let a = poly(&[&[0, 0], &[2, 2]]);
        let b = poly(&[&[0, 2], &[2, 0]]);
        assert_eq!(a.meet(&b).unwrap(), Polytope::point(pt(&[1, 1])));
    }

    #[test]
    fn square_h_rep() {
        let sq = bx(-1, 1);
        let h = sq.to_h_rep();
        assert!(h.equalities.is_empty());
        assert_eq!(h.inequalities.len(), 4);
        for f in &h.inequalities {
            assert_eq!(f.offset, int(1));
        }
        assert_eq!(Polytope::from_h_rep(&h).unwrap(), sq);
    }

    #[test]
    fn segment_h_rep_has_one_equality() {
        let seg = poly(&[&[0, 0], &[1, 2]]);
        let h = seg.to_h_rep();
        assert_eq!(h.equalities.len(), 1);
        assert_eq!(h.inequalities.len(), 2);
        assert_eq!(Polytope::from_h_rep(&h).unwrap(), seg);
    }

    #[test]
    fn unbounded_and_inconsistent_h_input() {
        let half = HPolytope {
            dim: 2,
            equalities: Vec::new(),
            inequalities: vec![HalfSpace {
                normal: pt(&[1, 0]),
                offset: int(1),
            }],
        };
        assert_eq!(Polytope::from_h_rep(&half), Err(GeomError::Unbounded));
        let bad = HPolytope {
            dim: 1,
            equalities: vec![
                Hyperplane {
                    normal: pt(&[1]),
                    offset: int(0),
                },
                Hyperplane {
                    normal: pt(&[1]),
                    offset: int(1),
                },
            ],
            inequalities: Vec::new(),
        };
        assert_eq!(Polytope::from_h_rep(&bad), Err(GeomError::Inconsistent));
    }

    #[test]
    fn empty_round_trip() {
        let e = Polytope::empty(3);
        assert_eq!(Polytope::from_h_rep(&e.to_h_rep()).unwrap(), e);
    }

    #[test]
    fn infeasible_strip_is_empty_not_unbounded() {
        let h = HPolytope {
            dim: 2,
            equalities: Vec::new(),
            inequalities: vec![
                HalfSpace {
                    normal: pt(&[-1, 0]),
                    offset: int(-1),
                },
                HalfSpace {
                    normal: pt(&[1, 0]),
                    offset: int(0),
                },
            ],
        };
        assert!(Polytope::from_h_rep(&h).unwrap().is_empty());
    }

    #[test]
    fn polar_of_square_is_diamond() {
        let d = bx(-1, 1).polar_dual().unwrap();
        assert_eq!(d, poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert_eq!(d.polar_dual().unwrap(), bx(-1, 1));
        assert_eq!(bx(0, 1).polar_dual(), Err(GeomError::OriginNotInterior));
    }
}
