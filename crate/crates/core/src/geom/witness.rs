//! Carathéodory, Radon and Helly witnesses, and visibility cones.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::error::{check_dim, GeomError};
use super::linalg::nullspace;
use super::lp;
use super::polytope::{convex_coefficients, Polytope};
use super::rational::{Rational, RationalPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexWitness {
    pub points: Vec<RationalPoint>,
    pub coefficients: Vec<Rational>,
}

impl ConvexWitness {
    /// Re-evaluates the combination.
    pub fn evaluate(&self) -> RationalPoint {
        RationalPoint::combination(&self.points, &self.coefficients)
    }

    pub fn is_valid_for(&self, q: &RationalPoint) -> bool {
        !self.points.is_empty()
            && self.coefficients.iter().all(|c| !c.is_negative())
            && self.coefficients.iter().sum::<Rational>().is_one()
            && &self.evaluate() == q
    }
}

/// Columns `[v; 1]` as a row-major matrix.
fn homogeneous_columns(points: &[&RationalPoint]) -> Vec<Vec<Rational>> {
    let n = points[0].dim();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|j| points.iter().map(|p| p.coords()[j].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); points.len()]);
    rows
}

/// At most `dim + 1` points of `points` (containing `anchor` when given)
/// whose convex hull contains `q`, with explicit coefficients.
pub fn caratheodory_witness(
    points: &[RationalPoint],
    q: &RationalPoint,
    anchor: Option<&RationalPoint>,
) -> Result<ConvexWitness, GeomError> {
    for p in points {
        check_dim(q.dim(), p.dim())?;
    }
    if let Some(a) = anchor {
        if !points.contains(a) {
            return Err(GeomError::AnchorNotInSet);
        }
    }
    let coeffs = convex_coefficients(points, q).ok_or(GeomError::NotInHull)?;
    let support: Vec<usize> = (0..points.len()).filter(|&i| !coeffs[i].is_zero()).collect();
    let mut lambda: Vec<Rational> = support.iter().map(|&i| coeffs[i].clone()).collect();
    let Some(anchor) = anchor else {
        return Ok(ConvexWitness {
            points: support.iter().map(|&i| points[i].clone()).collect(),
            coefficients: lambda,
        });
    };
    if support.iter().any(|&i| &points[i] == anchor) {
        return Ok(ConvexWitness {
            points: support.iter().map(|&i| points[i].clone()).collect(),
            coefficients: lambda,
        });
    }
    let mut pts: Vec<&RationalPoint> = support.iter().map(|&i| &points[i]).collect();
    pts.push(anchor);
    let ns = nullspace(&homogeneous_columns(&pts), pts.len());
    let mut chosen: Vec<RationalPoint> = pts.iter().map(|p| (*p).clone()).collect();
    lambda.push(Rational::zero());
    if let Some(mut mu) = ns.into_iter().next() {
        let last = mu.len() - 1;
        if mu[last].is_positive() {
            mu.iter_mut().for_each(|m| *m = -m.clone());
        }
        // Move along -mu until some non-anchor coefficient vanishes.
        let alpha = (0..last)
            .filter(|&i| mu[i].is_positive())
            .map(|i| &lambda[i] / &mu[i])
            .min()
            .expect("affine dependence has a positive entry");
        for (l, m) in lambda.iter_mut().zip(&mu) {
            *l -= &alpha * m;
        }
        let keep: Vec<usize> = (0..=last)
            .filter(|&i| i == last || !lambda[i].is_zero())
            .collect();
        chosen = keep.iter().map(|&i| chosen[i].clone()).collect();
        lambda = keep.iter().map(|&i| lambda[i].clone()).collect();
    }
    Ok(ConvexWitness {
        points: chosen,
        coefficients: lambda,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadonPartition {
    pub i1: Vec<usize>,
    pub i2: Vec<usize>,
    pub common_point: RationalPoint,
}

/// Splits `dim + 2` points into two parts with intersecting hulls.
pub fn radon_partition(points: &[RationalPoint], dim: usize) -> Result<RadonPartition, GeomError> {
    if points.len() != dim + 2 {
        return Err(GeomError::WrongCount {
            expected: dim + 2,
            found: points.len(),
        });
    }
    for p in points {
        check_dim(dim, p.dim())?;
    }
    let refs: Vec<&RationalPoint> = points.iter().collect();
    let mut c = nullspace(&homogeneous_columns(&refs), points.len())
        .into_iter()
        .next()
        .expect("dim + 2 points are affinely dependent");
    if c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()) {
        c.iter_mut().for_each(|x| *x = -x.clone());
    }
    let i1: Vec<usize> = (0..c.len()).filter(|&i| c[i].is_positive()).collect();
    let i2: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_positive()).collect();
    let total: Rational = i1.iter().map(|&i| c[i].clone()).sum();
    let pts: Vec<RationalPoint> = i1.iter().map(|&i| points[i].clone()).collect();
    let w: Vec<Rational> = i1.iter().map(|&i| &c[i] / &total).collect();
    Ok(RadonPartition {
        common_point: RationalPoint::combination(&pts, &w),
        i1,
        i2,
    })
}

/// The Helly implication for `family` in dimension `dim`: if every
/// `(dim+1)`-subfamily has a common point then so does the whole family.
pub fn helly_verify(family: &[Polytope], dim: usize) -> Result<bool, GeomError> {
    for p in family {
        check_dim(dim, p.dim())?;
    }
    let meet_all = |members: &[&Polytope]| -> Result<Polytope, GeomError> {
        let mut acc = members[0].clone();
        for m in &members[1..] {
            if acc.is_empty() {
                break;
            }
            acc = acc.meet(m)?;
        }
        Ok(acc)
    };
    if family.is_empty() {
        return Ok(true);
    }
    let k = (dim + 1).min(family.len());
    for sub in family.iter().combinations(k) {
        if meet_all(&sub)?.is_empty() {
            return Ok(true);
        }
    }
    let all: Vec<&Polytope> = family.iter().collect();
    Ok(!meet_all(&all)?.is_empty())
}

/// `{p + sum t_i (p - v_i) : t_i >= 0}` for the vertices `v_i` of a polytope;
/// the whole space when `p` lies in the polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityCone {
    pub apex: RationalPoint,
    pub generators: Vec<RationalPoint>,
    pub degenerate: bool,
}

pub fn visibility_cone(x: &Polytope, p: &RationalPoint) -> Result<VisibilityCone, GeomError> {
    if x.is_empty() {
        return Err(GeomError::Empty);
    }
    let degenerate = x.contains(p)?;
    Ok(VisibilityCone {
        apex: p.clone(),
        generators: x.vertices().iter().map(|v| p - v).collect(),
        degenerate,
    })
}

impl VisibilityCone {
    pub fn contains(&self, q: &RationalPoint) -> bool {
        if self.degenerate {
            return true;
        }
        let n = self.apex.dim();
        let k = self.generators.len();
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|j| self.generators.iter().map(|g| g.coords()[j].clone()).collect())
            .collect();
        let b = (q - &self.apex).into_coords();
        lp::feasible(&a, &b, k).is_some()
    }
}

/// Whether `w` meets `y`; equivalent to `p ∈ x ∨ y` for nonempty `y`.
pub fn cone_meets(w: &VisibilityCone, y: &Polytope) -> Result<bool, GeomError> {
    check_dim(w.apex.dim(), y.dim())?;
    if y.is_empty() {
        return Ok(false);
    }
    if w.degenerate {
        return Ok(true);
    }
    let n = w.apex.dim();
    let us = y.vertices();
    let m = us.len();
    let k = w.generators.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = us.iter().map(|u| u.coords()[j].clone()).collect();
            row.extend(w.generators.iter().map(|g| -g.coords()[j].clone()));
            row
        })
        .collect();
    let mut sum_row = vec![Rational::one(); m];
    sum_row.extend(vec![Rational::zero(); k]);
    a.push(sum_row);
    let mut b = w.apex.coords().to_vec();
    b.push(Rational::one());
    Ok(lp::feasible(&a, &b, m + k).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::{int, ratio};

    fn pt(c: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(c)
    }

    #[test]
    fn caratheodory_singleton() {
        let w = caratheodory_witness(&[pt(&[3, 4])], &pt(&[3, 4]), None).unwrap();
        assert_eq!(w.points, vec![pt(&[3, 4])]);
        assert_eq!(w.coefficients, vec![int(1)]);
    }

    #[test]
    fn caratheodory_with_anchor() {
        let pts = vec![pt(&[0, 0]), pt(&[4, 0]), pt(&[0, 4]), pt(&[4, 4]), pt(&[2, 5])];
        let q = pt(&[2, 2]);
        for anchor in &pts {
            let w = caratheodory_witness(&pts, &q, Some(anchor)).unwrap();
            assert!(w.points.len() <= 3);
            assert!(w.points.contains(anchor));
            assert!(w.is_valid_for(&q));
        }
    }

    #[test]
    fn caratheodory_outside_is_an_error() {
        let r = caratheodory_witness(&[pt(&[0]), pt(&[1])], &pt(&[2]), None);
        assert_eq!(r, Err(GeomError::NotInHull));
    }

    #[test]
    fn radon_interior_point() {
        let pts = vec![
            pt(&[0, 0]),
            pt(&[1, 0]),
            pt(&[0, 1]),
            RationalPoint::new(vec![ratio(1, 3), ratio(1, 3)]),
        ];
        let r = radon_partition(&pts, 2).unwrap();
        assert_eq!(r.i1, vec![3]);
        assert_eq!(r.i2, vec![0, 1, 2]);
        assert_eq!(r.common_point, pts[3]);
    }

    #[test]
    fn radon_square_diagonals() {
        let pts = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let r = radon_partition(&pts, 2).unwrap();
        assert_eq!(r.i1, vec![1, 2]);
        assert_eq!(r.i2, vec![0, 3]);
        assert_eq!(r.common_point, RationalPoint::new(vec![ratio(1, 2), ratio(1, 2)]));
        assert!(radon_partition(&pts[..3], 2).is_err());
    }

    #[test]
    fn helly_intervals() {
        let iv = |a: i64, b: i64| Polytope::hull(&[pt(&[a]), pt(&[b])], 1).unwrap();
        assert!(helly_verify(&[iv(0, 3), iv(1, 4), iv(2, 5)], 1).unwrap());
        assert!(helly_verify(&[iv(0, 1), iv(2, 3), iv(0, 3)], 1).unwrap());
    }

    #[test]
    fn visibility_collinear() {
        let x = Polytope::point(pt(&[2, 0]));
        let w = visibility_cone(&x, &pt(&[0, 0])).unwrap();
        assert!(!w.degenerate);
        assert_eq!(w.generators, vec![pt(&[-2, 0])]);
        assert!(cone_meets(&w, &Polytope::point(pt(&[-1, 0]))).unwrap());
        assert!(!cone_meets(&w, &Polytope::point(pt(&[1, 0]))).unwrap());
    }

    #[test]
    fn visibility_degenerate() {
        let x = Polytope::hull(&[pt(&[0, 0]), pt(&[2, 0])], 2).unwrap();
        let w = visibility_cone(&x, &pt(&[1, 0])).unwrap();
        assert!(w.degenerate);
        assert!(cone_meets(&w, &Polytope::point(pt(&[9, 9]))).unwrap());
        assert!(!cone_meets(&w, &Polytope::empty(2)).unwrap());
    }
}
