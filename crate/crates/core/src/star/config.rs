//! Ray configurations through the origin and their circuits.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::ext::{ExtRational, Finite, Inf};
use crate::geom::linalg::{nullspace, rank};
use crate::geom::lp::{maximize, LpOutcome};
use crate::geom::{format_rational, Rational, RationalPoint};

pub const MAX_RAYS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("{0} rays exceed the limit of {MAX_RAYS}")]
    GuardExceeded(usize),
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("rays {0} and {1} point in the same direction")]
    ParallelRays(usize, usize),
    #[error("ray {index} has dimension {found}, expected {expected}")]
    Dimension { index: usize, expected: usize, found: usize },
    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("entry {0} is below 1")]
    BelowOne(usize),
    #[error("closure did not converge within {0} repairs")]
    NoConvergence(usize),
}

/// A minimal linearly dependent subfamily with `Σ c_i p_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub members: Vec<usize>,
    pub coefficients: Vec<Rational>,
    /// Position in `members` of the single coefficient whose sign opposes
    /// all the others.
    pub distinguished: Option<usize>,
}

impl Circuit {
    pub fn is_flagged(&self) -> bool {
        self.distinguished.is_some()
    }

    /// Ray index `j` and positive weights `w_i` with `a_j ≤ Σ w_i a_i`.
    pub fn inequality(&self) -> Option<(usize, Vec<(usize, Rational)>)> {
        let d = self.distinguished?;
        let cj = &self.coefficients[d];
        let rest = self
            .members
            .iter()
            .zip(&self.coefficients)
            .enumerate()
            .filter(|(k, _)| *k != d)
            .map(|(_, (&i, c))| (i, -(c / cj)))
            .collect();
        Some((self.members[d], rest))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CircuitReport {
    pub members: Vec<usize>,
    pub coefficients: Vec<String>,
    pub flagged: bool,
    pub distinguished: Option<usize>,
}

impl From<&Circuit> for CircuitReport {
    fn from(c: &Circuit) -> Self {
        CircuitReport {
            members: c.members.iter().map(|i| i + 1).collect(),
            coefficients: c.coefficients.iter().map(format_rational).collect(),
            flagged: c.is_flagged(),
            distinguished: c.distinguished.map(|d| c.members[d] + 1),
        }
    }
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// All circuits of `points`, ordered by size then lexicographically.
pub fn circuits(points: &[RationalPoint]) -> Result<Vec<Circuit>, StarError> {
    if points.len() > MAX_RAYS {
        return Err(StarError::GuardExceeded(points.len()));
    }
    let dim = points.first().map_or(0, RationalPoint::dim);
    for (i, p) in points.iter().enumerate() {
        if p.dim() != dim {
            return Err(StarError::Dimension { index: i, expected: dim, found: p.dim() });
        }
        if p.is_origin() {
            return Err(StarError::ZeroRay(i));
        }
    }
    let mut out = Vec::new();
    for k in 2..=(dim + 1).min(points.len()) {
        for members in (0..points.len()).combinations(k) {
            let rows: Vec<Vec<Rational>> = (0..dim)
                .map(|r| members.iter().map(|&i| points[i].coords()[r].clone()).collect())
                .collect();
            if rank(&rows, k) != k - 1 {
                continue;
            }
            let null = nullspace(&rows, k);
            let v = &null[0];
            if v.iter().any(Zero::is_zero) {
                continue;
            }
            let lead = v[0].clone();
            let coefficients: Vec<Rational> = v.iter().map(|c| c / &lead).collect();
            if k == 2 && coefficients[1].is_negative() {
                return Err(StarError::ParallelRays(members[0], members[1]));
            }
            let distinguished = if k >= 3 {
                let signs: Vec<i8> = coefficients.iter().map(sign).collect();
                let pos = signs.iter().filter(|&&s| s > 0).count();
                if pos == 1 {
                    signs.iter().position(|&s| s > 0)
                } else if pos == k - 1 {
                    signs.iter().position(|&s| s < 0)
                } else {
                    None
                }
            } else {
                None
            };
            out.push(Circuit { members, coefficients, distinguished });
        }
    }
    Ok(out)
}

/// Rays `p_1..p_m` with their circuits. A star element is a vector of inverse
/// lengths `a_i ∈ [1,∞]` standing for `⋃ [0, p_i / a_i]`.
#[derive(Debug, Clone)]
pub struct StarConfig {
    pub dim: usize,
    pub rays: Vec<RationalPoint>,
    pub circuits: Vec<Circuit>,
    inequalities: Vec<(usize, Vec<(usize, Rational)>)>,
}

impl StarConfig {
    pub fn new(rays: Vec<RationalPoint>) -> Result<StarConfig, StarError> {
        let circuits = circuits(&rays)?;
        let inequalities = circuits.iter().filter_map(Circuit::inequality).collect();
        Ok(StarConfig {
            dim: rays.first().map_or(0, RationalPoint::dim),
            rays,
            circuits,
            inequalities,
        })
    }

    pub fn from_ints(rays: &[&[i64]]) -> Result<StarConfig, StarError> {
        StarConfig::new(rays.iter().map(|r| RationalPoint::from_ints(r)).collect())
    }

    /// `p1=(1,0), p2=(1,1), p3=(0,1)` and their negatives, in angular order.
    pub fn hexagon() -> StarConfig {
        StarConfig::from_ints(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]])
            .expect("valid rays")
    }

    /// The octagon `(±2,±1),(±1,±2)` in angular order.
    pub fn octagon() -> StarConfig {
        StarConfig::from_ints(&[
            &[2, 1],
            &[1, 2],
            &[-1, 2],
            &[-2, 1],
            &[-2, -1],
            &[-1, -2],
            &[1, -2],
            &[2, -1],
        ])
        .expect("valid rays")
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn flagged(&self) -> impl Iterator<Item = &Circuit> {
        self.circuits.iter().filter(|c| c.is_flagged())
    }

    pub fn iteration_cap(&self) -> usize {
        (self.inequalities.len() * self.len() * 16).max(1)
    }

    /// `a_j ≤ Σ w_i a_i` pairs from the flagged circuits.
    pub fn inequalities(&self) -> &[(usize, Vec<(usize, Rational)>)] {
        &self.inequalities
    }

    pub fn check_vector(&self, a: &[ExtRational]) -> Result<(), StarError> {
        if a.len() != self.len() {
            return Err(StarError::WrongLength { expected: self.len(), found: a.len() });
        }
        let one = ExtRational::int(1);
        match a.iter().position(|x| *x < one) {
            Some(i) => Err(StarError::BelowOne(i)),
            None => Ok(()),
        }
    }

    /// Whether every flagged-circuit inequality holds (up to the bound `a_j ≥ 1`).
    pub fn is_convex(&self, a: &[ExtRational]) -> bool {
        self.inequalities.iter().all(|(j, w)| a[*j] <= repaired(&bound(w, a)))
    }

    /// Smallest relatively convex star containing `a`.
    pub fn closure(&self, a: &[ExtRational]) -> Result<Vec<ExtRational>, StarError> {
        self.check_vector(a)?;
        let mut a = a.to_vec();
        let cap = self.iteration_cap();
        let mut repairs = 0;
        loop {
            let mut changed = false;
            for (j, w) in &self.inequalities {
                let b = repaired(&bound(w, &a));
                if a[*j] > b {
                    if repairs == cap {
                        return Err(StarError::NoConvergence(cap));
                    }
                    a[*j] = b;
                    repairs += 1;
                    changed = true;
                }
            }
            if !changed {
                return Ok(a);
            }
        }
    }

    pub fn meet(&self, u: &[ExtRational], v: &[ExtRational]) -> Vec<ExtRational> {
        u.iter().zip(v).map(|(x, y)| x.clone().max(y.clone())).collect()
    }

    pub fn join(&self, u: &[ExtRational], v: &[ExtRational]) -> Result<Vec<ExtRational>, StarError> {
        let m: Vec<ExtRational> = u.iter().zip(v).map(|(x, y)| x.clone().min(y.clone())).collect();
        self.closure(&m)
    }

    /// The largest `t ≤ 1` with `t p_j` in the convex hull of the star,
    /// found by linear programming.
    pub fn hull_extent(&self, a: &[ExtRational], j: usize) -> Rational {
        let tips: Vec<RationalPoint> = self
            .rays
            .iter()
            .zip(a)
            .filter_map(|(p, x)| x.finite().map(|q| p.scale(&q.recip())))
            .collect();
        let k = tips.len();
        let n = k + 2;
        let mut rows: Vec<Vec<Rational>> = (0..self.dim)
            .map(|r| {
                let mut row: Vec<Rational> = tips.iter().map(|t| t.coords()[r].clone()).collect();
                row.push(-self.rays[j].coords()[r].clone());
                row.push(Rational::zero());
                row
            })
            .collect();
        let mut sum = vec![Rational::one(); n];
        sum[k] = Rational::zero();
        rows.push(sum);
        let mut b = vec![Rational::zero(); self.dim];
        b.push(Rational::one());
        let mut c = vec![Rational::zero(); n];
        c[k] = Rational::one();
        match maximize(&c, &rows, &b) {
            LpOutcome::Optimal { value, .. } => value.min(Rational::one()),
            _ => unreachable!("the origin is feasible and the hull is bounded"),
        }
    }

    /// `conv(star) ∩ rays`, computed ray by ray with linear programming.
    pub fn geometric_closure(&self, a: &[ExtRational]) -> Vec<ExtRational> {
        (0..self.len())
            .map(|j| {
                let t = self.hull_extent(a, j);
                if t.is_zero() {
                    Inf
                } else {
                    Finite(t.recip())
                }
            })
            .collect()
    }
}

fn bound(w: &[(usize, Rational)], a: &[ExtRational]) -> ExtRational {
    w.iter()
        .fold(ExtRational::int(0), |acc, (i, c)| &acc + &a[*i].scale(c))
}

fn repaired(b: &ExtRational) -> ExtRational {
    b.clone().max(ExtRational::int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::int;

    #[test]
    fn three_rays_in_the_plane() {
        let cs = circuits(&[
            RationalPoint::from_ints(&[1, 0]),
            RationalPoint::from_ints(&[1, 1]),
            RationalPoint::from_ints(&[0, 1]),
        ])
        .unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].members, vec![0, 1, 2]);
        assert_eq!(cs[0].coefficients, vec![int(1), int(-1), int(1)]);
        assert_eq!(cs[0].distinguished, Some(1));
    }

    #[test]
    fn quadrilateral_cone() {
        let cs = circuits(&[
            RationalPoint::from_ints(&[1, 0, 1]),
            RationalPoint::from_ints(&[0, 1, 1]),
            RationalPoint::from_ints(&[-1, 0, 1]),
            RationalPoint::from_ints(&[0, -1, 1]),
        ])
        .unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].members.len(), 4);
        assert!(!cs[0].is_flagged());
    }

    #[test]
    fn rejects_bad_rays() {
        let p = |v: &[i64]| RationalPoint::from_ints(v);
        assert_eq!(circuits(&[p(&[1, 0]), p(&[2, 0])]), Err(StarError::ParallelRays(0, 1)));
        assert_eq!(circuits(&[p(&[1, 0]), p(&[0, 0])]), Err(StarError::ZeroRay(1)));
        assert!(circuits(&[p(&[1, 0]), p(&[-1, 0])]).is_ok());
        let many: Vec<RationalPoint> = (0..13).map(|i| p(&[1, i])).collect();
        assert_eq!(circuits(&many), Err(StarError::GuardExceeded(13)));
    }

    #[test]
    fn hexagon_has_six_neighbour_conditions() {
        let h = StarConfig::hexagon();
        let mut conds: Vec<(usize, Vec<usize>)> = h
            .inequalities()
            .iter()
            .map(|(j, w)| {
                assert!(w.iter().all(|(_, c)| *c == int(1)));
                let mut idx: Vec<usize> = w.iter().map(|(i, _)| *i).collect();
                idx.sort();
                (*j, idx)
            })
            .collect();
        conds.sort();
        let expected: Vec<(usize, Vec<usize>)> = (0..6)
            .map(|j| {
                let mut n = vec![(j + 5) % 6, (j + 1) % 6];
                n.sort();
                (j, n)
            })
            .collect();
        assert_eq!(conds, expected);
    }

    #[test]
    fn closure_matches_hull_on_hexagon() {
        let h = StarConfig::hexagon();
        let a = vec![
            ExtRational::int(1),
            ExtRational::Inf,
            ExtRational::int(1),
            ExtRational::Inf,
            ExtRational::Inf,
            ExtRational::Inf,
        ];
        let c = h.closure(&a).unwrap();
        assert_eq!(c[1], ExtRational::int(2));
        assert_eq!(c, h.geometric_closure(&a));
        assert!(h.is_convex(&c));
    }
}
