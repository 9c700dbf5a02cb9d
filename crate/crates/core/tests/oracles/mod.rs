//! Slow, independent reference computations: cofactor determinants, Cramer's
//! rule and exhaustive subset enumeration. Nothing here calls the library's
//! elimination, double description or simplex code.
#![allow(dead_code)]

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use cvxlat::geom::{Polytope, Rational, RationalPoint};
use cvxlat::star::ExtRational;

pub fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(Rational::zero(), |a, b| a + b),
    }
}

/// Unique solution of a square system, if the matrix is invertible.
pub fn cramer(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let d = det(a);
    if d.is_zero() {
        return None;
    }
    Some(
        (0..a.len())
            .map(|j| {
                let mj: Vec<Vec<Rational>> = a
                    .iter()
                    .zip(b)
                    .map(|(row, bi)| {
                        let mut r = row.clone();
                        r[j] = bi.clone();
                        r
                    })
                    .collect();
                det(&mj) / &d
            })
            .collect(),
    )
}

/// Rank as the size of the largest nonvanishing minor.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    for k in (1..=m.min(n)).rev() {
        for rs in (0..m).combinations(k) {
            for cs in (0..n).combinations(k) {
                let sub: Vec<Vec<Rational>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Columns `[p; 1]` for the given points.
fn homogeneous(points: &[&RationalPoint]) -> Vec<Vec<Rational>> {
    let d = points[0].dim();
    let mut rows: Vec<Vec<Rational>> =
        (0..d).map(|i| points.iter().map(|p| p.coords()[i].clone()).collect()).collect();
    rows.push(vec![Rational::one(); points.len()]);
    rows
}

/// Convex coefficients of `q` over an affinely independent `subset`, if `q`
/// lies in its hull.
fn barycentric(subset: &[&RationalPoint], q: &RationalPoint) -> Option<Vec<Rational>> {
    let m = homogeneous(subset);
    let mut rhs: Vec<Rational> = q.coords().to_vec();
    rhs.push(Rational::one());
    let k = subset.len();
    for rs in (0..m.len()).combinations(k) {
        let a: Vec<Vec<Rational>> = rs.iter().map(|&r| m[r].clone()).collect();
        let b: Vec<Rational> = rs.iter().map(|&r| rhs[r].clone()).collect();
        if let Some(l) = cramer(&a, &b) {
            let fits = m
                .iter()
                .zip(&rhs)
                .all(|(row, bi)| row.iter().zip(&l).map(|(x, y)| x * y).sum::<Rational>() == *bi);
            return (fits && l.iter().all(|x| !x.is_negative())).then_some(l);
        }
    }
    None
}

/// Hull membership by Carathéodory: search every subset of at most `d + 1`
/// points.
pub fn in_hull(points: &[RationalPoint], q: &RationalPoint) -> bool {
    hull_witness(points, q).is_some()
}

pub fn hull_witness(points: &[RationalPoint], q: &RationalPoint) -> Option<(Vec<usize>, Vec<Rational>)> {
    let d = q.dim();
    let pts: Vec<&RationalPoint> = points.iter().unique().collect();
    for k in 1..=(d + 1).min(pts.len()) {
        for idx in (0..pts.len()).combinations(k) {
            let sub: Vec<&RationalPoint> = idx.iter().map(|&i| pts[i]).collect();
            if let Some(l) = barycentric(&sub, q) {
                let orig = idx.iter().map(|&i| points.iter().position(|p| p == pts[i]).unwrap()).collect();
                return Some((orig, l));
            }
        }
    }
    None
}

/// Points of `points` outside the hull of the others.
pub fn extreme_points(points: &[RationalPoint]) -> Vec<RationalPoint> {
    let pts: Vec<RationalPoint> = points.iter().unique().cloned().collect();
    let mut out: Vec<RationalPoint> = pts
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<RationalPoint> =
                pts.iter().enumerate().filter(|(j, _)| j != i).map(|(_, o)| o.clone()).collect();
            others.is_empty() || !in_hull(&others, p)
        })
        .map(|(_, p)| p.clone())
        .collect();
    out.sort();
    out
}

pub fn polytope_contains(p: &Polytope, q: &RationalPoint) -> bool {
    !p.is_empty() && in_hull(p.vertices(), q)
}

/// The affine dependence of `d + 2` points with coefficients given by signed
/// maximal minors of the homogeneous matrix.
pub fn affine_dependence(points: &[RationalPoint]) -> Vec<Rational> {
    let refs: Vec<&RationalPoint> = points.iter().collect();
    let m = homogeneous(&refs);
    (0..points.len())
        .map(|j| {
            let minor: Vec<Vec<Rational>> = m
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let v = det(&minor);
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// Every split of `0..k` into two nonempty parts (first part holding 0)
/// consistent with the sign pattern of `c`.
pub fn radon_splits(c: &[Rational]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = c.len();
    (0u32..(1 << (k - 1)))
        .map(|mask| {
            let second: Vec<usize> = (1..k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let first: Vec<usize> = (0..k).filter(|i| !second.contains(i)).collect();
            (first, second)
        })
        .filter(|(a, b)| !b.is_empty() && !a.is_empty())
        .filter(|(a, b)| {
            let pos_in = |s: &[usize], sign: bool| {
                (0..k).filter(|i| if sign { c[*i].is_positive() } else { c[*i].is_negative() }).all(|i| s.contains(&i))
            };
            (pos_in(a, true) && pos_in(b, false)) || (pos_in(a, false) && pos_in(b, true))
        })
        .collect()
}

/// Largest `t >= 0` with `t·dir` in the hull of `points` (which include the
/// origin). The extreme point lies in the hull of at most `d` of the points,
/// so every such subset is tried.
pub fn ray_extent(points: &[RationalPoint], dir: &RationalPoint) -> Rational {
    let d = dir.dim();
    let mut best = Rational::zero();
    for k in 1..=d.min(points.len()) {
        for idx in (0..points.len()).combinations(k) {
            // Unknowns (t, l_1..l_k): t·dir − Σ l_i p_i = 0, Σ l_i = 1.
            let mut rows: Vec<Vec<Rational>> = (0..d)
                .map(|r| {
                    let mut row = vec![dir.coords()[r].clone()];
                    row.extend(idx.iter().map(|&i| -points[i].coords()[r].clone()));
                    row
                })
                .collect();
            let mut last = vec![Rational::zero()];
            last.extend(std::iter::repeat_n(Rational::one(), k));
            rows.push(last);
            let mut rhs = vec![Rational::zero(); d];
            rhs.push(Rational::one());
            for rs in (0..=d).combinations(k + 1) {
                let a: Vec<Vec<Rational>> = rs.iter().map(|&r| rows[r].clone()).collect();
                let b: Vec<Rational> = rs.iter().map(|&r| rhs[r].clone()).collect();
                let Some(x) = cramer(&a, &b) else { continue };
                let fits = rows
                    .iter()
                    .zip(&rhs)
                    .all(|(row, bi)| row.iter().zip(&x).map(|(u, v)| u * v).sum::<Rational>() == *bi);
                if fits && x.iter().all(|v| !v.is_negative()) && x[0] > best {
                    best = x[0].clone();
                }
                break;
            }
        }
    }
    best
}

/// Inverse lengths of `conv(star) ∩ rays` for a star given by inverse lengths
/// `a` on `rays`, each segment capped at its ray.
pub fn star_closure(rays: &[RationalPoint], a: &[ExtRational]) -> Vec<ExtRational> {
    let mut pts = vec![RationalPoint::origin(rays[0].dim())];
    pts.extend(rays.iter().zip(a).filter_map(|(p, x)| x.finite().map(|q| p.scale(&q.recip()))));
    rays.iter()
        .map(|p| {
            let t = ray_extent(&pts, p);
            if t.is_zero() {
                ExtRational::Inf
            } else {
                ExtRational::Finite(t.min(Rational::one()).recip())
            }
        })
        .collect()
}
