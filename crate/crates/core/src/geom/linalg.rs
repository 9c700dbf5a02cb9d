//! Exact Gaussian elimination and affine hulls.

use num_traits::{One, Zero};

use super::rational::{dot, Rational, RationalPoint};

pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a · x = b`; returns one solution and a nullspace basis, or `None`
/// when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<(Vec<Rational>, Matrix)> {
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some((x, nullspace(a, ncols)))
}

/// Inverse of a square matrix, if nonsingular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Affine hull of a nonempty point set, in a form that supports exact
/// projection to and lifting from intrinsic coordinates.
#[derive(Debug, Clone)]
pub struct AffineHull {
    pub origin: RationalPoint,
    /// Direction basis in reduced row echelon form.
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

impl AffineHull {
    pub fn of(points: &[RationalPoint]) -> AffineHull {
        let origin = points[0].clone();
        let n = origin.dim();
        let mut basis: Matrix = points[1..]
            .iter()
            .map(|p| (p - &origin).into_coords())
            .collect();
        let pivots = rref(&mut basis, n);
        AffineHull { origin, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.origin.dim()
    }

    /// Intrinsic coordinates of a point assumed to lie in the hull.
    pub fn project(&self, p: &RationalPoint) -> Vec<Rational> {
        self.pivots
            .iter()
            .map(|&c| &p.coords()[c] - &self.origin.coords()[c])
            .collect()
    }

    pub fn lift(&self, t: &[Rational]) -> RationalPoint {
        let mut x = self.origin.coords().to_vec();
        for (ti, row) in t.iter().zip(&self.basis) {
            for (xv, rv) in x.iter_mut().zip(row) {
                *xv += ti * rv;
            }
        }
        RationalPoint::new(x)
    }

    /// Equalities `u · x = c` cutting out the hull.
    pub fn equalities(&self) -> Vec<(Vec<Rational>, Rational)> {
        nullspace(&self.basis, self.ambient())
            .into_iter()
            .map(|u| {
                let c = dot(&u, self.origin.coords());
                (u, c)
            })
            .collect()
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.equalities()
            .iter()
            .all(|(u, c)| &dot(u, p.coords()) == c)
    }
}
