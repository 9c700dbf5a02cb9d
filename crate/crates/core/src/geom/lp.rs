//! Two-phase rational simplex with Bland's rule.
//!
//! Problems are in standard form: maximize `c·x` subject to `A x = b`,
//! `x >= 0`.

use num_traits::{Signed, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pr = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pr) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    fn set_objective(&mut self, c: &[Rational]) {
        let mut obj: Vec<Rational> = (0..=self.width)
            .map(|j| c.get(j).cloned().unwrap_or_else(Rational::zero))
            .collect();
        obj[self.width] = Rational::zero();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = c.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o -= &cb * v;
            }
        }
        self.obj = obj;
    }

    /// Runs simplex iterations on columns `< allowed`; `false` if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn value(&self) -> Rational {
        -self.obj[self.rhs()].clone()
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < n {
                x[b] = row[self.rhs()].clone();
            }
        }
        x
    }
}

/// Phase one; returns a tableau whose basis is feasible and free of
/// artificial variables, or `None` when infeasible.
fn phase_one(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Tableau> {
    let m = a.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let neg = bi.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|v| if neg { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|j| {
            if j == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        r.push(if neg { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis: (n..n + m).collect(),
        width,
    };
    let mut c1 = vec![Rational::zero(); width];
    for v in c1.iter_mut().skip(n) {
        *v = Rational::from_integer((-1).into());
    }
    t.set_objective(&c1);
    t.optimize(width);
    if t.value().is_negative() {
        return None;
    }
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            } else {
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    Some(t)
}

/// A basic feasible solution of `A x = b, x >= 0`, if any. Its support has at
/// most `rank(A)` entries.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    phase_one(a, b, n).map(|t| t.solution(n))
}

/// Maximizes `c·x` subject to `A x = b, x >= 0`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let Some(mut t) = phase_one(a, b, n) else {
        return LpOutcome::Infeasible;
    };
    t.set_objective(c);
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        x: t.solution(n),
        value: t.value(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::{int, ratio};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![row(&[1, 2, 1, 0]), row(&[3, 1, 0, 1])];
        let b = row(&[4, 6]);
        match maximize(&row(&[1, 1, 0, 0]), &a, &b) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, ratio(14, 5));
                assert_eq!(x[0], ratio(8, 5));
                assert_eq!(x[1], ratio(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = vec![row(&[1, 1])];
        assert_eq!(maximize(&row(&[0, 0]), &a, &row(&[-1])), LpOutcome::Infeasible);
        let a = vec![row(&[1, -1])];
        assert_eq!(maximize(&row(&[1, 0]), &a, &row(&[0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        let x = feasible(&a, &row(&[1, 2]), 2).unwrap();
        assert_eq!(&x[0] + &x[1], int(1));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance.
        let a = vec![
            vec![ratio(1, 4), int(-8), int(-1), int(9), int(1), int(0), int(0)],
            vec![ratio(1, 2), int(-12), ratio(-1, 2), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        let c = vec![ratio(3, 4), int(-20), ratio(1, 2), int(-6), int(0), int(0), int(0)];
        match maximize(&c, &a, &row(&[0, 0, 1])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
