//! Exhaustive searches in small finite lattices.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::{FiniteError, FiniteLattice};
use crate::term::Identity;

pub const MAX_SEARCH: usize = 60;

fn guard(l: &FiniteLattice) -> Result<(), FiniteError> {
    if l.len() > MAX_SEARCH {
        Err(FiniteError::GuardExceeded { what: "lattice", size: l.len(), limit: MAX_SEARCH })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MkEmbedding {
    pub bottom: usize,
    pub top: usize,
    pub atoms: Vec<usize>,
}

/// Elements `0' < y_1..y_k < 1'` with all pairwise meets `0'` and joins `1'`.
pub fn find_mk(l: &FiniteLattice, k: usize) -> Result<Option<MkEmbedding>, FiniteError> {
    guard(l)?;
    assert!(k >= 3, "M_k search needs k >= 3");
    let n = l.len();
    for bottom in 0..n {
        for top in 0..n {
            if bottom == top || !l.le(bottom, top) {
                continue;
            }
            let mid: Vec<usize> = (0..n)
                .filter(|&y| y != bottom && y != top && l.le(bottom, y) && l.le(y, top))
                .collect();
            let ok = |a: usize, b: usize| l.m(a, b) == bottom && l.j(a, b) == top;
            let mut clique = Vec::new();
            if extend_clique(&mid, 0, k, &ok, &mut clique) {
                return Ok(Some(MkEmbedding { bottom, top, atoms: clique }));
            }
        }
    }
    Ok(None)
}

fn extend_clique(
    cands: &[usize],
    from: usize,
    k: usize,
    ok: &impl Fn(usize, usize) -> bool,
    clique: &mut Vec<usize>,
) -> bool {
    if clique.len() == k {
        return true;
    }
    for i in from..cands.len() {
        let c = cands[i];
        if clique.iter().all(|&d| ok(c, d)) {
            clique.push(c);
            if extend_clique(cands, i + 1, k, ok, clique) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// A tuple `(x, y_1..y_{n+1})` violating `n`-join semidistributivity, if any.
pub fn njsd_failure(l: &FiniteLattice, n: usize) -> Result<Option<Vec<usize>>, FiniteError> {
    guard(l)?;
    let size = l.len();
    let found = (0..size).into_par_iter().find_map_first(|x| {
        (0..size).combinations_with_replacement(n + 1).find_map(|ys| {
            let j0 = l.j(x, ys[0]);
            if ys[1..].iter().any(|&y| l.j(x, y) != j0) {
                return None;
            }
            let acc = ys
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| ys[i + 1..].iter().map(move |&b| (a, b)))
                .fold(x, |acc, (a, b)| l.j(acc, l.m(a, b)));
            (acc != j0).then(|| std::iter::once(x).chain(ys).collect())
        })
    });
    Ok(found)
}

pub fn is_njsd(l: &FiniteLattice, n: usize) -> Result<bool, FiniteError> {
    Ok(njsd_failure(l, n)?.is_none())
}

pub fn nmsd_failure(l: &FiniteLattice, n: usize) -> Result<Option<Vec<usize>>, FiniteError> {
    njsd_failure(&l.dual(), n)
}

pub fn is_nmsd(l: &FiniteLattice, n: usize) -> Result<bool, FiniteError> {
    Ok(nmsd_failure(l, n)?.is_none())
}

/// A tuple `(x, y_1..y_{n+1})` at which `D_n` fails, if any. The search runs
/// over multisets of `y`s since the identity is symmetric in them.
pub fn dn_failure(l: &FiniteLattice, n: usize) -> Result<Option<Vec<usize>>, FiniteError> {
    guard(l)?;
    let size = l.len();
    let bottom = l.bottom_index();
    let found = (0..size).into_par_iter().find_map_first(|x| {
        let mut prefix = vec![bottom; n + 2];
        let mut suffix = vec![bottom; n + 2];
        (0..size).combinations_with_replacement(n + 1).find_map(|ys| {
            for i in 0..=n {
                prefix[i + 1] = l.j(prefix[i], ys[i]);
                suffix[n - i] = l.j(suffix[n + 1 - i], ys[n - i]);
            }
            let lhs = l.m(x, prefix[n + 1]);
            let rhs = (0..=n).fold(bottom, |acc, i| l.j(acc, l.m(x, l.j(prefix[i], suffix[i + 1]))));
            (lhs != rhs).then(|| std::iter::once(x).chain(ys).collect())
        })
    });
    Ok(found)
}

/// Largest number of assignments `identity_failure` will enumerate.
pub const MAX_ASSIGNMENTS: usize = 5_000_000;

/// The first assignment (in lexicographic order of indices over the free
/// variables) at which `id` fails.
pub fn identity_failure(
    l: &FiniteLattice,
    id: &Identity,
) -> Result<Option<HashMap<String, usize>>, FiniteError> {
    let k = id.free_vars.len();
    let total = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(l.len()));
    match total {
        Some(t) if t <= MAX_ASSIGNMENTS => {}
        _ => {
            return Err(FiniteError::GuardExceeded {
                what: "assignment space",
                size: total.unwrap_or(usize::MAX),
                limit: MAX_ASSIGNMENTS,
            })
        }
    }
    let t = total.expect("checked above");
    let found = (0..t).into_par_iter().find_first(|&code| {
        let env = decode(code, &id.free_vars, l.len());
        let report = crate::term::check(id, l, &env).expect("all variables assigned");
        report.verdict == crate::term::Verdict::Fails
    });
    Ok(found.map(|code| decode(code, &id.free_vars, l.len())))
}

fn decode(mut code: usize, vars: &[String], base: usize) -> HashMap<String, usize> {
    let mut env = HashMap::new();
    for v in vars.iter().rev() {
        env.insert(v.clone(), code % base);
        code /= base;
    }
    env
}
