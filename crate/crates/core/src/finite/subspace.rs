//! Subspaces of `Q^B` spanned by difference vectors `e_a − e_b`, and the
//! correspondence with partitions of `B`.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use super::lattice::{FiniteError, FiniteLattice};
use super::partition::{partition_lattice, Partition};
use crate::geom::linalg::{rank, rref};
use crate::geom::{format_rational, Rational};

pub const MAX_SUBSPACE_BASE: usize = 5;

/// A subspace of `Q^n` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffSubspace {
    n: usize,
    rows: Vec<Vec<Rational>>,
}

/// `e_a − e_b` in `Q^n`.
pub fn difference(n: usize, a: usize, b: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[a] += Rational::one();
    v[b] -= Rational::one();
    v
}

/// The set `S` of differences `e_a − e_b` with `a < b`.
pub fn difference_set(n: usize) -> Vec<Vec<Rational>> {
    (0..n).tuple_combinations().map(|(a, b)| difference(n, a, b)).collect()
}

impl DiffSubspace {
    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> DiffSubspace {
        let mut rows = vectors.to_vec();
        rref(&mut rows, n);
        DiffSubspace { n, rows }
    }

    pub fn zero(n: usize) -> DiffSubspace {
        DiffSubspace { n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        rank(&m, self.n) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &DiffSubspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &DiffSubspace) -> DiffSubspace {
        let all: Vec<Vec<Rational>> = self.rows.iter().chain(&other.rows).cloned().collect();
        DiffSubspace::span(self.n, &all)
    }

    /// Span of the members of `S` lying in both subspaces.
    pub fn rel_meet(&self, other: &DiffSubspace) -> DiffSubspace {
        let common: Vec<Vec<Rational>> = difference_set(self.n)
            .into_iter()
            .filter(|v| self.contains(v) && other.contains(v))
            .collect();
        DiffSubspace::span(self.n, &common)
    }

    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(format_rational).join(",")))
            .collect();
        format!("<{}>", rows.join(","))
    }
}

/// The span of all `e_a − e_b` with `a`, `b` in a common block.
pub fn phi(r: &Partition) -> DiffSubspace {
    let n = r.size();
    let vs: Vec<Vec<Rational>> = (0..n)
        .tuple_combinations()
        .filter(|&(a, b)| r.related(a, b))
        .map(|(a, b)| difference(n, a, b))
        .collect();
    DiffSubspace::span(n, &vs)
}

/// `a ~ b` iff `e_a − e_b ∈ W`.
pub fn psi(w: &DiffSubspace) -> Partition {
    let n = w.n;
    let mut labels: Vec<usize> = (0..n).collect();
    for b in 0..n {
        if let Some(a) = (0..b).find(|&a| w.contains(&difference(n, a, b))) {
            labels[b] = labels[a];
        }
    }
    Partition::from_labels(&labels)
}

/// Every subspace spanned by a subset of `S`, under sum and the relative meet.
pub fn rel_subspace_lattice(n: usize) -> Result<(FiniteLattice, Vec<DiffSubspace>), FiniteError> {
    if n > MAX_SUBSPACE_BASE {
        return Err(FiniteError::GuardExceeded { what: "base set", size: n, limit: MAX_SUBSPACE_BASE });
    }
    let s = difference_set(n);
    let mut spaces: Vec<DiffSubspace> = (0..1usize << s.len())
        .map(|mask| {
            let chosen: Vec<Vec<Rational>> = s
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            DiffSubspace::span(n, &chosen)
        })
        .collect();
    spaces.sort();
    spaces.dedup();
    let index = |w: &DiffSubspace| spaces.binary_search(w).expect("closed under the operations");
    let labels = spaces.iter().map(DiffSubspace::label).collect();
    let l = FiniteLattice::from_ops(
        labels,
        |a, b| index(&spaces[a].rel_meet(&spaces[b])),
        |a, b| index(&spaces[a].join(&spaces[b])),
    )?;
    Ok((l, spaces))
}

#[derive(Debug, Clone, Serialize)]
pub struct IsomorphismReport {
    pub base_size: usize,
    pub partitions: usize,
    pub subspaces: usize,
    pub psi_phi_identity: bool,
    pub phi_psi_identity: bool,
    pub isotone: bool,
    pub tables_match: bool,
    pub isomorphic: bool,
}

/// Compares `Equiv(B)` and the subspace lattice through `φ` and `ψ`.
pub fn verify_isomorphism(n: usize) -> Result<IsomorphismReport, FiniteError> {
    let (pl, parts) = partition_lattice(n)?;
    let (sl, spaces) = rel_subspace_lattice(n)?;
    let psi_phi = parts.iter().all(|r| psi(&phi(r)) == *r);
    let phi_psi = spaces.iter().all(|w| phi(&psi(w)) == *w);
    let f: Vec<usize> = parts
        .iter()
        .map(|r| spaces.binary_search(&phi(r)).unwrap_or(usize::MAX))
        .collect();
    let total = f.iter().all(|&i| i < spaces.len());
    let isotone = total
        && (0..parts.len()).all(|a| (0..parts.len()).all(|b| pl.le(a, b) == sl.le(f[a], f[b])));
    let tables_match = total && pl.is_isomorphism(&sl, &f);
    Ok(IsomorphismReport {
        base_size: n,
        partitions: parts.len(),
        subspaces: spaces.len(),
        psi_phi_identity: psi_phi,
        phi_psi_identity: phi_psi,
        isotone,
        tables_match,
        isomorphic: psi_phi && phi_psi && isotone && tables_match,
    })
}
