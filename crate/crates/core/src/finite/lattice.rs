use serde_json::{json, Value};
use thiserror::Error;

use crate::term::LatticeHandle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("order relation is not {0}")]
    NotPartialOrder(&'static str),
    #[error("elements {0} and {1} have no meet")]
    NoMeet(String, String),
    #[error("elements {0} and {1} have no join")]
    NoJoin(String, String),
    #[error("lattice axiom violated: {0}")]
    Axiom(String),
    #[error("{what} has size {size}; the limit is {limit}")]
    GuardExceeded { what: &'static str, size: usize, limit: usize },
    #[error("{0}")]
    Data(String),
}

/// A finite lattice on indices `0..n`, with full order, meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl FiniteLattice {
    /// Builds the lattice from its order, computing meets and joins.
    pub fn from_leq(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice, FiniteError> {
        let n = labels.len();
        if n == 0 {
            return Err(FiniteError::Empty);
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(FiniteError::Data("order matrix has the wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(FiniteError::NotPartialOrder("reflexive"));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(FiniteError::NotPartialOrder("antisymmetric"));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(FiniteError::NotPartialOrder("transitive"));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, lower: bool| -> Option<usize> {
            let rel = |x: usize, y: usize| if lower { leq[x][y] } else { leq[y][x] };
            let cands: Vec<usize> = (0..n).filter(|&c| rel(c, a) && rel(c, b)).collect();
            cands.iter().copied().find(|&c| cands.iter().all(|&d| rel(d, c)))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(a, b, true)
                    .ok_or_else(|| FiniteError::NoMeet(labels[a].clone(), labels[b].clone()))?;
                join[a][b] = bound(a, b, false)
                    .ok_or_else(|| FiniteError::NoJoin(labels[a].clone(), labels[b].clone()))?;
            }
        }
        let l = FiniteLattice { labels, leq, meet, join };
        l.verify_axioms()?;
        Ok(l)
    }

    /// Builds the lattice from operations on indices, deriving the order from
    /// the meet.
    pub fn from_ops(
        labels: Vec<String>,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteLattice, FiniteError> {
        let n = labels.len();
        if n == 0 {
            return Err(FiniteError::Empty);
        }
        let meet: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| meet(a, b)).collect()).collect();
        let join: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| join(a, b)).collect()).collect();
        if meet.iter().chain(&join).flatten().any(|&c| c >= n) {
            return Err(FiniteError::Data("operation result out of range".into()));
        }
        let leq = (0..n).map(|a| (0..n).map(|b| meet[a][b] == a).collect()).collect();
        let l = FiniteLattice { labels, leq, meet, join };
        l.verify_axioms()?;
        Ok(l)
    }

    /// Exhaustive check of the lattice laws and of agreement with the order.
    pub fn verify_axioms(&self) -> Result<(), FiniteError> {
        let n = self.len();
        let name = |i: usize| &self.labels[i];
        for a in 0..n {
            if self.meet[a][a] != a || self.join[a][a] != a {
                return Err(FiniteError::Axiom(format!("idempotence at {}", name(a))));
            }
            for b in 0..n {
                if self.meet[a][b] != self.meet[b][a] || self.join[a][b] != self.join[b][a] {
                    return Err(FiniteError::Axiom(format!("commutativity at {}, {}", name(a), name(b))));
                }
                if self.meet[a][self.join[a][b]] != a || self.join[a][self.meet[a][b]] != a {
                    return Err(FiniteError::Axiom(format!("absorption at {}, {}", name(a), name(b))));
                }
                if self.leq[a][b] != (self.meet[a][b] == a) || self.leq[a][b] != (self.join[a][b] == b) {
                    return Err(FiniteError::Axiom(format!("order mismatch at {}, {}", name(a), name(b))));
                }
                let (ma, ja) = (&self.meet[a], &self.join[a]);
                for c in 0..n {
                    if self.meet[ma[b]][c] != ma[self.meet[b][c]]
                        || self.join[ja[b]][c] != ja[self.join[b][c]]
                    {
                        return Err(FiniteError::Axiom(format!(
                            "associativity at {}, {}, {}",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn chain(n: usize) -> FiniteLattice {
        FiniteLattice::from_ops((0..n).map(|i| i.to_string()).collect(), usize::min, usize::max)
            .expect("a chain is a lattice")
    }

    /// Subsets of a `k`-set.
    pub fn boolean(k: usize) -> FiniteLattice {
        let labels = (0..1usize << k).map(|m| format!("{m:0k$b}")).collect();
        FiniteLattice::from_ops(labels, |a, b| a & b, |a, b| a | b).expect("a Boolean algebra is a lattice")
    }

    /// Bottom `0`, atoms `1..=k`, top `k+1`.
    pub fn m_k(k: usize) -> FiniteLattice {
        let top = k + 1;
        let mut labels = vec!["0".to_string()];
        labels.extend((1..=k).map(|i| format!("y{i}")));
        labels.push("1".into());
        let leq = (0..=top)
            .map(|a| (0..=top).map(|b| a == b || a == 0 || b == top).collect())
            .collect();
        FiniteLattice::from_leq(labels, leq).expect("M_k is a lattice")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn j(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet_table(&self) -> &[Vec<usize>] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Vec<usize>] {
        &self.join
    }

    pub fn bottom_index(&self) -> usize {
        (0..self.len()).fold(0, |acc, i| self.meet[acc][i])
    }

    pub fn top_index(&self) -> usize {
        (0..self.len()).fold(0, |acc, i| self.join[acc][i])
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.len()).filter(|&b| b != a && self.leq[b][a]).collect();
        below
            .iter()
            .copied()
            .filter(|&b| !below.iter().any(|&c| c != b && self.leq[b][c]))
            .collect()
    }

    /// Not the bottom and not a join of two strictly smaller elements.
    pub fn is_join_irreducible(&self, a: usize) -> bool {
        self.lower_covers(a).len() == 1
    }

    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        FiniteLattice {
            labels: self.labels.clone(),
            leq: (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect(),
            meet: self.join.clone(),
            join: self.meet.clone(),
        }
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom_index(), |acc, i| self.join[acc][i])
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top_index(), |acc, i| self.meet[acc][i])
    }

    /// Whether `f` is a bijection onto `other` carrying meets and joins.
    pub fn is_isomorphism(&self, other: &FiniteLattice, f: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || f.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in f {
            if x >= n || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        (0..n).all(|a| {
            (0..n).all(|b| {
                other.meet[f[a]][f[b]] == f[self.meet[a][b]] && other.join[f[a]][f[b]] == f[self.join[a][b]]
            })
        })
    }

    /// Hasse diagram as `{"elements": [...], "covers": [[lower, upper], ...]}`.
    pub fn to_json(&self) -> Value {
        let covers: Vec<Value> = (0..self.len())
            .flat_map(|a| {
                self.lower_covers(a)
                    .into_iter()
                    .map(move |b| json!([self.labels[b], self.labels[a]]))
            })
            .collect();
        json!({"elements": self.labels, "covers": covers})
    }

    /// Parses `{"elements": [...], "leq": [[a, b], ...]}`; the order is the
    /// reflexive transitive closure of the listed pairs.
    pub fn from_json(v: &Value) -> Result<FiniteLattice, FiniteError> {
        let bad = |m: &str| FiniteError::Data(m.to_string());
        let labels: Vec<String> = v
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("elements: expected an array of names"))?
            .iter()
            .enumerate()
            .map(|(i, e)| {
                e.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad(&format!("elements[{i}]: expected a string")))
            })
            .collect::<Result<_, _>>()?;
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let pairs = v
            .get("leq")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("leq: expected an array of pairs"))?;
        for (k, p) in pairs.iter().enumerate() {
            let idx = |j: usize| -> Result<usize, FiniteError> {
                let name = p
                    .get(j)
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad(&format!("leq[{k}][{j}]: expected an element name")))?;
                labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| bad(&format!("leq[{k}][{j}]: unknown element {name:?}")))
            };
            let (a, b) = (idx(0)?, idx(1)?);
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    for b in 0..n {
                        if leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        FiniteLattice::from_leq(labels, leq)
    }
}

impl LatticeHandle for FiniteLattice {
    type Elem = usize;

    fn selector(&self) -> String {
        format!("finite[{}]", self.len())
    }
    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.meet[*a][*b]
    }
    fn join(&self, a: &usize, b: &usize) -> usize {
        self.join[*a][*b]
    }
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.leq[*a][*b]
    }
    fn bottom(&self) -> Option<usize> {
        Some(self.bottom_index())
    }
    fn validate(&self, e: &usize) -> Result<(), String> {
        if *e < self.len() {
            Ok(())
        } else {
            Err(format!("index {e} out of range"))
        }
    }
    fn describe(&self, e: &usize) -> Value {
        json!(self.labels[*e])
    }
}
