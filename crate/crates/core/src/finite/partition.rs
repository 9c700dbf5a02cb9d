use std::fmt;

use super::lattice::{FiniteError, FiniteLattice};

pub const MAX_PARTITION_BASE: usize = 7;

/// A partition of `{0,..,n-1}` as a restricted growth string: block labels
/// numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match map.iter().find(|(k, _)| k == l) {
                Some(&(_, v)) => v,
                None => {
                    map.push((*l, map.len()));
                    map.len() - 1
                }
            })
            .collect();
        Partition(rgs)
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition, FiniteError> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(FiniteError::Data("empty block".into()));
            }
            for &i in block {
                if i >= n || label[i] != usize::MAX {
                    return Err(FiniteError::Data(format!("element {i} is out of range or repeated")));
                }
                label[i] = b;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(FiniteError::Data("blocks do not cover the base set".into()));
        }
        Ok(Partition::from_labels(&label))
    }

    pub fn discrete(n: usize) -> Partition {
        Partition((0..n).collect())
    }

    pub fn indiscrete(n: usize) -> Partition {
        Partition(vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rgs(&self) -> &[usize] {
        &self.0
    }

    pub fn num_blocks(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.0.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.0[a] == self.0[b]
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.size()).all(|i| (0..i).all(|j| !self.related(i, j) || other.related(i, j)))
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<usize> = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * self.size() + b)
            .collect();
        Partition::from_labels(&pairs)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for part in [self, other] {
            for i in 0..n {
                for j in 0..i {
                    if part.related(i, j) {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Partition::from_labels(&roots)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(""))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// All partitions of an `n`-set, in lexicographic order of their growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            out.push(Partition(prefix.clone()));
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            extend(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, n, &mut out);
    out
}

/// `Equiv(B)` for `|B| = n`, with its elements.
pub fn partition_lattice(n: usize) -> Result<(FiniteLattice, Vec<Partition>), FiniteError> {
    if n > MAX_PARTITION_BASE {
        return Err(FiniteError::GuardExceeded { what: "base set", size: n, limit: MAX_PARTITION_BASE });
    }
    let parts = all_partitions(n);
    let index = |p: &Partition| parts.binary_search(p).expect("closed under the operations");
    let labels = parts.iter().map(ToString::to_string).collect();
    let l = FiniteLattice::from_ops(
        labels,
        |a, b| index(&parts[a].meet(&parts[b])),
        |a, b| index(&parts[a].join(&parts[b])),
    )?;
    Ok((l, parts))
}
