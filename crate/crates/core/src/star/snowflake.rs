//! The snowflake lattice in arithmetic form: triples `[a1,a2,a3]` with
//! entries in `[1,∞]` obeying the three triangle inequalities.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::ext::{format_vector, parse_vector, ExtRational, Inf};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Snowflake(pub [ExtRational; 3]);

impl Snowflake {
    /// The pieces `S1`, `S2`, `S3`.
    pub fn piece(i: usize) -> Snowflake {
        let mut a = [Inf, Inf, Inf];
        a[i] = ExtRational::int(1);
        Snowflake(a)
    }

    pub fn new(a: [ExtRational; 3]) -> Result<Snowflake, String> {
        let s = Snowflake(a);
        if s.is_valid() {
            Ok(s)
        } else {
            Err(format!("{s} violates the entry or triangle conditions"))
        }
    }

    pub fn is_valid(&self) -> bool {
        let a = &self.0;
        let one = ExtRational::int(1);
        a.iter().all(|x| *x >= one) && (0..3).all(|i| a[i] <= &a[(i + 1) % 3] + &a[(i + 2) % 3])
    }

    pub fn parse(text: &str) -> Result<Snowflake, String> {
        let v = parse_vector(text)?;
        let a: [ExtRational; 3] = v
            .try_into()
            .map_err(|_| "a snowflake element has three entries".to_string())?;
        Snowflake::new(a)
    }

    pub fn finite_entries(&self) -> impl Iterator<Item = &ExtRational> {
        self.0.iter().filter(|x| !x.is_inf())
    }

    /// `self ≤ other` as sets: every entry of `self` is at least that of `other`.
    pub fn leq(&self, other: &Snowflake) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for Snowflake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vector(&self.0))
    }
}

/// Componentwise supremum.
pub fn snow_meet(u: &Snowflake, v: &Snowflake) -> Snowflake {
    Snowflake(std::array::from_fn(|i| u.0[i].clone().max(v.0[i].clone())))
}

/// Componentwise infimum, then the largest entry is lowered to the sum of the
/// other two if it exceeds it.
pub fn snow_join(u: &Snowflake, v: &Snowflake) -> Snowflake {
    let mut a: [ExtRational; 3] = std::array::from_fn(|i| u.0[i].clone().min(v.0[i].clone()));
    let m = (0..3).max_by(|&i, &j| a[i].cmp(&a[j]).then(j.cmp(&i))).expect("three entries");
    let rest = &a[(m + 1) % 3] + &a[(m + 2) % 3];
    if a[m] > rest {
        a[m] = rest;
    }
    Snowflake(a)
}

/// Result of closing `{S1, S2, S3}` under both operations while discarding
/// elements with a finite entry above `bound`.
#[derive(Debug, Clone, Serialize)]
pub struct SnowGeneration {
    pub bound: i64,
    pub elements: Vec<String>,
    pub first_join_layer: Vec<String>,
    pub finite_components: Vec<String>,
    pub all_integers: bool,
    pub covers_every_integer_up_to_bound: bool,
    pub truncated: bool,
}

pub fn snow_generate(bound: i64) -> SnowGeneration {
    let limit = ExtRational::int(bound);
    let gens: Vec<Snowflake> = (0..3).map(Snowflake::piece).collect();
    let (mut list, truncated) =
        close_under_ops(&gens, |s| s.finite_entries().all(|x| *x <= limit), usize::MAX);
    let mut layer: BTreeSet<Snowflake> = BTreeSet::new();
    for i in 0..3 {
        for j in i + 1..3 {
            layer.insert(snow_join(&gens[i], &gens[j]));
        }
    }
    let comps: BTreeSet<ExtRational> = list
        .iter()
        .flat_map(|s| s.finite_entries().cloned())
        .collect();
    let all_integers = comps
        .iter()
        .all(|c| c.finite().is_some_and(|q| q.is_integer()));
    let covers = (1..=bound).all(|k| comps.contains(&ExtRational::int(k)));
    list.sort();
    SnowGeneration {
        bound,
        elements: list.iter().map(ToString::to_string).collect(),
        first_join_layer: layer.iter().map(ToString::to_string).collect(),
        finite_components: comps.iter().map(ToString::to_string).collect(),
        all_integers,
        covers_every_integer_up_to_bound: covers,
        truncated,
    }
}

/// The sublattice generated by `gens`, keeping only elements accepted by
/// `keep`; stops early once `cap` elements are known. The flag reports whether
/// anything was discarded or the cap was hit.
pub fn close_under_ops(
    gens: &[Snowflake],
    keep: impl Fn(&Snowflake) -> bool,
    cap: usize,
) -> (Vec<Snowflake>, bool) {
    let mut seen: BTreeSet<Snowflake> = gens.iter().cloned().collect();
    let mut list: Vec<Snowflake> = seen.iter().cloned().collect();
    let mut queue: VecDeque<usize> = (0..list.len()).collect();
    let mut truncated = false;
    while let Some(i) = queue.pop_front() {
        for j in 0..list.len() {
            for r in [snow_meet(&list[i], &list[j]), snow_join(&list[i], &list[j])] {
                if !keep(&r) {
                    truncated = true;
                    continue;
                }
                if seen.insert(r.clone()) {
                    if list.len() == cap {
                        return (list, true);
                    }
                    list.push(r);
                    queue.push_back(list.len() - 1);
                }
            }
        }
    }
    (list, truncated)
}

/// `S1 > λS1 > λ²S1 > ...` with `λ = 1/2`, built by repeatedly joining two
/// scaled pieces and meeting with the third.
pub fn snow_descending_chain(len: usize) -> Vec<Snowflake> {
    let mut pieces: Vec<Snowflake> = (0..3).map(Snowflake::piece).collect();
    let mut chain = Vec::with_capacity(len);
    for _ in 0..len {
        chain.push(pieces[0].clone());
        pieces = (0..3)
            .map(|i| {
                let j = snow_join(&pieces[(i + 1) % 3], &pieces[(i + 2) % 3]);
                snow_meet(&j, &pieces[i])
            })
            .collect();
    }
    chain
}

/// All valid elements with entries drawn from `1..=max` and `∞`.
pub fn snow_enumerate(max: i64) -> Vec<Snowflake> {
    let vals: Vec<ExtRational> = (1..=max).map(ExtRational::int).chain([Inf]).collect();
    let mut out = Vec::new();
    for a in &vals {
        for b in &vals {
            for c in &vals {
                let s = Snowflake([a.clone(), b.clone(), c.clone()]);
                if s.is_valid() {
                    out.push(s);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Snowflake {
        Snowflake::parse(t).unwrap()
    }

    #[test]
    fn worked_values() {
        let s1 = Snowflake::piece(0);
        let s2 = Snowflake::piece(1);
        let s3 = Snowflake::piece(2);
        let j = snow_join(&s1, &s2);
        assert_eq!(j, s("[1,1,2]"));
        let m = snow_meet(&j, &s3);
        assert_eq!(m, s("[inf,inf,2]"));
        assert_eq!(snow_join(&m, &s2), s("[3,1,2]"));
    }

    #[test]
    fn rejects_invalid() {
        assert!(Snowflake::parse("[1,1,3]").is_err());
        assert!(Snowflake::parse("[1,2]").is_err());
    }

    #[test]
    fn descending_chain_values() {
        let c = snow_descending_chain(4);
        let expected: Vec<Snowflake> = ["[1,inf,inf]", "[2,inf,inf]", "[4,inf,inf]", "[8,inf,inf]"]
            .iter()
            .map(|t| s(t))
            .collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn first_layer() {
        let g = snow_generate(3);
        assert_eq!(g.first_join_layer, vec!["[1,1,2]", "[1,2,1]", "[2,1,1]"]);
    }
}
