//! Finitary closure operators on small finite sets, given by implication rules.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::lattice::{FiniteError, FiniteLattice};
use super::search::{dn_failure, MAX_SEARCH};
use crate::geom::sample::trial_rng;
use crate::term::Verdict;

pub const MAX_CLOSURE_GROUND: usize = 10;

/// Rules `A → b` on the ground set `{0,..,n-1}`; subsets are bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSystem {
    labels: Vec<String>,
    rules: Vec<(u32, usize)>,
}

impl ClosureSystem {
    pub fn new(labels: Vec<String>, rules: Vec<(Vec<usize>, usize)>) -> Result<ClosureSystem, FiniteError> {
        let n = labels.len();
        if n > MAX_CLOSURE_GROUND {
            return Err(FiniteError::GuardExceeded { what: "ground set", size: n, limit: MAX_CLOSURE_GROUND });
        }
        let mut packed = Vec::with_capacity(rules.len());
        for (k, (premise, conclusion)) in rules.into_iter().enumerate() {
            if conclusion >= n || premise.iter().any(|&i| i >= n) {
                return Err(FiniteError::Data(format!("rules[{k}]: element out of range")));
            }
            packed.push((premise.iter().fold(0u32, |m, &i| m | 1 << i), conclusion));
        }
        Ok(ClosureSystem { labels, rules: packed })
    }

    /// Parses `{"ground": [...], "rules": [{"if": [...], "then": "c"}, ...]}`.
    pub fn from_json(v: &Value) -> Result<ClosureSystem, FiniteError> {
        let bad = |m: String| FiniteError::Data(m);
        let labels: Vec<String> = v
            .get("ground")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("ground: expected an array of names".into()))?
            .iter()
            .enumerate()
            .map(|(i, e)| {
                e.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad(format!("ground[{i}]: expected a string")))
            })
            .collect::<Result<_, _>>()?;
        let find = |name: &str, path: String| {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| bad(format!("{path}: unknown element {name:?}")))
        };
        let mut rules = Vec::new();
        let list = v
            .get("rules")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("rules: expected an array".into()))?;
        for (k, r) in list.iter().enumerate() {
            let premise = r
                .get("if")
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("rules[{k}].if: expected an array")))?
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let name = e
                        .as_str()
                        .ok_or_else(|| bad(format!("rules[{k}].if[{i}]: expected a string")))?;
                    find(name, format!("rules[{k}].if[{i}]"))
                })
                .collect::<Result<Vec<usize>, _>>()?;
            let then = r
                .get("then")
                .and_then(Value::as_str)
                .ok_or_else(|| bad(format!("rules[{k}].then: expected a string")))?;
            rules.push((premise, find(then, format!("rules[{k}].then"))?));
        }
        ClosureSystem::new(labels, rules)
    }

    pub fn to_json(&self) -> Value {
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|(m, c)| json!({"if": self.names(*m), "then": self.labels[*c]}))
            .collect();
        json!({"ground": self.labels, "rules": rules})
    }

    /// Points `0..k` on a line: each point between two others follows from them.
    pub fn collinear(k: usize) -> ClosureSystem {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let mut rules = Vec::new();
        for a in 0..k {
            for c in a + 2..k {
                for b in a + 1..c {
                    rules.push((vec![a, c], b));
                }
            }
        }
        ClosureSystem::new(labels, rules).expect("small ground set")
    }

    /// Random rules on `n` points: each has a premise of 1 to 3 points and a
    /// conclusion outside it.
    pub fn random(n: usize, rule_count: usize, rng: &mut impl Rng) -> ClosureSystem {
        let labels = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let mut rules = Vec::new();
        for _ in 0..rule_count {
            let size = rng.gen_range(1..=3.min(n - 1));
            let mut premise: Vec<usize> = Vec::new();
            while premise.len() < size {
                let p = rng.gen_range(0..n);
                if !premise.contains(&p) {
                    premise.push(p);
                }
            }
            premise.sort();
            let outside: Vec<usize> = (0..n).filter(|i| !premise.contains(i)).collect();
            let c = outside[rng.gen_range(0..outside.len())];
            rules.push((premise, c));
        }
        ClosureSystem::new(labels, rules).expect("small ground set")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn names(&self, mask: u32) -> Vec<String> {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn closure(&self, mut mask: u32) -> u32 {
        loop {
            let before = mask;
            for &(premise, c) in &self.rules {
                if premise & mask == premise {
                    mask |= 1 << c;
                }
            }
            if mask == before {
                return mask;
            }
        }
    }

    pub fn closed_sets(&self) -> Vec<u32> {
        (0..1u32 << self.len()).filter(|&m| self.closure(m) == m).collect()
    }

    /// The closed sets under intersection and closure of union.
    pub fn closed_set_lattice(&self) -> (FiniteLattice, Vec<u32>) {
        let sets = self.closed_sets();
        let index = |m: u32| sets.binary_search(&m).expect("closed");
        let labels = sets
            .iter()
            .map(|&m| format!("{{{}}}", self.names(m).join(",")))
            .collect();
        let l = FiniteLattice::from_ops(
            labels,
            |a, b| index(sets[a] & sets[b]),
            |a, b| index(self.closure(sets[a] | sets[b])),
        )
        .expect("closed sets of a closure operator form a lattice");
        (l, sets)
    }

    /// A set whose closure is not the union of the closures of its subsets of
    /// size at most `n`, with a point of the difference.
    pub fn caratheodory_failure(&self, n: usize) -> Option<(u32, usize)> {
        (0..1u32 << self.len()).find_map(|s| {
            let mut union = 0;
            let mut t = s;
            loop {
                if t.count_ones() as usize <= n {
                    union |= self.closure(t);
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            let diff = self.closure(s) & !union;
            (diff != 0).then(|| (s, diff.trailing_zeros() as usize))
        })
    }

    /// Whether the closure of every singleton is join-irreducible among the
    /// closed sets.
    pub fn singletons_join_irreducible(&self, lattice: &FiniteLattice, sets: &[u32]) -> bool {
        (0..self.len()).all(|p| {
            let c = self.closure(1 << p);
            sets.binary_search(&c)
                .is_ok_and(|i| lattice.is_join_irreducible(i))
        })
    }

    /// Compares `D_n` in the closed-set lattice with the `n`-Carathéodory
    /// property.
    pub fn check_lemma24(&self, n: usize) -> Result<Lemma24Report, FiniteError> {
        let (lattice, sets) = self.closed_set_lattice();
        let hypothesis = self.singletons_join_irreducible(&lattice, &sets);
        let mut report = Lemma24Report {
            n,
            closed_sets: sets.len(),
            hypothesis,
            dn_holds: None,
            caratheodory_holds: None,
            dn_witness: None,
            caratheodory_witness: None,
            verdict: Verdict::Skipped,
        };
        if !hypothesis {
            return Ok(report);
        }
        let dn = dn_failure(&lattice, n)?;
        let car = self.caratheodory_failure(n);
        report.dn_holds = Some(dn.is_none());
        report.caratheodory_holds = Some(car.is_none());
        report.dn_witness = dn.map(|w| w.iter().map(|&i| lattice.label(i).to_string()).collect());
        report.caratheodory_witness = car.map(|(s, p)| (self.names(s), self.labels[p].clone()));
        report.verdict = if report.dn_holds == report.caratheodory_holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Ok(report)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma24Campaign {
    pub seed: u64,
    pub systems: usize,
    pub attempts: u64,
    pub checks: usize,
    pub discrepancies: Vec<Value>,
    /// Counts of `(D_n holds, n-Carathéodory holds)` outcomes: both, neither.
    pub both_true: usize,
    pub both_false: usize,
}

/// Draws seeded random rule systems on 3 to 6 points until `systems` of them
/// satisfy the hypothesis and have at most `MAX_SEARCH` closed sets, then
/// checks the biconditional for every `n` in `ns`.
pub fn lemma24_campaign(systems: usize, ns: &[usize], seed: u64) -> Result<Lemma24Campaign, FiniteError> {
    let mut out = Lemma24Campaign {
        seed,
        systems: 0,
        attempts: 0,
        checks: 0,
        discrepancies: Vec::new(),
        both_true: 0,
        both_false: 0,
    };
    while out.systems < systems {
        let mut rng = trial_rng(seed, out.attempts);
        out.attempts += 1;
        let points = rng.gen_range(3..=6);
        let rule_count = rng.gen_range(1..=2 * points);
        let c = ClosureSystem::random(points, rule_count, &mut rng);
        let (lattice, sets) = c.closed_set_lattice();
        if sets.len() > MAX_SEARCH || !c.singletons_join_irreducible(&lattice, &sets) {
            continue;
        }
        out.systems += 1;
        for &n in ns {
            let r = c.check_lemma24(n)?;
            out.checks += 1;
            match (r.dn_holds, r.caratheodory_holds) {
                (Some(true), Some(true)) => out.both_true += 1,
                (Some(false), Some(false)) => out.both_false += 1,
                _ => out.discrepancies.push(json!({"system": c.to_json(), "report": r})),
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma24Report {
    pub n: usize,
    pub closed_sets: usize,
    pub hypothesis: bool,
    pub dn_holds: Option<bool>,
    pub caratheodory_holds: Option<bool>,
    pub dn_witness: Option<Vec<String>>,
    pub caratheodory_witness: Option<(Vec<String>, String)>,
    /// `Holds` when the two sides agree, `Skipped` without the hypothesis.
    pub verdict: Verdict,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_without_rules() {
        let c = ClosureSystem::new(vec!["a".into(), "b".into(), "c".into()], vec![]).unwrap();
        assert_eq!(c.closed_set_lattice().0.len(), 8);
    }

    #[test]
    fn collinear_triple() {
        let c = ClosureSystem::collinear(3);
        assert_eq!(c.closed_sets().len(), 7);
    }

    #[test]
    fn handcrafted_instances() {
        let r = ClosureSystem::collinear(4).check_lemma24(2).unwrap();
        assert_eq!((r.dn_holds, r.caratheodory_holds, r.verdict), (Some(true), Some(true), Verdict::Holds));
        let names = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let c = ClosureSystem::new(names, vec![(vec![0, 1, 2], 3)]).unwrap();
        let r = c.check_lemma24(2).unwrap();
        assert_eq!((r.dn_holds, r.caratheodory_holds, r.verdict), (Some(false), Some(false), Verdict::Holds));
    }

    #[test]
    fn skipped_without_hypothesis() {
        // c follows from nothing, so its closure is the bottom.
        let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let c = ClosureSystem::new(names, vec![(vec![], 2)]).unwrap();
        assert_eq!(c.check_lemma24(1).unwrap().verdict, Verdict::Skipped);
    }

    #[test]
    fn small_campaign() {
        let c = lemma24_campaign(20, &[1, 2], 3).unwrap();
        assert!(c.discrepancies.is_empty());
        assert_eq!(c.checks, 40);
    }

    #[test]
    fn json_round_trip() {
        let c = ClosureSystem::collinear(3);
        assert_eq!(ClosureSystem::from_json(&c.to_json()).unwrap(), c);
        let bad = json!({"ground": ["a"], "rules": [{"if": ["z"], "then": "a"}]});
        assert!(ClosureSystem::from_json(&bad).is_err());
    }
}
