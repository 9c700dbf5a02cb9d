//! Checking identities in concrete lattices.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use super::ast::{Automatic, Identity, Mode};
use crate::geom::io::point_to_json;
use crate::geom::sample::trial_rng;
use crate::geom::RationalPoint;

/// Uniform access to a lattice whose elements are values of type `Elem`.
pub trait LatticeHandle: Sync {
    type Elem: Clone + PartialEq + Send + Sync + std::fmt::Debug;

    /// Selector string such as `conv:2`.
    fn selector(&self) -> String;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.equal(&self.meet(a, b), a)
    }
    fn bottom(&self) -> Option<Self::Elem> {
        None
    }
    /// Rejects values that are not elements of this lattice.
    fn validate(&self, _e: &Self::Elem) -> Result<(), String> {
        Ok(())
    }
    fn describe(&self, e: &Self::Elem) -> Value;
    /// A point of `larger` outside `smaller`, for geometric lattices.
    fn witness(&self, _larger: &Self::Elem, _smaller: &Self::Elem) -> Option<RationalPoint> {
        None
    }
}

/// The order dual: meets and joins interchanged.
pub struct Dual<'a, L>(pub &'a L);

impl<L: LatticeHandle> LatticeHandle for Dual<'_, L> {
    type Elem = L::Elem;
    fn selector(&self) -> String {
        format!("dual({})", self.0.selector())
    }
    fn meet(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        self.0.join(a, b)
    }
    fn join(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        self.0.meet(a, b)
    }
    fn equal(&self, a: &L::Elem, b: &L::Elem) -> bool {
        self.0.equal(a, b)
    }
    fn leq(&self, a: &L::Elem, b: &L::Elem) -> bool {
        self.0.leq(b, a)
    }
    fn validate(&self, e: &L::Elem) -> Result<(), String> {
        self.0.validate(e)
    }
    fn describe(&self, e: &L::Elem) -> Value {
        self.0.describe(e)
    }
    fn witness(&self, larger: &L::Elem, smaller: &L::Elem) -> Option<RationalPoint> {
        self.0.witness(smaller, larger)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// The premise of a quasi-identity is not met.
    Vacuous,
    /// A hypothesis needed for the check does not hold.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub identity_name: String,
    pub lattice: String,
    pub verdict: Verdict,
    pub assignment: BTreeMap<String, Value>,
    pub witness: Option<Value>,
    #[serde(skip)]
    pub witness_point: Option<RationalPoint>,
    /// Whether the inclusion that holds in every lattice was observed.
    pub automatic_containment: Option<bool>,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("assignment is missing variable {0:?}")]
    MissingVariable(String),
    #[error("variable {0:?} is not an element of the lattice: {1}")]
    InvalidElement(String, String),
}

/// Both sides of `id` evaluated at `env`.
pub fn evaluate<L: LatticeHandle>(
    id: &Identity,
    lattice: &L,
    env: &HashMap<String, L::Elem>,
) -> Result<(L::Elem, L::Elem), CheckError> {
    let m = |a: &L::Elem, b: &L::Elem| lattice.meet(a, b);
    let j = |a: &L::Elem, b: &L::Elem| lattice.join(a, b);
    let lhs = id.lhs.eval(env, &m, &j).map_err(CheckError::MissingVariable)?;
    let rhs = id.rhs.eval(env, &m, &j).map_err(CheckError::MissingVariable)?;
    Ok((lhs, rhs))
}

pub fn check<L: LatticeHandle>(
    id: &Identity,
    lattice: &L,
    env: &HashMap<String, L::Elem>,
) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    for v in &id.free_vars {
        let e = env
            .get(v)
            .ok_or_else(|| CheckError::MissingVariable(v.clone()))?;
        lattice
            .validate(e)
            .map_err(|msg| CheckError::InvalidElement(v.clone(), msg))?;
    }
    let (lhs, rhs) = evaluate(id, lattice, env)?;
    let lhs_le = lattice.leq(&lhs, &rhs);
    let rhs_le = lattice.leq(&rhs, &lhs);
    let holds = match id.mode {
        Mode::Equation => lhs_le && rhs_le,
        Mode::Inequation => lhs_le,
    };
    let automatic_containment = id.automatic.map(|a| match a {
        Automatic::LhsGeqRhs => rhs_le,
        Automatic::LhsLeqRhs => lhs_le,
    });
    let witness_point = if holds {
        None
    } else if !lhs_le {
        lattice.witness(&lhs, &rhs)
    } else {
        lattice.witness(&rhs, &lhs)
    };
    let assignment = id
        .free_vars
        .iter()
        .map(|v| (v.clone(), lattice.describe(&env[v])))
        .collect();
    Ok(CheckReport {
        identity: id.to_string(),
        identity_name: id.name.clone(),
        lattice: lattice.selector(),
        verdict: if holds { Verdict::Holds } else { Verdict::Fails },
        assignment,
        witness: witness_point.as_ref().map(point_to_json),
        witness_point,
        automatic_containment,
        seed: None,
        trial: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FalsifyReport {
    pub identity: String,
    pub identity_name: String,
    pub lattice: String,
    pub seed: u64,
    /// Trials examined: all of them, or up to and including the failure.
    pub trials: u64,
    pub failure: Option<CheckReport>,
    /// Trials in which the automatic inclusion was violated (always a bug).
    pub automatic_violations: u64,
    pub elapsed_ms: u64,
}

/// Random assignments for trials `0..trials`; each trial draws its variables
/// in `free_vars` order from its own generator. The reported failure is the
/// lowest-index one, so the result does not depend on scheduling.
pub fn falsify<L, S>(
    id: &Identity,
    lattice: &L,
    sample: S,
    trials: u64,
    seed: u64,
) -> Result<FalsifyReport, CheckError>
where
    L: LatticeHandle,
    S: Fn(&mut ChaCha8Rng) -> L::Elem + Sync,
{
    let start = Instant::now();
    let run = |t: u64| -> Result<CheckReport, CheckError> {
        let mut rng = trial_rng(seed, t);
        let env: HashMap<String, L::Elem> = id
            .free_vars
            .iter()
            .map(|v| (v.clone(), sample(&mut rng)))
            .collect();
        let mut r = check(id, lattice, &env)?;
        r.seed = Some(seed);
        r.trial = Some(t);
        Ok(r)
    };
    let first = (0..trials)
        .into_par_iter()
        .map(run)
        .find_first(|r| {
            r.as_ref()
                .map_or(true, |r| r.verdict == Verdict::Fails || r.automatic_containment == Some(false))
        })
        .transpose()?;
    let (trials_run, failure, automatic_violations) = match first {
        Some(r) => {
            let t = r.trial.unwrap_or(0);
            let auto = u64::from(r.automatic_containment == Some(false));
            (t + 1, if r.verdict == Verdict::Fails { Some(r) } else { None }, auto)
        }
        None => (trials, None, 0),
    };
    Ok(FalsifyReport {
        identity: id.to_string(),
        identity_name: id.name.clone(),
        lattice: lattice.selector(),
        seed,
        trials: trials_run,
        failure,
        automatic_violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Join semidistributivity at one instance.
pub fn check_jsd<L: LatticeHandle>(lattice: &L, x: &L::Elem, y1: &L::Elem, y2: &L::Elem) -> Verdict {
    check_njsd(lattice, 1, x, &[y1.clone(), y2.clone()])
}

/// `n`-join semidistributivity at one instance with `ys = y_1..y_{n+1}`.
pub fn check_njsd<L: LatticeHandle>(lattice: &L, n: usize, x: &L::Elem, ys: &[L::Elem]) -> Verdict {
    assert_eq!(ys.len(), n + 1, "n-JSD takes n + 1 elements y_i");
    let j0 = lattice.join(x, &ys[0]);
    if !ys[1..]
        .iter()
        .all(|y| lattice.equal(&lattice.join(x, y), &j0))
    {
        return Verdict::Vacuous;
    }
    let mut acc = x.clone();
    for i in 0..ys.len() {
        for k in i + 1..ys.len() {
            acc = lattice.join(&acc, &lattice.meet(&ys[i], &ys[k]));
        }
    }
    if lattice.equal(&acc, &j0) {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

pub fn check_nmsd<L: LatticeHandle>(lattice: &L, n: usize, x: &L::Elem, ys: &[L::Elem]) -> Verdict {
    check_njsd(&Dual(lattice), n, x, ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::builders::build_dn;
    use serde_json::json;

    /// Integers under min and max.
    struct Chain(i64);

    impl LatticeHandle for Chain {
        type Elem = i64;
        fn selector(&self) -> String {
            format!("chain:{}", self.0)
        }
        fn meet(&self, a: &i64, b: &i64) -> i64 {
            *a.min(b)
        }
        fn join(&self, a: &i64, b: &i64) -> i64 {
            *a.max(b)
        }
        fn leq(&self, a: &i64, b: &i64) -> bool {
            a <= b
        }
        fn validate(&self, e: &i64) -> Result<(), String> {
            if (0..self.0).contains(e) {
                Ok(())
            } else {
                Err(format!("{e} out of range"))
            }
        }
        fn describe(&self, e: &i64) -> Value {
            json!(e)
        }
    }

    #[test]
    fn distributivity_holds_on_a_chain() {
        let id = build_dn(1).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let env = HashMap::from([("x".into(), a), ("y1".into(), b), ("y2".into(), c)]);
                    let r = check(&id, &Chain(2), &env).unwrap();
                    assert_eq!(r.verdict, Verdict::Holds);
                    assert_eq!(r.automatic_containment, Some(true));
                }
            }
        }
    }

    #[test]
    fn missing_and_invalid_variables() {
        let id = build_dn(1).unwrap();
        let env = HashMap::from([("x".into(), 0), ("y1".into(), 1)]);
        assert_eq!(
            check(&id, &Chain(2), &env).unwrap_err(),
            CheckError::MissingVariable("y2".into())
        );
        let env = HashMap::from([("x".into(), 0), ("y1".into(), 1), ("y2".into(), 7)]);
        assert!(matches!(
            check(&id, &Chain(2), &env),
            Err(CheckError::InvalidElement(..))
        ));
    }

    #[test]
    fn falsify_on_chain_finds_nothing() {
        use rand::Rng;
        let id = build_dn(2).unwrap();
        let r = falsify(&id, &Chain(4), |rng| rng.gen_range(0..4), 200, 3).unwrap();
        assert!(r.failure.is_none());
        assert_eq!(r.trials, 200);
    }

    #[test]
    fn jsd_trivial_and_vacuous() {
        assert_eq!(check_jsd(&Chain(5), &1, &3, &3), Verdict::Holds);
        assert_eq!(check_jsd(&Chain(5), &4, &3, &2), Verdict::Holds);
        assert_eq!(check_jsd(&Chain(5), &1, &3, &2), Verdict::Vacuous);
    }
}
