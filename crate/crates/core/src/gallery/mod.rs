//! Named counterexamples, each with its expected verdict, side conditions
//! and positive counterparts.

mod polytopes;
mod relconv;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::conv::{PointedPolytopeLattice, PolytopeLattice, RelConvLattice, RelSet};
use crate::geom::{Polytope, RationalPoint};
use crate::term::{check, evaluate, CheckError, CheckReport, Identity, LatticeHandle, Mode, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("unknown gallery entry {0:?}")]
    Unknown(String),
    #[error("{family} takes a parameter in {min}..={max}, got {got:?}")]
    Parameter { family: String, min: usize, max: usize, got: Option<usize> },
}

/// An assignment in one of the geometric lattices.
#[derive(Debug, Clone)]
pub enum Instance {
    Conv { dim: usize, env: HashMap<String, Polytope> },
    Pointed { dim: usize, env: HashMap<String, Polytope> },
    RelConv { lattice: RelConvLattice, env: HashMap<String, RelSet> },
}

/// An identity together with an assignment.
#[derive(Debug, Clone)]
pub struct Case {
    pub identity: Identity,
    pub instance: Instance,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub report: CheckReport,
    /// For failures: whether the witness lies in one side and not the other,
    /// re-tested independently of the check.
    pub witness_rechecked: Option<bool>,
}

fn run_in<L: LatticeHandle>(
    lattice: &L,
    id: &Identity,
    env: &HashMap<String, L::Elem>,
    member: impl Fn(&L::Elem, &RationalPoint) -> bool,
) -> Result<CaseOutcome, CheckError> {
    let report = check(id, lattice, env)?;
    let witness_rechecked = if report.verdict == Verdict::Fails {
        let (lhs, rhs) = evaluate(id, lattice, env)?;
        Some(report.witness_point.as_ref().is_some_and(|w| {
            let l_only = member(&lhs, w) && !member(&rhs, w);
            let r_only = member(&rhs, w) && !member(&lhs, w);
            l_only || (id.mode == Mode::Equation && r_only)
        }))
    } else {
        None
    };
    Ok(CaseOutcome { report, witness_rechecked })
}

fn polytope_member(p: &Polytope, q: &RationalPoint) -> bool {
    p.contains(q).expect("dimensions agree")
}

impl Case {
    pub fn selector(&self) -> String {
        match &self.instance {
            Instance::Conv { dim, .. } => PolytopeLattice { dim: *dim }.selector(),
            Instance::Pointed { dim, .. } => PointedPolytopeLattice { dim: *dim }.selector(),
            Instance::RelConv { lattice, .. } => lattice.selector(),
        }
    }

    pub fn run(&self) -> Result<CaseOutcome, CheckError> {
        match &self.instance {
            Instance::Conv { dim, env } => {
                run_in(&PolytopeLattice { dim: *dim }, &self.identity, env, polytope_member)
            }
            Instance::Pointed { dim, env } => {
                run_in(&PointedPolytopeLattice { dim: *dim }, &self.identity, env, polytope_member)
            }
            Instance::RelConv { lattice, env } => run_in(lattice, &self.identity, env, |s, q| {
                lattice.index_of(q).is_some_and(|i| s.contains(i))
            }),
        }
    }

    /// The same assignment with a different identity over the same variables.
    pub fn with_identity(&self, identity: Identity) -> Case {
        Case { identity, instance: self.instance.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub family: &'static str,
    pub n: Option<usize>,
    pub description: &'static str,
    pub expected: Verdict,
    pub case: Case,
    /// Named facts about the construction, asserted exactly.
    pub conditions: Vec<(String, bool)>,
    /// Related assignments on which an identity must hold.
    pub counterparts: Vec<Case>,
}

impl GalleryEntry {
    pub fn name(&self) -> String {
        match self.n {
            Some(n) => format!("{}:{n}", self.family),
            None => self.family.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub entry: String,
    pub description: String,
    pub lattice: String,
    pub identity: String,
    pub expected: Verdict,
    pub observed: Verdict,
    pub witness: Option<Value>,
    pub witness_rechecked: Option<bool>,
    pub assignment: BTreeMap<String, Value>,
    pub conditions: BTreeMap<String, bool>,
    pub counterparts: usize,
    pub counterparts_holding: usize,
    pub pass: bool,
}

pub fn run_entry(e: &GalleryEntry) -> EntryReport {
    let out = e.case.run().expect("gallery assignments are complete and valid");
    let holding = e
        .counterparts
        .par_iter()
        .filter(|c| c.run().is_ok_and(|o| o.report.verdict == Verdict::Holds))
        .count();
    let conditions: BTreeMap<String, bool> = e.conditions.iter().cloned().collect();
    let observed = out.report.verdict;
    let pass = observed == e.expected
        && out.witness_rechecked.unwrap_or(true)
        && conditions.values().all(|&b| b)
        && holding == e.counterparts.len();
    EntryReport {
        entry: e.name(),
        description: e.description.to_string(),
        lattice: out.report.lattice,
        identity: out.report.identity,
        expected: e.expected,
        observed,
        witness: out.report.witness,
        witness_rechecked: out.witness_rechecked,
        assignment: out.report.assignment,
        conditions,
        counterparts: e.counterparts.len(),
        counterparts_holding: holding,
        pass,
    }
}

/// Families with their parameter ranges.
pub const FAMILIES: &[(&str, Option<(usize, usize)>)] = &[
    ("dn_fail_conv", Some((1, 3))),
    ("wrapped_dn_fail_pointed", Some((2, 3))),
    ("dnop_fail_conv", Some((1, 3))),
    ("wrapped_dnop_fail_pointed", Some((2, 3))),
    ("radon_fail", Some((2, 3))),
    ("relconv_d1op_fail", None),
    ("relconv_wrapped_fail", Some((1, 2))),
];

pub fn entry(family: &str, n: Option<usize>) -> Result<GalleryEntry, GalleryError> {
    let range = FAMILIES
        .iter()
        .find(|(f, _)| *f == family)
        .ok_or_else(|| GalleryError::Unknown(family.to_string()))?
        .1;
    let k = match range {
        Some((min, max)) => match n {
            Some(k) if (min..=max).contains(&k) => k,
            got => return Err(GalleryError::Parameter { family: family.into(), min, max, got }),
        },
        None => 0,
    };
    Ok(match family {
        "dn_fail_conv" => polytopes::dn_fail_conv(k),
        "wrapped_dn_fail_pointed" => polytopes::wrapped_dn_fail_pointed(k),
        "dnop_fail_conv" => polytopes::dnop_fail_conv(k),
        "wrapped_dnop_fail_pointed" => polytopes::wrapped_dnop_fail_pointed(k),
        "radon_fail" => polytopes::radon_fail(k),
        "relconv_d1op_fail" => relconv::relconv_d1op_fail(),
        _ => relconv::relconv_wrapped_fail(k),
    })
}

/// Parses `family` or `family:n`.
pub fn entry_by_name(name: &str) -> Result<GalleryEntry, GalleryError> {
    match name.split_once(':') {
        Some((f, k)) => {
            let k = k.parse().map_err(|_| GalleryError::Unknown(name.to_string()))?;
            entry(f, Some(k))
        }
        None => entry(name, None),
    }
}

/// Every entry over the full parameter ranges.
pub fn catalog() -> Vec<GalleryEntry> {
    FAMILIES
        .iter()
        .flat_map(|(f, r)| match r {
            Some((a, b)) => (*a..=*b).map(|k| entry(f, Some(k)).expect("in range")).collect::<Vec<_>>(),
            None => vec![entry(f, None).expect("no parameter")],
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

/// Runs every entry whose name contains `filter`.
pub fn run_all(filter: Option<&str>) -> SuiteReport {
    let mut entries: Vec<EntryReport> = catalog()
        .into_par_iter()
        .filter(|e| filter.is_none_or(|f| e.name().contains(f)))
        .map(|e| run_entry(&e))
        .collect();
    entries.sort_by(|a, b| a.entry.cmp(&b.entry));
    let passed = entries.iter().filter(|r| r.pass).count();
    SuiteReport {
        failed: entries.len() - passed,
        pass: passed == entries.len(),
        passed,
        entries,
    }
}
