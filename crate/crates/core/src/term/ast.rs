use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

/// A lattice term over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeTerm {
    Var(String),
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
}

pub use LatticeTerm::{Join, Meet, Var};

pub fn var(name: impl Into<String>) -> LatticeTerm {
    Var(name.into())
}

pub fn meet(a: LatticeTerm, b: LatticeTerm) -> LatticeTerm {
    Meet(Box::new(a), Box::new(b))
}

pub fn join(a: LatticeTerm, b: LatticeTerm) -> LatticeTerm {
    Join(Box::new(a), Box::new(b))
}

/// Left-nested meet; panics on an empty list.
pub fn meet_all(terms: impl IntoIterator<Item = LatticeTerm>) -> LatticeTerm {
    terms.into_iter().reduce(meet).expect("meet of no terms")
}

/// Left-nested join; panics on an empty list.
pub fn join_all(terms: impl IntoIterator<Item = LatticeTerm>) -> LatticeTerm {
    terms.into_iter().reduce(join).expect("join of no terms")
}

impl LatticeTerm {
    /// Variables in order of first occurrence (left to right).
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Meet(a, b) | Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn count_var(&self, name: &str) -> usize {
        match self {
            Var(v) => usize::from(v == name),
            Meet(a, b) | Join(a, b) => a.count_var(name) + b.count_var(name),
        }
    }

    /// Replaces every occurrence of variable `name` by `with`.
    pub fn substitute(&self, name: &str, with: &LatticeTerm) -> LatticeTerm {
        match self {
            Var(v) if v == name => with.clone(),
            Var(_) => self.clone(),
            Meet(a, b) => meet(a.substitute(name, with), b.substitute(name, with)),
            Join(a, b) => join(a.substitute(name, with), b.substitute(name, with)),
        }
    }

    /// Interchanges meets and joins.
    pub fn dual(&self) -> LatticeTerm {
        match self {
            Var(_) => self.clone(),
            Meet(a, b) => join(a.dual(), b.dual()),
            Join(a, b) => meet(a.dual(), b.dual()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Var(_) => 1,
            Meet(a, b) | Join(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Evaluates bottom-up, computing each distinct subterm once.
    pub fn eval<E: Clone>(
        &self,
        env: &HashMap<String, E>,
        meet_op: &dyn Fn(&E, &E) -> E,
        join_op: &dyn Fn(&E, &E) -> E,
    ) -> Result<E, String> {
        let mut memo: HashMap<&LatticeTerm, E> = HashMap::new();
        self.eval_memo(env, meet_op, join_op, &mut memo)
    }

    fn eval_memo<'a, E: Clone>(
        &'a self,
        env: &HashMap<String, E>,
        meet_op: &dyn Fn(&E, &E) -> E,
        join_op: &dyn Fn(&E, &E) -> E,
        memo: &mut HashMap<&'a LatticeTerm, E>,
    ) -> Result<E, String> {
        if let Some(e) = memo.get(self) {
            return Ok(e.clone());
        }
        let value = match self {
            Var(v) => env.get(v).cloned().ok_or_else(|| v.clone())?,
            Meet(a, b) => {
                let x = a.eval_memo(env, meet_op, join_op, memo)?;
                let y = b.eval_memo(env, meet_op, join_op, memo)?;
                meet_op(&x, &y)
            }
            Join(a, b) => {
                let x = a.eval_memo(env, meet_op, join_op, memo)?;
                let y = b.eval_memo(env, meet_op, join_op, memo)?;
                join_op(&x, &y)
            }
        };
        memo.insert(self, value.clone());
        Ok(value)
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_term(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `lhs = rhs`
    Equation,
    /// `lhs <= rhs`
    Inequation,
}

/// Which inclusion between the two sides holds in every lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Automatic {
    LhsGeqRhs,
    LhsLeqRhs,
}

impl Automatic {
    fn flipped(self) -> Automatic {
        match self {
            Automatic::LhsGeqRhs => Automatic::LhsLeqRhs,
            Automatic::LhsLeqRhs => Automatic::LhsGeqRhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub name: String,
    pub lhs: LatticeTerm,
    pub rhs: LatticeTerm,
    pub mode: Mode,
    pub free_vars: Vec<String>,
    pub automatic: Option<Automatic>,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: LatticeTerm, rhs: LatticeTerm, mode: Mode) -> Identity {
        let mut free_vars = lhs.vars();
        for v in rhs.vars() {
            if !free_vars.contains(&v) {
                free_vars.push(v);
            }
        }
        Identity {
            name: name.into(),
            lhs,
            rhs,
            mode,
            free_vars,
            automatic: None,
        }
    }

    pub fn with_automatic(mut self, a: Automatic) -> Identity {
        self.automatic = Some(a);
        self
    }

    /// Structural equality ignoring the display name.
    pub fn same_shape(&self, other: &Identity) -> bool {
        self.lhs == other.lhs
            && self.rhs == other.rhs
            && self.mode == other.mode
            && self.free_vars == other.free_vars
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.mode {
            Mode::Equation => "=",
            Mode::Inequation => "<=",
        };
        write!(f, "{} {} {}", self.lhs, rel, self.rhs)
    }
}

/// Swaps meets and joins; an inequation also swaps its sides.
pub fn dualize(id: &Identity) -> Identity {
    let name = match id.name.strip_prefix("dual ") {
        Some(rest) => rest.to_string(),
        None => format!("dual {}", id.name),
    };
    let (lhs, rhs, automatic) = match id.mode {
        Mode::Equation => (id.lhs.dual(), id.rhs.dual(), id.automatic.map(Automatic::flipped)),
        Mode::Inequation => (id.rhs.dual(), id.lhs.dual(), id.automatic),
    };
    let mut out = Identity::new(name, lhs, rhs, id.mode);
    out.automatic = automatic;
    out.free_vars = id.free_vars.clone();
    out
}

/// Distinguished variable marking the insertion point of [`wrap`].
pub const HOLE: &str = "HOLE";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WrapError {
    #[error("context does not contain HOLE")]
    MissingHole,
    #[error("context contains HOLE {0} times")]
    RepeatedHole(usize),
}

/// Substitutes both sides of `id` into `context` at [`HOLE`].
pub fn wrap(id: &Identity, context: &LatticeTerm) -> Result<Identity, WrapError> {
    match context.count_var(HOLE) {
        0 => return Err(WrapError::MissingHole),
        1 => {}
        k => return Err(WrapError::RepeatedHole(k)),
    }
    if *context == Var(HOLE.into()) {
        return Ok(id.clone());
    }
    let lhs = context.substitute(HOLE, &id.lhs);
    let rhs = context.substitute(HOLE, &id.rhs);
    let mut out = Identity::new(format!("{} in {}", id.name, context), lhs, rhs, id.mode);
    let mut fv = id.free_vars.clone();
    for v in context.vars() {
        if v != HOLE && !fv.contains(&v) {
            fv.push(v);
        }
    }
    out.free_vars = fv;
    out.automatic = id.automatic;
    Ok(out)
}
