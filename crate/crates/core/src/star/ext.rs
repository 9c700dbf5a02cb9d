use std::fmt;
use std::ops::Add;

use num_traits::One;
use thiserror::Error;

use crate::geom::{format_rational, parse_rational, Rational};

/// A rational or `∞`, with `∞` above every rational and absorbing in sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(Rational),
    Inf,
}

pub use ExtRational::{Finite, Inf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtParseError {
    #[error("{0}")]
    Rational(#[from] crate::geom::rational::RationalParseError),
    #[error("value {0} is below 1")]
    BelowOne(String),
}

impl ExtRational {
    pub fn int(v: i64) -> ExtRational {
        Finite(Rational::from_integer(v.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Inf)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Finite(q) => Some(q),
            Inf => None,
        }
    }

    /// Multiplication by a nonnegative rational; `0 · ∞` is taken as `0`.
    pub fn scale(&self, c: &Rational) -> ExtRational {
        match self {
            Finite(q) => Finite(q * c),
            Inf if *c == Rational::from_integer(0.into()) => Finite(c.clone()),
            Inf => Inf,
        }
    }

    /// `1/self`, with `1/∞ = 0`.
    pub fn recip_length(&self) -> Rational {
        match self {
            Finite(q) => q.recip(),
            Inf => Rational::from_integer(0.into()),
        }
    }

    /// Parses a rational, `inf` or `∞`, requiring a value of at least 1.
    pub fn parse_inverse_length(text: &str) -> Result<ExtRational, ExtParseError> {
        let t = text.trim();
        if t == "inf" || t == "∞" || t == "Inf" || t == "infinity" {
            return Ok(Inf);
        }
        let q = parse_rational(t)?;
        if q < Rational::one() {
            return Err(ExtParseError::BelowOne(t.to_string()));
        }
        Ok(Finite(q))
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Inf,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(q) => f.write_str(&format_rational(q)),
            Inf => f.write_str("inf"),
        }
    }
}

/// `[a1,a2,...]` with `inf` for infinite entries.
pub fn format_vector(a: &[ExtRational]) -> String {
    let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_vector(text: &str) -> Result<Vec<ExtRational>, String> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("expected [a1,a2,...], found {t:?}"))?;
    inner
        .split(',')
        .map(|p| ExtRational::parse_inverse_length(p).map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_sums() {
        assert!(ExtRational::int(5) < Inf);
        assert_eq!(&ExtRational::int(1) + &ExtRational::int(2), ExtRational::int(3));
        assert_eq!(&ExtRational::int(1) + &Inf, Inf);
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_vector("[1, ∞,inf]").unwrap(),
            vec![ExtRational::int(1), Inf, Inf]
        );
        assert!(parse_vector("[1/2,1,1]").is_err());
        assert!(parse_vector("1,2,3").is_err());
        assert_eq!(format_vector(&[ExtRational::int(3), Inf]), "[3,inf]");
    }
}
