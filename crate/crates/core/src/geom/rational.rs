//! Exact rationals and points with rational coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"±num"` or `"±num/den"`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let parse_int = |s: &str, signed: bool| -> Result<BigInt, RationalParseError> {
        let digits = if signed {
            s.strip_prefix(['+', '-']).unwrap_or(s)
        } else {
            s
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Malformed(text.to_string()));
        }
        s.trim_start_matches('+')
            .parse::<BigInt>()
            .map_err(|_| RationalParseError::Malformed(text.to_string()))
    };
    let n = parse_int(num, true)?;
    let d = match den {
        Some(d) => parse_int(d, false)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"num"` or `"num/den"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive multiple).
pub fn primitive_integer(values: &[Rational]) -> Vec<BigInt> {
    let l = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

/// A point of Q^n. Ordered lexicographically by coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    /// Unit vector e_i (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut p = Self::origin(dim);
        p.0[i] = Rational::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalPoint) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, factor: &Rational) -> RationalPoint {
        RationalPoint(self.0.iter().map(|c| c * factor).collect())
    }

    /// Appends one coordinate (used for hyperplane lifts).
    pub fn extended(&self, last: Rational) -> RationalPoint {
        let mut c = self.0.clone();
        c.push(last);
        RationalPoint(c)
    }

    pub fn truncated(&self, dim: usize) -> RationalPoint {
        RationalPoint(self.0[..dim].to_vec())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    /// Convex (or any affine) combination `sum coeffs[i] * points[i]`.
    pub fn combination(points: &[RationalPoint], coeffs: &[Rational]) -> RationalPoint {
        assert_eq!(points.len(), coeffs.len());
        let dim = points.first().map_or(0, RationalPoint::dim);
        let mut acc = vec![Rational::zero(); dim];
        for (p, c) in points.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += c * x;
            }
        }
        RationalPoint(acc)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalPoint {
    type Output = RationalPoint;
    fn neg(self) -> RationalPoint {
        RationalPoint(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rational> for &RationalPoint {
    type Output = RationalPoint;
    fn mul(self, rhs: &Rational) -> RationalPoint {
        self.scale(rhs)
    }
}
