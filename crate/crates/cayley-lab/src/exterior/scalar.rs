//! Coefficient fields for forms: exact rationals and floats.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. The
//! default field is [`Rational`] (arbitrary-precision, always canonical as a
//! reduced fraction with positive denominator); `f64` is the opt-in float
//! variant used by angle-parameterized sweeps. The two never mix inside one
//! computation: a form is either `KForm<Rational>` or `KForm<f64>`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficient type: reduced fraction of big integers.
pub type Rational = BigRational;

/// Wire form of a coefficient: exact `"p/q"` string or a plain number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Float(f64),
    Exact(String),
}

impl fmt::Display for CoeffRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRepr::Float(x) => write!(f, "{x}"),
            CoeffRepr::Exact(s) => write!(f, "{s}"),
        }
    }
}

/// Field of coefficients a form can carry.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True for exact arithmetic (tolerances are ignored).
    const EXACT: bool;

    fn from_int(value: i64) -> Self;

    /// The fraction `num/den`. Panics if `den == 0`; intended for constants.
    fn ratio(num: i64, den: i64) -> Self;

    /// Zero test honoring the comparison tolerance in float mode.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Rough magnitude used only to pick pivots during elimination.
    fn pivot_weight(&self) -> f64;

    fn to_repr(&self) -> CoeffRepr;

    fn from_repr(repr: &CoeffRepr) -> Result<Self>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator in rational constant");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.to_f64()
                .map(f64::abs)
                .filter(|x| x.is_finite() && *x > 0.0)
                .unwrap_or(f64::MAX)
        }
    }

    fn to_repr(&self) -> CoeffRepr {
        CoeffRepr::Exact(self.to_string())
    }

    fn from_repr(repr: &CoeffRepr) -> Result<Self> {
        match repr {
            CoeffRepr::Exact(s) => parse_rational(s),
            CoeffRepr::Float(_) => Err(Error::FloatCoefficient),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator in rational constant");
        num as f64 / den as f64
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn pivot_weight(&self) -> f64 {
        self.abs()
    }

    fn to_repr(&self) -> CoeffRepr {
        CoeffRepr::Float(*self)
    }

    fn from_repr(repr: &CoeffRepr) -> Result<Self> {
        match repr {
            CoeffRepr::Float(x) => Ok(*x),
            CoeffRepr::Exact(s) => {
                let r = parse_rational(s)?;
                r.to_f64().ok_or_else(|| Error::InvalidRational(s.clone()))
            }
        }
    }
}

/// Parse `"p"` or `"p/q"` into a reduced rational, rejecting zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Convert an exact scalar to `f64`, for handing exact data to a float sweep.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}
