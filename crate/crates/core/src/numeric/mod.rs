//! Coefficient fields and the tolerance policy used for zero tests.
//!
//! Everything above this module is generic over [`Field`]. Two backends are
//! provided: [`GaussianRational`] (exact, `Q[i]`) and [`Complex64`] (double
//! precision). `f64` and `BigRational` also implement the trait for purely
//! real problems.

mod gaussian;
mod impls;
mod scalar;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gaussian::GaussianRational;
pub use scalar::{approx_eq_scalar, invert, lower_to_float, parse_scalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

/// Absolute and relative thresholds for zero tests in the float backend.
/// Exact backends ignore both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    #[serde(rename = "abs")]
    pub abs_eps: f64,
    #[serde(rename = "rel")]
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Self {
        Tolerance { abs_eps, rel_eps }
    }

    /// `|x| <= max(abs_eps, rel_eps * scale)`.
    pub fn admits(&self, magnitude: f64, scale: f64) -> bool {
        magnitude <= self.abs_eps.max(self.rel_eps * scale.abs())
    }
}

/// A coefficient field.
///
/// Arithmetic is by value through the std operator traits; implementors are
/// immutable values that are cheap enough to clone.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    /// Multiplicative inverse, `None` for zero (and for non-finite float results).
    fn checked_inv(&self) -> Option<Self>;

    fn from_bigint(n: &BigInt) -> Self;

    /// Modulus, approximated in double precision for exact types.
    fn magnitude(&self) -> f64;

    fn to_complex64(&self) -> Complex64;

    fn parse_text(text: &str) -> Result<Self>;

    /// Renders in the same grammar [`Field::parse_text`] accepts.
    fn render(&self) -> String;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn inv(&self) -> Result<Self> {
        self.checked_inv().ok_or(Error::DivisionByZero)
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// Backend zero test against a caller supplied magnitude reference.
    fn is_negligible(&self, tol: &Tolerance, scale: f64) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            tol.admits(self.magnitude(), scale)
        }
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Exact equality for exact fields; `|a-b| <= max(abs, rel * max(|a|,|b|))`
/// otherwise.
pub fn approx_eq<F: Field>(a: &F, b: &F, tol: &Tolerance) -> bool {
    if F::is_exact() {
        a == b
    } else {
        let scale = a.magnitude().max(b.magnitude());
        tol.admits((a.clone() - b.clone()).magnitude(), scale)
    }
}

/// Parses `int` or `int/posint` with an optional sign.
pub(crate) fn parse_rational(text: &str) -> Result<num_rational::BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(num_rational::BigRational::new(n, d))
}
