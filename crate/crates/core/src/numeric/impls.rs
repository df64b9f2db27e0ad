use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{parse_rational, Backend, Field};
use crate::error::{Error, Result};

fn parse_f64(text: &str) -> Result<f64> {
    let t = text.trim();
    let v: f64 = t
        .parse()
        .map_err(|_| Error::Parse(format!("malformed float {t:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite float {t:?}")));
    }
    Ok(v)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::NAN)
}

impl Field for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        let inv = Complex64::new(self.re / n, -self.im / n);
        (inv.re.is_finite() && inv.im.is_finite()).then_some(inv)
    }

    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(bigint_to_f64(n), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    /// `"re, im"`, or a lone real part.
    fn parse_text(text: &str) -> Result<Self> {
        match text.split_once(',') {
            Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
            None => Ok(Complex64::new(parse_f64(text)?, 0.0)),
        }
    }

    fn render(&self) -> String {
        format!("{:?}, {:?}", self.re, self.im)
    }
}

impl Field for f64 {
    const BACKEND: Backend = Backend::Float;

    fn checked_inv(&self) -> Option<Self> {
        let inv = 1.0 / self;
        (*self != 0.0 && inv.is_finite()).then_some(inv)
    }

    fn from_bigint(n: &BigInt) -> Self {
        bigint_to_f64(n)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn parse_text(text: &str) -> Result<Self> {
        let z = Complex64::parse_text(text)?;
        if z.im != 0.0 {
            return Err(Error::Parse(format!("{text:?} is not real")));
        }
        Ok(z.re)
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }
}

impl Field for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn checked_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| num_traits::Inv::inv(self))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn magnitude(&self) -> f64 {
        super::GaussianRational::real(self.clone()).magnitude()
    }

    fn to_complex64(&self) -> Complex64 {
        super::GaussianRational::real(self.clone()).to_complex64()
    }

    fn parse_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}
