use std::fmt;

use num_complex::Complex64;

use super::{approx_eq, Backend, Field, GaussianRational, Tolerance};
use crate::error::{Error, Result};

/// A backend-tagged coefficient, for code paths where the backend is only
/// known at run time (problem files, command line).
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Exact(x) => x.render(),
            Scalar::Float(x) => x.render(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a * b, |a, b| a * b)
    }

    fn zip(
        &self,
        other: &Scalar,
        exact: impl FnOnce(GaussianRational, GaussianRational) -> GaussianRational,
        float: impl FnOnce(Complex64, Complex64) -> Complex64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(exact(a.clone(), b.clone()))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            _ => Err(mismatch(self, other)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> Error {
    Error::BackendMismatch(format!("{} vs {}", a.backend().name(), b.backend().name()))
}

pub fn parse_scalar(text: &str, backend: Backend) -> Result<Scalar> {
    match backend {
        Backend::Exact => GaussianRational::parse_text(text).map(Scalar::Exact),
        Backend::Float => Complex64::parse_text(text).map(Scalar::Float),
    }
}

pub fn approx_eq_scalar(a: &Scalar, b: &Scalar, tol: &Tolerance) -> Result<bool> {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Ok(approx_eq(x, y, tol)),
        (Scalar::Float(x), Scalar::Float(y)) => Ok(approx_eq(x, y, tol)),
        _ => Err(mismatch(a, b)),
    }
}

pub fn invert(a: &Scalar) -> Result<Scalar> {
    match a {
        Scalar::Exact(x) => x.inv().map(Scalar::Exact),
        Scalar::Float(x) => Field::inv(x).map(Scalar::Float),
    }
}

/// The only sanctioned exact-to-float conversion.
pub fn lower_to_float(a: &Scalar) -> Scalar {
    match a {
        Scalar::Exact(x) => Scalar::Float(x.to_complex64()),
        Scalar::Float(x) => Scalar::Float(*x),
    }
}
