use super::{MPoly, MultiIndex};
use crate::error::{check_arity, Error, Result};
use crate::numeric::Field;

/// Taylor jet on the box `{0 <= a <= bound}` in the local variables
/// `u = z - center`. Coefficients are stored densely in lexicographic box
/// order; nothing is known about indices outside the box.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<F> {
    bound: MultiIndex,
    center: Vec<F>,
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    pub fn zeros(center: Vec<F>, bound: MultiIndex) -> Result<Self> {
        check_arity(center.len(), bound.len())?;
        let size = bound.box_size();
        Ok(TruncSeries {
            bound,
            center,
            coeffs: vec![F::zero(); size],
        })
    }

    /// Jet of a polynomial already written in the local variables.
    pub fn from_centered(local: &MPoly<F>, center: Vec<F>, bound: MultiIndex) -> Result<Self> {
        check_arity(center.len(), local.nvars())?;
        let mut s = Self::zeros(center, bound)?;
        for (e, c) in local.terms() {
            if e.fits_in(&s.bound) {
                let i = s.offset(e);
                s.coeffs[i] = c.clone();
            }
        }
        Ok(s)
    }

    /// Jet at `center` of a polynomial in the global variables `z`.
    pub fn jet(poly: &MPoly<F>, center: &[F], bound: MultiIndex) -> Result<Self> {
        let local = poly.taylor_shift(center)?;
        Self::from_centered(&local, center.to_vec(), bound)
    }

    pub fn nvars(&self) -> usize {
        self.center.len()
    }

    pub fn bound(&self) -> &MultiIndex {
        &self.bound
    }

    pub fn center(&self) -> &[F] {
        &self.center
    }

    fn offset(&self, idx: &MultiIndex) -> usize {
        idx.as_slice()
            .iter()
            .zip(self.bound.as_slice())
            .fold(0, |acc, (&a, &b)| acc * (b as usize + 1) + a as usize)
    }

    /// `None` outside the box.
    pub fn coeff(&self, idx: &MultiIndex) -> Option<&F> {
        (idx.len() == self.nvars() && idx.fits_in(&self.bound))
            .then(|| &self.coeffs[self.offset(idx)])
    }

    pub fn set(&mut self, idx: &MultiIndex, value: F) {
        assert!(
            idx.fits_in(&self.bound),
            "index {idx:?} outside box {:?}",
            self.bound
        );
        let i = self.offset(idx);
        self.coeffs[i] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &F)> {
        self.bound.box_iter().zip(self.coeffs.iter())
    }

    /// Local-variable polynomial with the box coefficients.
    pub fn to_local_poly(&self) -> MPoly<F> {
        MPoly::from_terms(self.nvars(), self.iter().map(|(e, c)| (e, c.clone())))
    }

    /// Cauchy product restricted to `bound`, which must fit inside both
    /// operand boxes.
    pub fn mul_truncated(&self, other: &Self, bound: &MultiIndex) -> Result<Self> {
        if self.center != other.center {
            return Err(Error::CenterMismatch);
        }
        check_arity(self.nvars(), bound.len())?;
        for operand in [self, other] {
            if !bound.fits_in(&operand.bound) {
                return Err(Error::BoxMismatch {
                    requested: bound.clone(),
                    available: operand.bound.clone(),
                });
            }
        }
        let mut out = Self::zeros(self.center.clone(), bound.clone())?;
        for (i, alpha) in bound.box_iter().enumerate() {
            let mut acc = F::zero();
            for beta in alpha.box_iter() {
                let rest = alpha.checked_sub(&beta).expect("beta <= alpha");
                let a = &self.coeffs[self.offset(&beta)];
                let b = &other.coeffs[other.offset(&rest)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            out.coeffs[i] = acc;
        }
        Ok(out)
    }

    /// Multiplicative inverse on the same box.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let inv0 = a0.checked_inv().ok_or(Error::SingularSeries)?;
        let mut out = Self::zeros(self.center.clone(), self.bound.clone())?;
        out.coeffs[0] = inv0.clone();
        // b_a = -(1/a_0) * sum_{0 < c <= a} a_c b_{a-c}; every a-c precedes a
        // in lexicographic order, so one pass suffices
        for (i, alpha) in self.bound.box_iter().enumerate().skip(1) {
            let mut acc = F::zero();
            for beta in alpha.box_iter().skip(1) {
                let a = &self.coeffs[self.offset(&beta)];
                if a.is_zero() {
                    continue;
                }
                let rest = alpha.checked_sub(&beta).expect("beta <= alpha");
                acc = acc + a.clone() * out.coeffs[out.offset(&rest)].clone();
            }
            out.coeffs[i] = -(inv0.clone() * acc);
        }
        Ok(out)
    }
}

pub fn series_invert_box<F: Field>(a: &TruncSeries<F>) -> Result<TruncSeries<F>> {
    a.invert()
}

pub fn series_mul_truncated<F: Field>(
    a: &TruncSeries<F>,
    b: &TruncSeries<F>,
    bound: &MultiIndex,
) -> Result<TruncSeries<F>> {
    a.mul_truncated(b, bound)
}

/// As [`series_mul_truncated`] with a polynomial (in global variables) as
/// the left factor; it is expanded at `b`'s center first.
pub fn series_mul_poly_truncated<F: Field>(
    a: &MPoly<F>,
    b: &TruncSeries<F>,
    bound: &MultiIndex,
) -> Result<TruncSeries<F>> {
    let jet = TruncSeries::jet(a, b.center(), bound.clone())?;
    jet.mul_truncated(b, bound)
}
