use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::multi_index::{binomial, falling_factorial, MultiIndex};
use crate::error::{check_arity, Result};
use crate::numeric::{Field, Tolerance};

/// Sparse polynomial in `n` variables. Zero coefficients are never stored,
/// so two polynomials over an exact field are equal iff their term maps are.
#[derive(Clone, PartialEq)]
pub struct MPoly<F> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(MultiIndex::zeros(nvars), c)
    }

    /// The coordinate function `z_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, var, 1), F::one())
    }

    pub fn monomial(exps: MultiIndex, c: F) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Sums repeated exponents. Panics if an exponent has the wrong length.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length does not match arity");
            p.add_term(e, c);
        }
        p
    }

    /// `(z - center)^exps`, expanded.
    pub fn centered_monomial(center: &[F], exps: &MultiIndex) -> Self {
        let mut p = Self::one(center.len());
        for (k, &e) in exps.as_slice().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor =
                Self::var(center.len(), k) - Self::constant(center.len(), center[k].clone());
            for _ in 0..e {
                p = &p * &factor;
            }
        }
        p
    }

    fn add_term(&mut self, e: MultiIndex, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (MultiIndex, F)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &MultiIndex) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&MultiIndex::zeros(self.nvars))
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    /// Componentwise maximum exponent.
    pub fn degree_box(&self) -> MultiIndex {
        self.terms
            .keys()
            .fold(MultiIndex::zeros(self.nvars), |acc, e| acc.join(e))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(F::magnitude).fold(0.0, f64::max)
    }

    /// Terms ordered by total degree, then with higher powers of earlier
    /// variables first.
    pub fn graded_terms(&self) -> Vec<(&MultiIndex, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
        v
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_arity(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_arity(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_arity(self.nvars, other.nvars)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * s.clone())),
        )
    }

    /// `d^|l| / dz^l`
    pub fn partial_derivative(&self, order: &MultiIndex) -> Self {
        assert_eq!(order.len(), self.nvars, "derivative order has wrong arity");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let Some(rest) = e.checked_sub(order) else {
                continue;
            };
            let factor = e
                .as_slice()
                .iter()
                .zip(order.as_slice())
                .fold(num_bigint::BigInt::from(1), |acc, (&n, &k)| {
                    acc * falling_factorial(n, k)
                });
            out.add_term(rest, c.clone() * F::from_bigint(&factor));
        }
        out
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        check_arity(self.nvars, point.len())?;
        let dbox = self.degree_box();
        // powers[k][j] = point[k]^j
        let powers: Vec<Vec<F>> = point
            .iter()
            .zip(dbox.as_slice())
            .map(|(x, &maxe)| {
                let mut row = Vec::with_capacity(maxe as usize + 1);
                row.push(F::one());
                for j in 1..=maxe as usize {
                    let next = row[j - 1].clone() * x.clone();
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.as_slice().iter().enumerate() {
                if ek > 0 {
                    t = t * powers[k][ek as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// `q(u) = self(u + shift)`: the coefficient of `u^a` in the result is
    /// the Taylor coefficient of `self` at `shift`.
    pub fn taylor_shift(&self, shift: &[F]) -> Result<Self> {
        check_arity(self.nvars, shift.len())?;
        let mut cur = self.clone();
        for (k, wk) in shift.iter().enumerate() {
            if wk.is_zero() {
                continue;
            }
            let maxe = cur.degree_box().get(k);
            let mut pw = vec![F::one()];
            for j in 1..=maxe as usize {
                let next = pw[j - 1].clone() * wk.clone();
                pw.push(next);
            }
            let mut next = Self::zero(self.nvars);
            for (e, c) in &cur.terms {
                let ek = e.get(k);
                for j in 0..=ek {
                    let mut ne = e.clone();
                    ne.set(k, j);
                    let coef = c.clone()
                        * F::from_bigint(&binomial(ek, j))
                        * pw[(ek - j) as usize].clone();
                    next.add_term(ne, coef);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Replaces `z_var` by a constant; the arity is unchanged.
    pub fn substitute(&self, var: usize, value: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.set(var, 0);
            out.add_term(ne, c.clone() * value.pow(e.get(var)));
        }
        out
    }

    /// Division by `z_var - root` as a polynomial in `z_var` over the ring of
    /// the remaining variables. Returns `(quotient, remainder)`; the remainder
    /// does not involve `z_var`.
    pub fn div_linear(&self, var: usize, root: &F) -> (Self, Self) {
        // group terms by their exponents in the other variables
        let mut groups: BTreeMap<MultiIndex, BTreeMap<u32, F>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.set(var, 0);
            groups.entry(key).or_default().insert(e.get(var), c.clone());
        }
        let mut quotient = Self::zero(self.nvars);
        let mut remainder = Self::zero(self.nvars);
        for (key, coeffs) in groups {
            let top = *coeffs.keys().next_back().unwrap_or(&0);
            // synthetic division, highest power first
            let mut carry = F::zero();
            for m in (0..=top).rev() {
                let a = coeffs.get(&m).cloned().unwrap_or_else(F::zero);
                let b = a + carry.clone() * root.clone();
                if m == 0 {
                    remainder.add_term(key.clone(), b);
                } else {
                    let mut qe = key.clone();
                    qe.set(var, m - 1);
                    quotient.add_term(qe, b.clone());
                    carry = b;
                }
            }
        }
        (quotient, remainder)
    }

    /// Keeps only exponents `<= upper`.
    pub fn truncate_to_box(&self, upper: &MultiIndex) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(e, _)| e.fits_in(upper))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Drops coefficients that are negligible relative to the largest one.
    pub fn prune(&self, tol: &Tolerance) -> Self {
        if F::is_exact() {
            return self.clone();
        }
        let scale = self.max_magnitude();
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(_, c)| !c.is_negligible(tol, scale))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }

    /// Human-readable form in the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        let zero = vec![F::zero(); self.nvars];
        render_terms(&self.graded_terms(), names, &zero)
    }

    /// Human-readable form in powers of `(z_k - center_k)`.
    pub fn render_centered(&self, names: &[String], center: &[F]) -> Result<String> {
        let shifted = self.taylor_shift(center)?;
        Ok(render_terms(&shifted.graded_terms(), names, center))
    }
}

fn coeff_text<F: Field>(c: &F) -> (bool, String) {
    if F::is_exact() {
        let s = c.render();
        if s.contains('i') {
            (false, format!("({s})"))
        } else if let Some(rest) = s.strip_prefix('-') {
            (true, rest.to_string())
        } else {
            (false, s)
        }
    } else {
        let z = c.to_complex64();
        if z.im == 0.0 {
            (z.re < 0.0, format!("{:?}", z.re.abs()))
        } else {
            (false, format!("({})", c.render()))
        }
    }
}

fn base_text<F: Field>(name: &str, center: &F) -> String {
    if center.is_zero() {
        return name.to_string();
    }
    let (neg, text) = coeff_text(center);
    if text.starts_with('(') {
        format!("({name}-{text})")
    } else if neg {
        format!("({name}+{text})")
    } else {
        format!("({name}-{text})")
    }
}

fn render_terms<F: Field>(terms: &[(&MultiIndex, &F)], names: &[String], center: &[F]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let (neg, mut text) = coeff_text(*c);
        for (k, &ek) in e.as_slice().iter().enumerate() {
            if ek == 0 {
                continue;
            }
            let name = names
                .get(k)
                .cloned()
                .unwrap_or_else(|| format!("z{}", k + 1));
            text.push('*');
            text.push_str(&base_text(&name, &center[k]));
            if ek > 1 {
                text.push_str(&format!("^{ek}"));
            }
        }
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    out
}

impl<F: Field> std::fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

// Operator forms panic on arity mismatch; use the `try_*` methods on
// untrusted input.
impl<F: Field> Add for &MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, rhs: Self) -> MPoly<F> {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl<F: Field> Sub for &MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, rhs: Self) -> MPoly<F> {
        self.try_sub(rhs).expect("arity mismatch")
    }
}

impl<F: Field> Mul for &MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, rhs: Self) -> MPoly<F> {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, rhs: Self) -> MPoly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, rhs: Self) -> MPoly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, rhs: Self) -> MPoly<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        self.scale(&-F::one())
    }
}
