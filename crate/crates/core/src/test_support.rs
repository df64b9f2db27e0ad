//! Shared fixtures for unit tests.

use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

use crate::numeric::{Field, GaussianRational as Q};
use crate::poly::{determinant, MPoly, MultiIndex};
use crate::residue::OrderVector;

pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

/// `p1 = u1^2 + u2^2 + u1^2 u2^2 / 3`, `p2 = u1^2 - u2^2 + 2 u1^2 u2^2 / 3`
/// with `u = z - (1, 1)`: a quadruple root at `(1, 1)` with orders `(2, 2)`
/// and simple roots at `(1 +- sqrt 6, 1 +- i sqrt 2)`.
pub fn quartic_pair<F: Field>() -> Vec<MPoly<F>> {
    let w = [F::one(), F::one()];
    let u1sq = MPoly::centered_monomial(&w, &MultiIndex::from([2, 0]));
    let u2sq = MPoly::centered_monomial(&w, &MultiIndex::from([0, 2]));
    let both = &u1sq * &u2sq;
    let third = F::from_i64(3).inv().unwrap();
    let two_thirds = F::from_i64(2) * third.clone();
    vec![
        &(&u1sq + &u2sq) + &both.scale(&third),
        &(&u1sq - &u2sq) + &both.scale(&two_thirds),
    ]
}

pub fn simple_roots() -> Vec<Vec<Complex64>> {
    let s6 = 6f64.sqrt();
    let s2 = 2f64.sqrt();
    let mut out = Vec::new();
    for a in [s6, -s6] {
        for b in [s2, -s2] {
            out.push(vec![Complex64::new(1.0 + a, 0.0), Complex64::new(1.0, b)]);
        }
    }
    out
}

pub fn arb_q() -> impl Strategy<Value = Q> {
    (-6i64..7, 1i64..4, -2i64..3).prop_map(|(a, b, c)| Q::ratio(a, b) + Q::new_int(0, c))
}

pub fn arb_point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(arb_q(), n)
}

pub fn arb_poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MPoly<Q>> {
    proptest::collection::vec(
        (proptest::collection::vec(0..=max_exp, n), arb_q()),
        0..=max_terms,
    )
    .prop_map(move |ts| MPoly::from_terms(n, ts.into_iter().map(|(e, c)| (MultiIndex::new(e), c))))
}

pub fn arb_system(n: usize, max_exp: u32) -> impl Strategy<Value = Vec<MPoly<Q>>> {
    proptest::collection::vec(arb_poly(n, max_exp, 5), n)
}

/// A system admissible at a random point with random orders, built as
/// `p = H(u) (u_k^{d_k})_k` with `H(0)` invertible.
pub fn arb_admissible_node(
    n: usize,
    max_order: u32,
) -> impl Strategy<Value = (Vec<MPoly<Q>>, Vec<Q>, OrderVector)> {
    (
        arb_point(n),
        proptest::collection::vec(1..=max_order, n),
        proptest::collection::vec(arb_q(), n * n),
        proptest::collection::vec(arb_poly(n, 2, 2), n * n),
    )
        .prop_filter_map("leading matrix singular", move |(w, d, lead, tails)| {
            let rows: Vec<Vec<Q>> = lead.chunks(n).map(|r| r.to_vec()).collect();
            if determinant(&rows).is_zero() {
                return None;
            }
            let back: Vec<Q> = w.iter().map(|x| -x.clone()).collect();
            let origin = vec![q(0); n];
            let system = (0..n)
                .map(|i| {
                    let mut p = MPoly::zero(n);
                    for k in 0..n {
                        let entry = &MPoly::constant(n, rows[i][k].clone()) + &tails[i * n + k];
                        let pow = MPoly::centered_monomial(&origin, &MultiIndex::unit(n, k, d[k]));
                        p = &p + &(&entry * &pow);
                    }
                    p.taylor_shift(&back).unwrap()
                })
                .collect();
            Some((system, w, OrderVector::new(MultiIndex::new(d)).unwrap()))
        })
}
