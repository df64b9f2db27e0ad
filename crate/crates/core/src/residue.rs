//! Order conditions, the two matrix factorizations of a system at a node,
//! and local residues.
//!
//! A node `w` with order vector `d` is admissible when
//!
//! * every `d^l p_i / dz^l (w)` vanishes for `0 <= l <= d - I`, and
//! * the leading matrix `M[i][k] = d^{d_k} p_i / dz_k^{d_k} (w)` is invertible.
//!
//! Then each `p_i` is a combination `sum_k H[i][k](z) (z_k - w_k)^{d_k}`, and
//! the residue of `phi / (p_1 ... p_n)` at `w` equals the Taylor coefficient at
//! `d - I` of `phi / det H`. Residues are always computed that way, never by
//! contour integration.

use crate::error::{check_arity, Error, Result};
use crate::numeric::{Field, Tolerance};
use crate::poly::{
    determinant, jacobian_matrix, poly_determinant, series_mul_poly_truncated, MPoly, MultiIndex,
    TruncSeries,
};

/// Per-variable vanishing orders `d_w`, every entry at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderVector(MultiIndex);

impl OrderVector {
    pub fn new(d: MultiIndex) -> Result<Self> {
        if d.as_slice().contains(&0) {
            return Err(Error::InvalidOrder(d));
        }
        Ok(OrderVector(d))
    }

    pub fn simple(n: usize) -> Self {
        OrderVector(MultiIndex::ones(n))
    }

    pub fn as_index(&self) -> &MultiIndex {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d - I`, the upper corner of the data box.
    pub fn box_bound(&self) -> MultiIndex {
        self.0.minus_ones()
    }

    /// `d_1 * ... * d_n`
    pub fn multiplicity(&self) -> usize {
        self.0.as_slice().iter().map(|&e| e as usize).product()
    }

    pub fn is_simple(&self) -> bool {
        self.0.as_slice().iter().all(|&e| e == 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxTerm {
    pub polynomial: usize,
    pub index: MultiIndex,
}

/// Outcome of [`check_zero_order`].
#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport<F> {
    pub order: OrderVector,
    /// Nonzero Taylor coefficients of some `p_i` inside the box `d - I`.
    pub violations: Vec<BoxTerm>,
    pub vanishing_holds: bool,
    pub leading_matrix: Vec<Vec<F>>,
    pub leading_det: F,
    pub leading_holds: bool,
}

impl<F> OrderReport<F> {
    pub fn passed(&self) -> bool {
        self.vanishing_holds && self.leading_holds
    }
}

/// Column choice for a monomial divisible by several pure powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Min,
    Max,
}

/// A node with its factorization `p = H (z-w)^d` and the jet of `1/det H`.
#[derive(Clone)]
pub struct Node<F> {
    point: Vec<F>,
    order: OrderVector,
    matrix: Vec<Vec<MPoly<F>>>,
    det: MPoly<F>,
    det_at_point: F,
    inv_det_jet: TruncSeries<F>,
}

impl<F: Field> Node<F> {
    pub fn point(&self) -> &[F] {
        &self.point
    }

    pub fn order(&self) -> &OrderVector {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.point.len()
    }

    /// `H_w(z)` in the global variables.
    pub fn matrix(&self) -> &[Vec<MPoly<F>>] {
        &self.matrix
    }

    /// `det H_w(z)`
    pub fn det(&self) -> &MPoly<F> {
        &self.det
    }

    pub fn det_at_point(&self) -> &F {
        &self.det_at_point
    }

    /// Taylor coefficients `h_{w,a}` of `1/det H_w` for `a <= d - I`.
    pub fn inv_det_jet(&self) -> &TruncSeries<F> {
        &self.inv_det_jet
    }

    pub fn residue(&self, numerator: &MPoly<F>) -> Result<F> {
        local_residue(numerator, self)
    }
}

impl<F: Field> std::fmt::Debug for Node<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Node")
            .field("point", &self.point)
            .field("order", &self.order)
            .field("det", &self.det)
            .finish_non_exhaustive()
    }
}

fn check_square<F: Field>(system: &[MPoly<F>], point: &[F]) -> Result<usize> {
    let n = system.len();
    check_arity(n, point.len())?;
    for p in system {
        check_arity(n, p.nvars())?;
    }
    Ok(n)
}

fn row_scale<F: Field>(rows: &[Vec<F>]) -> f64 {
    rows.iter()
        .map(|r| r.iter().map(F::magnitude).fold(0.0, f64::max))
        .product()
}

/// Tests the vanishing and leading-matrix conditions for `point` with orders `order`.
pub fn check_zero_order<F: Field>(
    system: &[MPoly<F>],
    point: &[F],
    order: &OrderVector,
    tol: &Tolerance,
) -> Result<OrderReport<F>> {
    let n = check_square(system, point)?;
    check_arity(n, order.len())?;
    let bound = order.box_bound();

    let mut violations = Vec::new();
    for (i, p) in system.iter().enumerate() {
        let local = p.taylor_shift(point)?;
        let scale = local.max_magnitude();
        for (e, c) in local.terms() {
            if e.fits_in(&bound) && !c.is_negligible(tol, scale) {
                violations.push(BoxTerm {
                    polynomial: i,
                    index: e.clone(),
                });
            }
        }
    }

    let leading_matrix = system
        .iter()
        .map(|p| {
            (0..n)
                .map(|k| {
                    p.partial_derivative(&MultiIndex::unit(n, k, order.as_index().get(k)))
                        .evaluate(point)
                })
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let leading_det = determinant(&leading_matrix);
    let scale = row_scale(&leading_matrix);
    let leading_holds = scale > 0.0 && !leading_det.is_negligible(tol, scale);

    Ok(OrderReport {
        order: order.clone(),
        vanishing_holds: violations.is_empty(),
        violations,
        leading_matrix,
        leading_det,
        leading_holds,
    })
}

/// Builds `H_w` from `p_i(z) = sum_k H[i][k](z) (z_k - w_k)^{d_k}`.
///
/// Each term `u^b` of `p_i` recentred at `w` goes to a column `k` with
/// `b_k >= d_k` (smallest or largest such `k`, per `tie`). In the float
/// backend, terms inside the box that are negligible relative to the largest
/// coefficient of the recentred `p_i` are dropped.
pub fn power_decomposition<F: Field>(
    system: &[MPoly<F>],
    point: &[F],
    order: &OrderVector,
    tol: &Tolerance,
    tie: TieBreak,
) -> Result<Node<F>> {
    let n = check_square(system, point)?;
    check_arity(n, order.len())?;
    let d = order.as_index();
    let bound = order.box_bound();

    let mut local_h = vec![vec![MPoly::zero(n); n]; n];
    for (i, p) in system.iter().enumerate() {
        let local = p.taylor_shift(point)?;
        let scale = local.max_magnitude();
        let mut rows: Vec<Vec<(MultiIndex, F)>> = vec![Vec::new(); n];
        for (e, c) in local.terms() {
            let mut eligible = (0..n).filter(|&k| e.get(k) >= d.get(k));
            let column = match tie {
                TieBreak::Min => eligible.next(),
                TieBreak::Max => eligible.next_back(),
            };
            let Some(k) = column else {
                if c.is_negligible(tol, scale) {
                    continue;
                }
                return Err(Error::OrderViolation {
                    polynomial: i,
                    index: e.clone(),
                });
            };
            let mut rest = e.clone();
            rest.set(k, e.get(k) - d.get(k));
            rows[k].push((rest, c.clone()));
        }
        for (k, terms) in rows.into_iter().enumerate() {
            local_h[i][k] = MPoly::from_terms(n, terms);
        }
    }

    let local_det = poly_determinant(&local_h, n);
    let at_point: Vec<Vec<F>> = local_h
        .iter()
        .map(|row| row.iter().map(MPoly::constant_term).collect())
        .collect();
    let scale = row_scale(&at_point);
    let local_det0 = local_det.constant_term();
    if scale == 0.0 || local_det0.is_negligible(tol, scale) {
        return Err(Error::DegenerateLeadingMatrix);
    }

    let back: Vec<F> = point.iter().map(|x| -x.clone()).collect();
    let matrix = local_h
        .iter()
        .map(|row| row.iter().map(|h| h.taylor_shift(&back)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let det = local_det.taylor_shift(&back)?;
    let det_at_point = det.evaluate(point)?;
    let inv_det_jet = TruncSeries::from_centered(&local_det, point.to_vec(), bound)?
        .invert()
        .map_err(|_| Error::DegenerateLeadingMatrix)?;

    Ok(Node {
        point: point.to_vec(),
        order: order.clone(),
        matrix,
        det,
        det_at_point,
        inv_det_jet,
    })
}

/// The Bezoutian matrix `H(z, zeta)` with
/// `p_j(z) - p_j(zeta) = sum_k (z_k - zeta_k) h_jk(z, zeta)`, for a concrete `zeta`.
///
/// Built by telescoping: `h_jk` is the exact quotient of
/// `p_j(zeta_1..zeta_{k-1}, z_k, ..) - p_j(zeta_1..zeta_k, z_{k+1}, ..)` by `z_k - zeta_k`.
pub fn bezoutian_at<F: Field>(system: &[MPoly<F>], zeta: &[F]) -> Result<Vec<Vec<MPoly<F>>>> {
    let n = check_square(system, zeta)?;
    Ok(system
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(n);
            let mut current = p.clone();
            for (k, zk) in zeta.iter().enumerate() {
                let next = current.substitute(k, zk);
                let (quotient, remainder) = (&current - &next).div_linear(k, zk);
                debug_assert!(!F::is_exact() || remainder.is_zero());
                row.push(quotient);
                current = next;
            }
            row
        })
        .collect())
}

/// `det H(z, zeta)`
pub fn bezoutian_det<F: Field>(system: &[MPoly<F>], zeta: &[F]) -> Result<MPoly<F>> {
    let h = bezoutian_at(system, zeta)?;
    Ok(poly_determinant(&h, system.len()))
}

/// `res_w(numerator / (p_1 ... p_n))`: the coefficient at `d - I` of the
/// truncated product of the numerator's jet with the jet of `1/det H_w`.
pub fn local_residue<F: Field>(numerator: &MPoly<F>, node: &Node<F>) -> Result<F> {
    check_arity(node.nvars(), numerator.nvars())?;
    let bound = node.order.box_bound();
    let product = series_mul_poly_truncated(numerator, &node.inv_det_jet, &bound)?;
    Ok(product
        .coeff(&bound)
        .cloned()
        .expect("bound lies in its own box"))
}

/// `res_w(1 / (p_1 ... p_n)) = 1 / J_p(w)` at a simple root.
pub fn simple_residue<F: Field>(system: &[MPoly<F>], point: &[F], tol: &Tolerance) -> Result<F> {
    check_square(system, point)?;
    let jac = jacobian_matrix(system, point)?;
    let det = determinant(&jac);
    let scale = row_scale(&jac);
    if scale == 0.0 || det.is_negligible(tol, scale) {
        return Err(Error::DegenerateRoot);
    }
    det.inv().map_err(|_| Error::DegenerateRoot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussianRational as Q;
    use crate::poly::jacobian_det;
    use crate::test_support::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn exact_tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn order_check_at_quadruple_root() {
        let sys = quartic_pair::<Q>();
        let w = [q(1), q(1)];
        let d = OrderVector::new(MultiIndex::from([2, 2])).unwrap();
        let report = check_zero_order(&sys, &w, &d, &exact_tol()).unwrap();
        assert!(report.vanishing_holds);
        assert_eq!(
            report.leading_matrix,
            vec![vec![q(2), q(2)], vec![q(2), q(-2)]]
        );
        assert_eq!(report.leading_det, q(-8));
        assert!(report.passed());
    }

    #[test]
    fn order_check_rejects_oversized_order() {
        let sys = quartic_pair::<Q>();
        let d = OrderVector::new(MultiIndex::from([3, 2])).unwrap();
        let report = check_zero_order(&sys, &[q(1), q(1)], &d, &exact_tol()).unwrap();
        assert!(!report.vanishing_holds);
        assert!(report
            .violations
            .iter()
            .any(|v| v.index == MultiIndex::from([2, 0])));
        assert!(matches!(
            power_decomposition(&sys, &[q(1), q(1)], &d, &exact_tol(), TieBreak::Min),
            Err(Error::OrderViolation { .. })
        ));
    }

    #[test]
    fn order_check_identity_map() {
        let sys = vec![MPoly::<Q>::var(2, 0), MPoly::var(2, 1)];
        let report =
            check_zero_order(&sys, &[q(0), q(0)], &OrderVector::simple(2), &exact_tol()).unwrap();
        assert!(report.passed());
        assert_eq!(
            report.leading_matrix,
            vec![vec![q(1), q(0)], vec![q(0), q(1)]]
        );
    }

    #[test]
    fn zero_order_entries_rejected() {
        assert!(matches!(
            OrderVector::new(MultiIndex::from([0, 2])),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn decomposition_at_quadruple_root() {
        let sys = quartic_pair::<Q>();
        let w = [q(1), q(1)];
        let d = OrderVector::new(MultiIndex::from([2, 2])).unwrap();
        let node = power_decomposition(&sys, &w, &d, &exact_tol(), TieBreak::Min).unwrap();

        let u2sq = MPoly::centered_monomial(&w, &MultiIndex::from([0, 2]));
        let one = MPoly::one(2);
        let expected = [
            vec![&one + &u2sq.scale(&Q::ratio(1, 3)), one.clone()],
            vec![&one + &u2sq.scale(&Q::ratio(2, 3)), -one.clone()],
        ];
        assert_eq!(node.matrix(), &expected[..]);
        assert_eq!(node.det(), &(&MPoly::constant(2, q(-2)) - &u2sq));
        assert_eq!(node.det_at_point(), &q(-2));
        let jet = node.inv_det_jet();
        assert_eq!(jet.coeff(&MultiIndex::from([0, 0])), Some(&Q::ratio(-1, 2)));
        assert_eq!(jet.coeff(&MultiIndex::from([1, 1])), Some(&q(0)));
    }

    #[test]
    fn monomial_system_gives_identity() {
        let sys = vec![
            MPoly::<Q>::monomial(MultiIndex::from([3, 0]), q(1)),
            MPoly::monomial(MultiIndex::from([0, 2]), q(1)),
        ];
        let d = OrderVector::new(MultiIndex::from([3, 2])).unwrap();
        let node =
            power_decomposition(&sys, &[q(0), q(0)], &d, &exact_tol(), TieBreak::Min).unwrap();
        assert_eq!(node.matrix()[0][0], MPoly::one(2));
        assert!(node.matrix()[0][1].is_zero());
        assert_eq!(node.det(), &MPoly::one(2));
    }

    #[test]
    fn simple_node_determinant_is_jacobian() {
        // circle and line meeting at (3/5, 4/5)
        let z1 = MPoly::<Q>::var(2, 0);
        let z2 = MPoly::<Q>::var(2, 1);
        let sys = vec![
            &(&(&z1 * &z1) + &(&z2 * &z2)) - &MPoly::one(2),
            &z2.scale(&q(3)) - &z1.scale(&q(4)),
        ];
        let w = [Q::ratio(3, 5), Q::ratio(4, 5)];
        let node = power_decomposition(
            &sys,
            &w,
            &OrderVector::simple(2),
            &exact_tol(),
            TieBreak::Min,
        )
        .unwrap();
        assert_eq!(node.det_at_point(), &jacobian_det(&sys, &w).unwrap());
    }

    #[test]
    fn degenerate_leading_matrix() {
        // p1 = p2 up to scaling: the leading matrix has rank one
        let z1 = MPoly::<Q>::var(2, 0);
        let z2 = MPoly::<Q>::var(2, 1);
        let p = &z1 + &z2;
        let sys = vec![p.clone(), p.scale(&q(2))];
        assert_eq!(
            power_decomposition(
                &sys,
                &[q(0), q(0)],
                &OrderVector::simple(2),
                &exact_tol(),
                TieBreak::Min
            )
            .unwrap_err(),
            Error::DegenerateLeadingMatrix
        );
        let report =
            check_zero_order(&sys, &[q(0), q(0)], &OrderVector::simple(2), &exact_tol()).unwrap();
        assert!(report.vanishing_holds && !report.leading_holds);
        assert_eq!(
            simple_residue(&sys, &[q(0), q(0)], &exact_tol()),
            Err(Error::DegenerateRoot)
        );
    }

    #[test]
    fn residues_at_quadruple_root() {
        let sys = quartic_pair::<Q>();
        let w = [q(1), q(1)];
        let d = OrderVector::new(MultiIndex::from([2, 2])).unwrap();
        let node = power_decomposition(&sys, &w, &d, &exact_tol(), TieBreak::Min).unwrap();
        assert_eq!(local_residue(&MPoly::one(2), &node).unwrap(), q(0));
        let h = MPoly::centered_monomial(&w, &MultiIndex::from([1, 1]));
        assert_eq!(local_residue(&h, &node).unwrap(), Q::ratio(-1, 2));
        let killed = MPoly::centered_monomial(&w, &MultiIndex::from([2, 0]));
        assert_eq!(local_residue(&killed, &node).unwrap(), q(0));
        assert!(matches!(
            local_residue(&MPoly::one(3), &node),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn tie_break_changes_matrix_not_residues() {
        let sys = quartic_pair::<Q>();
        let w = [q(1), q(1)];
        let d = OrderVector::new(MultiIndex::from([2, 2])).unwrap();
        let lo = power_decomposition(&sys, &w, &d, &exact_tol(), TieBreak::Min).unwrap();
        let hi = power_decomposition(&sys, &w, &d, &exact_tol(), TieBreak::Max).unwrap();
        assert_ne!(lo.det(), hi.det());
        for a in MultiIndex::from([3, 3]).box_iter() {
            let num = MPoly::centered_monomial(&w, &a);
            assert_eq!(
                local_residue(&num, &lo).unwrap(),
                local_residue(&num, &hi).unwrap()
            );
        }
    }

    #[test]
    fn simple_residue_examples() {
        let sys = vec![
            MPoly::<Q>::var(2, 0).scale(&q(2)),
            MPoly::var(2, 1).scale(&q(3)),
        ];
        assert_eq!(
            simple_residue(&sys, &[q(0), q(0)], &exact_tol()).unwrap(),
            Q::ratio(1, 6)
        );
    }

    #[test]
    fn simple_residue_at_irrational_root() {
        let sys = quartic_pair::<Complex64>();
        let w = simple_roots()[0].clone();
        let r = simple_residue(&sys, &w, &Tolerance::default()).unwrap();
        let expected = Field::inv(&Complex64::new(0.0, 16.0 * 3f64.sqrt())).unwrap();
        assert!((r - expected).norm() <= 1e-9 * expected.norm());
    }

    #[test]
    fn bezoutian_of_pure_squares() {
        let sys = vec![
            MPoly::<Q>::monomial(MultiIndex::from([2, 0]), q(1)),
            MPoly::monomial(MultiIndex::from([0, 2]), q(1)),
        ];
        let h = bezoutian_at(&sys, &[q(1), q(1)]).unwrap();
        assert_eq!(h[0][0], &MPoly::var(2, 0) + &MPoly::one(2));
        assert!(h[0][1].is_zero() && h[1][0].is_zero());
        assert_eq!(h[1][1], &MPoly::var(2, 1) + &MPoly::one(2));
    }

    #[test]
    fn bezoutian_vanishes_across_simple_roots() {
        let sys = quartic_pair::<Complex64>();
        let roots = simple_roots();
        let det = bezoutian_det(&sys, &roots[0]).unwrap();
        let jac = jacobian_det(&sys, &roots[0]).unwrap();
        assert!((det.evaluate(&roots[0]).unwrap() - jac).norm() <= 1e-9 * jac.norm());
        for other in &roots[1..] {
            assert!(det.evaluate(other).unwrap().norm() < 1e-9);
        }
        // also at the quadruple root
        let w0 = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(det.evaluate(&w0).unwrap().norm() < 1e-9);
    }

    proptest! {
        #[test]
        fn decomposition_identity_and_leading_consistency(case in arb_admissible_node(2, 2)) {
            let (sys, w, d) = case;
            let node = power_decomposition(&sys, &w, &d, &exact_tol(), TieBreak::Min).unwrap();
            let n = w.len();
            for (i, p) in sys.iter().enumerate() {
                let mut acc = MPoly::zero(n);
                for k in 0..n {
                    let pow = MPoly::centered_monomial(&w, &MultiIndex::unit(n, k, d.as_index().get(k)));
                    acc = &acc + &(&node.matrix()[i][k] * &pow);
                }
                prop_assert_eq!(&acc, p);
            }
            let report = check_zero_order(&sys, &w, &d, &exact_tol()).unwrap();
            let fact = Q::from_bigint(&d.as_index().factorial());
            prop_assert_eq!(node.det_at_point().clone() * fact, report.leading_det);
        }

        #[test]
        fn bezoutian_diagonal_is_jacobian(sys in arb_system(2, 3), zeta in arb_point(2)) {
            let det = bezoutian_det(&sys, &zeta).unwrap();
            prop_assert_eq!(det.evaluate(&zeta).unwrap(), jacobian_det(&sys, &zeta).unwrap());
            for (j, p) in sys.iter().enumerate() {
                let h = bezoutian_at(&sys, &zeta).unwrap();
                let mut acc = MPoly::constant(2, p.evaluate(&zeta).unwrap());
                for k in 0..2 {
                    let lin = &MPoly::var(2, k) - &MPoly::constant(2, zeta[k].clone());
                    acc = &acc + &(&lin * &h[j][k]);
                }
                prop_assert_eq!(&acc, p);
            }
        }
    }
}
