//! Interpolants built from residues, and their verification.
//!
//! For a node `w` with orders `d` and data `c_{w,l}` (`0 <= l <= d - I`), the
//! Hermite interpolant is
//!
//! ```text
//! f(z) = sum_w det H_w(z) * sum_{l <= d-I} sum_{k <= d-I-l}
//!            c_{w,l} / l! * (z-w)^(l+k) * res_w((z-w)^(d-I-k) / p^I)
//! ```
//!
//! where `l! = l_1! ... l_n!`. The Lagrange variant for simple nodes uses the
//! Bezoutian instead: `f(z) = sum_w c_w det H(z, w) / J_p(w)`.

use std::collections::BTreeMap;

use crate::error::{check_arity, Error, Result};
use crate::numeric::{approx_eq, Field, Tolerance};
use crate::poly::{MPoly, MultiIndex, TruncSeries};
use crate::residue::{
    bezoutian_det, local_residue, power_decomposition, simple_residue, Node, OrderVector, TieBreak,
};

/// One interpolation node: a zero of the system, its orders and the
/// prescribed derivatives `c_{w,l}` on the box `0 <= l <= d - I`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeData<F> {
    pub point: Vec<F>,
    pub order: OrderVector,
    pub values: BTreeMap<MultiIndex, F>,
}

impl<F: Field> NodeData<F> {
    pub fn new(point: Vec<F>, order: OrderVector, values: BTreeMap<MultiIndex, F>) -> Self {
        NodeData {
            point,
            order,
            values,
        }
    }

    /// A simple node with the single value `value`.
    pub fn simple(point: Vec<F>, value: F) -> Self {
        let n = point.len();
        let values = BTreeMap::from([(MultiIndex::zeros(n), value)]);
        NodeData::new(point, OrderVector::simple(n), values)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpProblem<F: Field> {
    system: Vec<MPoly<F>>,
    nodes: Vec<NodeData<F>>,
    tolerance: Tolerance,
}

impl<F: Field> InterpProblem<F> {
    /// Validates arities, data boxes and pairwise distinctness of nodes.
    pub fn new(
        system: Vec<MPoly<F>>,
        nodes: Vec<NodeData<F>>,
        tolerance: Tolerance,
    ) -> Result<Self> {
        let n = system.len();
        for p in &system {
            check_arity(n, p.nvars())?;
        }
        for (j, node) in nodes.iter().enumerate() {
            check_arity(n, node.point.len())?;
            check_arity(n, node.order.len())?;
            let bound = node.order.box_bound();
            let complete = node.values.len() == node.order.multiplicity()
                && node
                    .values
                    .keys()
                    .all(|l| l.len() == n && l.fits_in(&bound));
            if !complete {
                return Err(Error::DataShape(format!(
                    "node {j}: values must cover exactly the box 0..={bound}"
                )));
            }
            for other in &nodes[..j] {
                let same = node
                    .point
                    .iter()
                    .zip(&other.point)
                    .all(|(a, b)| approx_eq(a, b, &tolerance));
                if same {
                    return Err(Error::DuplicateNode(j));
                }
            }
        }
        Ok(InterpProblem {
            system,
            nodes,
            tolerance,
        })
    }

    pub fn system(&self) -> &[MPoly<F>] {
        &self.system
    }

    pub fn nodes(&self) -> &[NodeData<F>] {
        &self.nodes
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tolerance
    }

    pub fn nvars(&self) -> usize {
        self.system.len()
    }

    /// Same system and nodes, different data.
    pub fn with_values(&self, values: Vec<BTreeMap<MultiIndex, F>>) -> Result<Self> {
        check_arity(self.nodes.len(), values.len())?;
        let nodes = self
            .nodes
            .iter()
            .zip(values)
            .map(|(node, v)| NodeData::new(node.point.clone(), node.order.clone(), v))
            .collect();
        InterpProblem::new(self.system.clone(), nodes, self.tolerance)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HermiteOptions {
    pub tie_break: TieBreak,
    /// Keep each node's term of the sum in [`Interpolant::contributions`].
    pub keep_contributions: bool,
}

#[derive(Debug, Clone)]
pub struct Interpolant<F: Field> {
    pub poly: MPoly<F>,
    /// Per-node terms in node order; empty unless requested.
    pub contributions: Vec<MPoly<F>>,
    /// `max_w [deg det H_w + 2 |d_w - I|]`, an upper bound on `deg poly`.
    pub degree_cap: u32,
}

/// The node's term `det H_w(z) * [ ... ]` of the Hermite sum.
pub fn node_contribution<F: Field>(
    node: &Node<F>,
    values: &BTreeMap<MultiIndex, F>,
) -> Result<MPoly<F>> {
    let n = node.nvars();
    let w = node.point();
    let bound = node.order().box_bound();

    // res_w((z-w)^(d-I-k) / p^I) for every k in the box
    let mut residues = BTreeMap::new();
    for k in bound.box_iter() {
        let rest = bound.checked_sub(&k).expect("k <= bound");
        let numerator = MPoly::centered_monomial(w, &rest);
        residues.insert(k, local_residue(&numerator, node)?);
    }

    let mut bracket = MPoly::zero(n);
    for (l, c) in values {
        if c.is_zero() {
            continue;
        }
        let weight = c.div(&F::from_bigint(&l.factorial()))?;
        let room = bound.checked_sub(l).expect("data index inside box");
        for k in room.box_iter() {
            let h = &residues[&k];
            if h.is_zero() {
                continue;
            }
            bracket = &bracket + &MPoly::monomial(l.add(&k), weight.clone() * h.clone());
        }
    }
    let back: Vec<F> = w.iter().map(|x| -x.clone()).collect();
    let bracket = bracket.taylor_shift(&back)?;
    Ok(node.det() * &bracket)
}

pub fn hermite_interpolate<F: Field>(problem: &InterpProblem<F>) -> Result<MPoly<F>> {
    hermite_interpolate_with(problem, &HermiteOptions::default()).map(|i| i.poly)
}

pub fn hermite_interpolate_with<F: Field>(
    problem: &InterpProblem<F>,
    options: &HermiteOptions,
) -> Result<Interpolant<F>> {
    let n = problem.nvars();
    let mut poly = MPoly::zero(n);
    let mut contributions = Vec::new();
    let mut degree_cap = 0;
    for data in &problem.nodes {
        let node = power_decomposition(
            &problem.system,
            &data.point,
            &data.order,
            &problem.tolerance,
            options.tie_break,
        )?;
        let part = node_contribution(&node, &data.values)?;
        let spread = 2 * data.order.box_bound().total();
        degree_cap = degree_cap.max(node.det().total_degree().unwrap_or(0) + spread);
        poly = &poly + &part;
        if options.keep_contributions {
            contributions.push(part);
        }
    }
    debug_assert!(poly.total_degree().unwrap_or(0) <= degree_cap);
    Ok(Interpolant {
        poly,
        contributions,
        degree_cap,
    })
}

/// Lagrange interpolation at simple nodes through the Bezoutian.
pub fn lagrange_interpolate<F: Field>(problem: &InterpProblem<F>) -> Result<MPoly<F>> {
    let n = problem.nvars();
    let mut f = MPoly::zero(n);
    for (j, data) in problem.nodes.iter().enumerate() {
        if !data.order.is_simple() {
            return Err(Error::DataShape(format!(
                "node {j}: Lagrange interpolation needs simple nodes"
            )));
        }
        let value = data.values[&MultiIndex::zeros(n)].clone();
        let residue = simple_residue(&problem.system, &data.point, &problem.tolerance)?;
        let det = bezoutian_det(&problem.system, &data.point)?;
        f = &f + &det.scale(&(value * residue));
    }
    Ok(f)
}

/// One-variable Hermite interpolation at `roots[j] = (w_j, mu_j)` with
/// `data[j][l] = f^(l)(w_j)`, through residues of `1 / prod (z - w_j)^mu_j`.
pub fn univariate_hermite<F: Field>(roots: &[(F, u32)], data: &[Vec<F>]) -> Result<MPoly<F>> {
    check_arity(roots.len(), data.len())?;
    for (j, (w, mu)) in roots.iter().enumerate() {
        if *mu == 0 {
            return Err(Error::InvalidOrder(MultiIndex::from([0])));
        }
        if data[j].len() != *mu as usize {
            return Err(Error::DataShape(format!(
                "root {j}: expected {mu} values, got {}",
                data[j].len()
            )));
        }
        if roots[..j].iter().any(|(v, _)| v == w) {
            return Err(Error::DuplicateNode(j));
        }
    }
    let z = MPoly::var(1, 0);
    let linear = |w: &F| &z - &MPoly::constant(1, w.clone());

    let mut f = MPoly::zero(1);
    for (j, (w, mu)) in roots.iter().enumerate() {
        // cofactor p(z) / (z - w_j)^mu_j
        let mut cofactor = MPoly::one(1);
        for (i, (v, nu)) in roots.iter().enumerate() {
            if i != j {
                for _ in 0..*nu {
                    cofactor = &cofactor * &linear(v);
                }
            }
        }
        // res_w((z-w)^(mu-1-s) / p) is the coefficient of (z-w)^s in 1/cofactor
        let bound = MultiIndex::from([mu - 1]);
        let inv = TruncSeries::jet(&cofactor, std::slice::from_ref(w), bound)?.invert()?;
        let mut bracket = MPoly::zero(1);
        for (l, c) in data[j].iter().enumerate() {
            let l = l as u32;
            let weight = c.div(&F::from_bigint(&crate::poly::factorial(l)))?;
            for s in 0..(mu - l) {
                let r = inv
                    .coeff(&MultiIndex::from([s]))
                    .expect("inside box")
                    .clone();
                bracket =
                    &bracket + &MPoly::monomial(MultiIndex::from([l + s]), weight.clone() * r);
            }
        }
        let bracket = bracket.taylor_shift(&[-w.clone()])?;
        f = &f + &(&cofactor * &bracket);
    }
    Ok(f)
}

/// Derivatives `d^l g / dz^l (point)` on the box of `order`, i.e. data that
/// `g` itself interpolates.
pub fn derivative_data<F: Field>(
    g: &MPoly<F>,
    point: &[F],
    order: &OrderVector,
) -> Result<BTreeMap<MultiIndex, F>> {
    order
        .box_bound()
        .box_iter()
        .map(|l| {
            let v = g.partial_derivative(&l).evaluate(point)?;
            Ok((l, v))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyEntry<F> {
    pub node: usize,
    pub index: MultiIndex,
    pub target: F,
    pub achieved: F,
    pub deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<F> {
    pub entries: Vec<VerifyEntry<F>>,
    pub passed: bool,
    pub max_deviation: f64,
}

impl<F> VerifyReport<F> {
    pub fn failures(&self) -> impl Iterator<Item = &VerifyEntry<F>> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

/// Checks every condition `d^l f / dz^l (w) = c_{w,l}` of the problem.
/// Float comparisons use the problem tolerance with scale `max(1, |c|)`.
pub fn verify_interpolation<F: Field>(f: &MPoly<F>, problem: &InterpProblem<F>) -> VerifyReport<F> {
    let tol = problem.tolerance;
    let mut entries = Vec::new();
    for (j, data) in problem.nodes.iter().enumerate() {
        for (l, target) in &data.values {
            let achieved = f
                .partial_derivative(l)
                .evaluate(&data.point)
                .expect("problem arity validated");
            let deviation = (achieved.clone() - target.clone()).magnitude();
            let passed = if F::is_exact() {
                achieved == *target
            } else {
                tol.admits(deviation, target.magnitude().max(1.0))
            };
            entries.push(VerifyEntry {
                node: j,
                index: l.clone(),
                target: target.clone(),
                achieved,
                deviation,
                passed,
            });
        }
    }
    VerifyReport {
        passed: entries.iter().all(|e| e.passed),
        max_deviation: entries.iter().map(|e| e.deviation).fold(0.0, f64::max),
        entries,
    }
}
