#![allow(dead_code)]

use std::collections::BTreeMap;

use algebraic_interp::cli::ProblemFile;
use algebraic_interp::interpolation::{InterpProblem, NodeData};
use algebraic_interp::poly::determinant;
use algebraic_interp::residue::OrderVector;
use algebraic_interp::{
    Complex64, ExactPoly, ExactProblem, Field, FloatPoly, GaussianRational as Q, MPoly, MultiIndex,
    Tolerance,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn load_exact(name: &str) -> ExactProblem {
    ProblemFile::from_json(&fixture(name))
        .unwrap()
        .decode()
        .unwrap()
}

pub fn load_float(name: &str) -> InterpProblem<Complex64> {
    ProblemFile::from_json(&fixture(name))
        .unwrap()
        .decode()
        .unwrap()
}

/// Small nonzero-denominator rational with numerator in `-span..=span`.
pub fn small_q(rng: &mut ChaCha8Rng, span: i64) -> Q {
    Q::ratio(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

fn linear(n: usize, var: usize, root: &Q) -> ExactPoly {
    &MPoly::var(n, var) - &MPoly::constant(n, root.clone())
}

/// A one-variable factor `prod_j (z_var - r_j)^{m_j}` with its roots.
pub struct Factor {
    pub poly: ExactPoly,
    pub roots: Vec<(Q, u32)>,
}

fn random_factor(rng: &mut ChaCha8Rng, n: usize, var: usize, max_degree: u32) -> Factor {
    let mut pool: Vec<i64> = (-3..=3).collect();
    pool.shuffle(rng);
    let mut roots = Vec::new();
    let mut degree = 0;
    for r in pool {
        let root = Q::ratio(r, rng.gen_range(1..=2));
        if roots.iter().any(|(s, _)| *s == root) {
            continue;
        }
        let m = rng.gen_range(1..=max_degree - degree);
        roots.push((root, m));
        degree += m;
        if degree == max_degree || rng.gen_bool(0.4) {
            break;
        }
    }
    let mut poly = MPoly::one(n);
    for (r, m) in &roots {
        for _ in 0..*m {
            poly = &poly * &linear(n, var, r);
        }
    }
    Factor { poly, roots }
}

/// `p = (A + B(z)) (q_1(z_1), ..., q_n(z_n))^T` with `A` constant, `B` of
/// degree one and every `q_k` a product of linear factors. Its zeros form the
/// grid of root tuples, the order at `(r_{1 j_1}, ..., r_{n j_n})` being the
/// tuple of multiplicities, provided `A + B` stays invertible on the grid.
pub struct GridSystem {
    pub system: Vec<ExactPoly>,
    pub factors: Vec<Factor>,
    pub mixer: Vec<Vec<ExactPoly>>,
}

impl GridSystem {
    pub fn nodes(&self) -> Vec<(Vec<Q>, OrderVector)> {
        let n = self.factors.len();
        let shape = MultiIndex::new(
            self.factors
                .iter()
                .map(|f| f.roots.len() as u32 - 1)
                .collect(),
        );
        shape
            .box_iter()
            .map(|j| {
                let point = (0..n)
                    .map(|k| self.factors[k].roots[j.get(k) as usize].0.clone())
                    .collect();
                let d = (0..n)
                    .map(|k| self.factors[k].roots[j.get(k) as usize].1)
                    .collect();
                (point, OrderVector::new(MultiIndex::new(d)).unwrap())
            })
            .collect()
    }
}

pub fn grid_system(rng: &mut ChaCha8Rng, n: usize, max_factor_degree: u32) -> GridSystem {
    loop {
        let factors: Vec<Factor> = (0..n)
            .map(|k| random_factor(rng, n, k, max_factor_degree))
            .collect();
        let mixer: Vec<Vec<ExactPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let mut h = MPoly::constant(n, small_q(rng, 3));
                        if i == k {
                            h = &h + &MPoly::constant(n, q(4));
                        }
                        if rng.gen_bool(0.5) {
                            let v = rng.gen_range(0..n);
                            h = &h + &MPoly::var(n, v).scale(&small_q(rng, 1));
                        }
                        h
                    })
                    .collect()
            })
            .collect();
        let system: Vec<ExactPoly> = (0..n)
            .map(|i| {
                (0..n).fold(MPoly::zero(n), |acc, k| {
                    &acc + &(&mixer[i][k] * &factors[k].poly)
                })
            })
            .collect();
        let grid = GridSystem {
            system,
            factors,
            mixer,
        };
        let regular = grid.nodes().iter().all(|(w, _)| {
            let m: Vec<Vec<Q>> = grid
                .mixer
                .iter()
                .map(|row| row.iter().map(|h| h.evaluate(w).unwrap()).collect())
                .collect();
            !determinant(&m).is_zero()
        });
        if regular {
            return grid;
        }
    }
}

pub fn random_values(rng: &mut ChaCha8Rng, order: &OrderVector) -> BTreeMap<MultiIndex, Q> {
    order
        .box_bound()
        .box_iter()
        .map(|l| (l, small_q(rng, 9)))
        .collect()
}

/// A random exact problem on up to `max_nodes` grid nodes.
pub fn grid_problem(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_factor_degree: u32,
    max_nodes: usize,
) -> ExactProblem {
    let grid = grid_system(rng, n, max_factor_degree);
    let mut nodes = grid.nodes();
    nodes.shuffle(rng);
    nodes.truncate(max_nodes);
    let data = nodes
        .into_iter()
        .map(|(w, d)| {
            let v = random_values(rng, &d);
            NodeData::new(w, d, v)
        })
        .collect();
    InterpProblem::new(grid.system, data, Tolerance::default()).unwrap()
}

/// `p_i = (z_i - w_i)^{d_i} g_i(z_i)` with `g_i(w_i) != 0`.
pub fn separable_system(rng: &mut ChaCha8Rng, n: usize) -> (Vec<ExactPoly>, Vec<Q>, MultiIndex) {
    let w: Vec<Q> = (0..n).map(|_| small_q(rng, 3)).collect();
    let d = MultiIndex::new((0..n).map(|_| rng.gen_range(1..=3)).collect());
    let system = (0..n)
        .map(|i| {
            let mut p = MPoly::one(n);
            for _ in 0..d.get(i) {
                p = &p * &linear(n, i, &w[i]);
            }
            let mut g = MPoly::constant(n, small_q(rng, 4));
            while g.evaluate(&w).unwrap().is_zero() {
                g = MPoly::constant(n, small_q(rng, 4));
            }
            for e in 1..=rng.gen_range(0..=3u32) {
                g = &g + &MPoly::monomial(MultiIndex::unit(n, i, e), small_q(rng, 3));
            }
            if g.evaluate(&w).unwrap().is_zero() {
                g = &g + &MPoly::one(n);
            }
            &p * &g
        })
        .collect();
    (system, w, d)
}

fn c(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

/// Solves a dense complex linear system by Cramer's rule (n <= 3).
fn cramer(a: &[Vec<Complex64>], b: &[Complex64]) -> Vec<Complex64> {
    let det = determinant(a);
    (0..a.len())
        .map(|k| {
            let m: Vec<Vec<Complex64>> = a
                .iter()
                .zip(b)
                .map(|(row, bi)| {
                    let mut r = row.clone();
                    r[k] = *bi;
                    r
                })
                .collect();
            determinant(&m) / det
        })
        .collect()
}

/// `p_i = prod_j L_{ij}(z)` with two random affine forms per equation; every
/// choice of one form per equation meets in one simple root.
pub fn linear_form_system(rng: &mut ChaCha8Rng, n: usize) -> (Vec<FloatPoly>, Vec<Vec<Complex64>>) {
    loop {
        let forms: Vec<Vec<(Vec<Complex64>, Complex64)>> = (0..n)
            .map(|_| {
                (0..2)
                    .map(|_| ((0..n).map(|_| c(rng)).collect(), c(rng)))
                    .collect()
            })
            .collect();
        let system: Vec<FloatPoly> = forms
            .iter()
            .map(|pair| {
                pair.iter().fold(MPoly::one(n), |acc, (a, b)| {
                    let form = (0..n).fold(MPoly::constant(n, *b), |s, k| {
                        &s + &MPoly::var(n, k).scale(&a[k])
                    });
                    &acc * &form
                })
            })
            .collect();
        let mut roots = Vec::new();
        let mut well_posed = true;
        for choice in MultiIndex::ones(n).box_iter() {
            let rows: Vec<Vec<Complex64>> = (0..n)
                .map(|i| forms[i][choice.get(i) as usize].0.clone())
                .collect();
            let rhs: Vec<Complex64> = (0..n)
                .map(|i| -forms[i][choice.get(i) as usize].1)
                .collect();
            if determinant(&rows).norm() < 0.3 {
                well_posed = false;
                break;
            }
            roots.push(cramer(&rows, &rhs));
        }
        let separated = roots.iter().enumerate().all(|(i, a)| {
            roots[..i].iter().all(|b| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max)
                    > 0.05
            })
        });
        // the second form of each equation must not vanish at roots of the first
        let simple = roots.iter().all(|w| {
            algebraic_interp::poly::jacobian_det(&system, w)
                .unwrap()
                .norm()
                > 1e-3
        });
        if well_posed && separated && simple {
            return (system, roots);
        }
    }
}

/// Natural rounding scale for evaluating `p` at `z`: `sum |c_b| |z^b|`.
pub fn eval_scale(p: &FloatPoly, z: &[Complex64]) -> f64 {
    p.terms()
        .map(|(e, c)| {
            e.as_slice()
                .iter()
                .zip(z)
                .fold(c.norm(), |acc, (&k, x)| acc * x.norm().powi(k as i32))
        })
        .sum::<f64>()
        .max(1.0)
}
