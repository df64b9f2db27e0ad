//! Brute-force cross-checks that share nothing with the residue pipeline
//! beyond polynomial arithmetic: a dense linear solve for interpolants,
//! factorized residues of separable systems and finite differences.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::interpolation::InterpProblem;
use crate::numeric::{Field, Tolerance};
use crate::poly::{binomial, falling_factorial, MPoly, MultiIndex};

/// Componentwise box `(cap, ..., cap)`; with `cap` the interpolation degree
/// cap every residue-formula solution fits in it.
pub fn default_basis_box(nvars: usize, cap: u32) -> MultiIndex {
    MultiIndex::new(vec![cap; nvars])
}

/// Solves `d^l (sum_b x_b z^b) / dz^l (w) = c_{w,l}` over monomials `b <=
/// basis_box` by Gauss-Jordan elimination. Free unknowns are set to zero.
pub fn brute_force_interpolant<F: Field>(
    problem: &InterpProblem<F>,
    basis_box: &MultiIndex,
) -> Result<MPoly<F>> {
    let n = problem.nvars();
    if basis_box.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: basis_box.len(),
        });
    }
    let basis: Vec<MultiIndex> = basis_box.box_iter().collect();
    let mut rows = Vec::new();
    for node in problem.nodes() {
        for (l, c) in &node.values {
            let mut row: Vec<F> = basis
                .iter()
                .map(|b| monomial_derivative_at(b, l, &node.point))
                .collect();
            row.push(c.clone());
            rows.push(row);
        }
    }
    let x = solve(rows, basis.len(), problem.tolerance())?;
    Ok(MPoly::from_terms(n, basis.into_iter().zip(x)))
}

/// `d^l z^b / dz^l` at `w`, from falling factorials.
fn monomial_derivative_at<F: Field>(b: &MultiIndex, l: &MultiIndex, w: &[F]) -> F {
    let mut v = F::one();
    for ((&bk, &lk), wk) in b.as_slice().iter().zip(l.as_slice()).zip(w) {
        if lk > bk {
            return F::zero();
        }
        v = v * F::from_bigint(&falling_factorial(bk, lk)) * wk.pow(bk - lk);
    }
    v
}

fn solve<F: Field>(mut rows: Vec<Vec<F>>, unknowns: usize, tol: &Tolerance) -> Result<Vec<F>> {
    let scale = rows
        .iter()
        .flat_map(|r| r[..unknowns].iter())
        .map(F::magnitude)
        .fold(0.0, f64::max);
    let negligible = |x: &F, s: f64| {
        if F::is_exact() {
            x.is_zero()
        } else {
            tol.admits(x.magnitude(), s)
        }
    };

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        if r == rows.len() {
            break;
        }
        let candidates = r..rows.len();
        let best = if F::is_exact() {
            candidates.clone().find(|&i| !rows[i][col].is_zero())
        } else {
            candidates.clone().max_by(|&a, &b| {
                rows[a][col]
                    .magnitude()
                    .total_cmp(&rows[b][col].magnitude())
            })
        };
        let Some(p) = best.filter(|&p| !negligible(&rows[p][col], scale)) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv()?;
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        pivots.push(col);
        r += 1;
    }
    for (i, row) in rows.iter().enumerate().skip(r) {
        let rhs = &row[unknowns];
        if !negligible(rhs, rhs.magnitude().max(1.0)) {
            return Err(Error::OracleUnsolvable(format!(
                "equation {i} is inconsistent (residual {:e})",
                rhs.magnitude()
            )));
        }
    }
    let mut x = vec![F::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][unknowns].clone();
    }
    Ok(x)
}

/// `res_w((z-w)^a / p)` for a system with `p_i = p_i(z_i)`, as the product of
/// one-variable residues. Each `p_i` must vanish to order exactly `d_i` at `w_i`.
pub fn separable_residue<F: Field>(
    system: &[MPoly<F>],
    point: &[F],
    order: &MultiIndex,
    numerator: &MultiIndex,
) -> Result<F> {
    let n = system.len();
    for len in [point.len(), order.len(), numerator.len()] {
        if len != n {
            return Err(Error::Arity {
                expected: n,
                got: len,
            });
        }
    }
    let mut product = F::one();
    for (i, p) in system.iter().enumerate() {
        if p.nvars() != n {
            return Err(Error::Arity {
                expected: n,
                got: p.nvars(),
            });
        }
        let mut coeffs = Vec::new();
        for (e, c) in p.terms() {
            if (0..n).any(|k| k != i && e.get(k) != 0) {
                return Err(Error::NotSeparable(i));
            }
            let deg = e.get(i) as usize;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, F::zero());
            }
            coeffs[deg] = c.clone();
        }
        product = product * univariate_residue(&coeffs, &point[i], order.get(i), numerator.get(i))?;
    }
    Ok(product)
}

/// `res_w((z-w)^a / q)` where `q = sum_j coeffs[j] z^j = (z-w)^d g`, `g(w) != 0`.
fn univariate_residue<F: Field>(coeffs: &[F], w: &F, d: u32, a: u32) -> Result<F> {
    // coefficients of q(w + u) by the binomial theorem
    let mut local = vec![F::zero(); coeffs.len()];
    for (j, c) in coeffs.iter().enumerate() {
        for (m, slot) in local.iter_mut().enumerate().take(j + 1) {
            let b = F::from_bigint(&binomial(j as u32, m as u32));
            *slot = slot.clone() + c.clone() * b * w.pow((j - m) as u32);
        }
    }
    let d = d as usize;
    if local.len() <= d
        || local[..d]
            .iter()
            .any(|c| !c.is_zero() && c.magnitude() > 1e-12)
    {
        return Err(Error::OracleUnsolvable(format!(
            "factor does not vanish to order exactly {d}"
        )));
    }
    let g = &local[d..];
    if a as usize >= d {
        return Ok(F::zero());
    }
    // coefficient of u^(d-1-a) in 1/g
    let want = d - 1 - a as usize;
    let g0_inv = g[0]
        .checked_inv()
        .ok_or_else(|| Error::OracleUnsolvable(format!("factor vanishes to order above {d}")))?;
    let mut inv = vec![g0_inv.clone()];
    for m in 1..=want {
        let mut acc = F::zero();
        for j in 1..=m.min(g.len() - 1) {
            acc = acc + g[j].clone() * inv[m - j].clone();
        }
        inv.push(-(g0_inv.clone() * acc));
    }
    Ok(inv[want].clone())
}

/// Central-difference estimate of `d^l f / dz^l (w)` along real directions,
/// one tensor-product stencil of width `l_k` per variable.
pub fn fd_derivative(
    f: &MPoly<Complex64>,
    point: &[Complex64],
    order: &MultiIndex,
    h: f64,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let offsets = order.box_iter();
    for j in offsets {
        let mut weight = 1.0;
        let mut at = point.to_vec();
        for (k, x) in at.iter_mut().enumerate() {
            let m = order.get(k);
            let jk = j.get(k);
            let c = binomial(m, jk).to_f64().unwrap_or(f64::NAN);
            if jk % 2 == 1 {
                weight = -weight;
            }
            weight *= c;
            *x += Complex64::new((m as f64 / 2.0 - jk as f64) * h, 0.0);
        }
        let v = f.evaluate(&at).expect("point arity matches polynomial");
        total += v * weight;
    }
    total / h.powi(order.total() as i32)
}
