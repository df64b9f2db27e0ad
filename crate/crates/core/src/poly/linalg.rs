//! Small dense determinants, scalar and polynomial.

use super::{MPoly, MultiIndex};
use crate::error::{check_arity, Result};
use crate::numeric::Field;

/// Determinant of a square matrix. Exact fields use fraction-free
/// (Bareiss) elimination, float fields partial pivoting.
pub fn determinant<F: Field>(matrix: &[Vec<F>]) -> F {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix is not square");
    if n == 0 {
        return F::one();
    }
    let mut a: Vec<Vec<F>> = matrix.to_vec();
    if F::is_exact() {
        bareiss(&mut a)
    } else {
        partial_pivot(&mut a)
    }
}

fn bareiss<F: Field>(a: &mut [Vec<F>]) -> F {
    let n = a.len();
    let mut sign = F::one();
    let mut prev = F::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return F::zero(),
            }
        }
        let prev_inv = prev.inv().expect("previous Bareiss pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v * prev_inv.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn partial_pivot<F: Field>(a: &mut [Vec<F>]) -> F {
    let n = a.len();
    let mut det = F::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].magnitude().total_cmp(&a[y][k].magnitude()))
            .expect("non-empty range");
        if a[p][k].is_zero() {
            return F::zero();
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot_inv = a[k][k].inv().expect("nonzero pivot");
        for i in k + 1..n {
            let factor = a[i][k].clone() * pivot_inv.clone();
            if factor.is_zero() {
                continue;
            }
            let (upper, lower) = a.split_at_mut(i);
            for (v, pivot) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *v = v.clone() - factor.clone() * pivot.clone();
            }
        }
        det = det * a[k][k].clone();
    }
    det
}

/// Determinant of a polynomial matrix by cofactor expansion along the
/// first row.
pub fn poly_determinant<F: Field>(matrix: &[Vec<MPoly<F>>], nvars: usize) -> MPoly<F> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix is not square");
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    cofactor(matrix, &rows, &cols, nvars)
}

fn cofactor<F: Field>(
    m: &[Vec<MPoly<F>>],
    rows: &[usize],
    cols: &[usize],
    nvars: usize,
) -> MPoly<F> {
    match rows.len() {
        0 => MPoly::one(nvars),
        1 => m[rows[0]][cols[0]].clone(),
        _ => {
            let r = rows[0];
            let mut acc = MPoly::zero(nvars);
            for (j, &c) in cols.iter().enumerate() {
                if m[r][c].is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = cofactor(m, &rows[1..], &sub_cols, nvars);
                let term = &m[r][c] * &minor;
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Matrix of first partials `d p_i / d z_k` at `point`.
pub fn jacobian_matrix<F: Field>(system: &[MPoly<F>], point: &[F]) -> Result<Vec<Vec<F>>> {
    let n = system.len();
    check_arity(n, point.len())?;
    system
        .iter()
        .map(|p| {
            check_arity(n, p.nvars())?;
            (0..n)
                .map(|k| {
                    p.partial_derivative(&MultiIndex::unit(n, k, 1))
                        .evaluate(point)
                })
                .collect()
        })
        .collect()
}

/// `J_p(point)`
pub fn jacobian_det<F: Field>(system: &[MPoly<F>], point: &[F]) -> Result<F> {
    Ok(determinant(&jacobian_matrix(system, point)?))
}
