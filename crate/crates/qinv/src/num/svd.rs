//! Complex SVD via one-sided Jacobi, and SVD-truncated least squares.
//!
//! One-sided Jacobi was chosen over bidiagonalization because the matrices
//! here are small, the rotation sweep is deterministic, and orthogonality of
//! the computed factors comes out near machine precision. Convergence is
//! declared when every column pair passes `|a_p^H a_q| <= 1e-12 |a_p| |a_q|`;
//! the sweep cap is 100.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::num::{ComplexMatrix, ComplexVector};

const PAIR_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Thin SVD `A = U diag(s) V^H` with `s` sorted descending.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// m x k, orthonormal columns (k = min(m, n)).
    pub u: ComplexMatrix,
    /// Nonnegative, descending.
    pub singular_values: Vec<f64>,
    /// n x k, orthonormal columns.
    pub v: ComplexMatrix,
}

/// Thin SVD of a complex matrix. Errors if the Jacobi sweeps fail to
/// converge within the cap (the error carries the sweep count).
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::InvalidArgument("svd of empty matrix".into()));
    }
    if a.rows() < a.cols() {
        // Work on the conjugate transpose and swap factors back.
        let r = svd(&a.hermitian_transpose())?;
        return Ok(SvdResult {
            u: r.v,
            singular_values: r.singular_values,
            v: r.u,
        });
    }

    let m = a.rows();
    let n = a.cols();

    // Column-major working copies.
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..m).map(|i| a[(i, j)]).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            col[j] = Complex64::new(1.0, 0.0);
            col
        })
        .collect();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let (gpp, gqq, gpq) = column_grams(&cols[p], &cols[q]);
                if gpp == 0.0 || gqq == 0.0 {
                    continue;
                }
                let r = gpq.norm();
                if r <= PAIR_TOL * (gpp * gqq).sqrt() {
                    continue;
                }
                rotated = true;
                let beta = gpq / r;
                let tau = (gqq - gpp) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s, beta);
                rotate_pair(&mut v, p, q, c, s, beta);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SvdNoConvergence { sweeps: MAX_SWEEPS });
    }

    // Singular values are the column norms; sort descending (stable).
    let mut sigma: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap().then(i.cmp(&j)));
    let cols: Vec<Vec<Complex64>> = order.iter().map(|&i| cols[i].clone()).collect();
    let v: Vec<Vec<Complex64>> = order.iter().map(|&i| v[i].clone()).collect();
    sigma = order.iter().map(|&i| sigma[i]).collect();

    // Normalize left vectors; complete exactly-zero columns to an
    // orthonormal set deterministically from the canonical basis.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (j, col) in cols.iter().enumerate() {
        if sigma[j] > 0.0 {
            u_cols.push(col.iter().map(|e| e / sigma[j]).collect());
        } else {
            u_cols.push(orthonormal_completion(&u_cols, m));
        }
    }

    let u = ComplexMatrix::from_fn(m, n, |i, j| u_cols[j][i])?;
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[j][i])?;
    Ok(SvdResult {
        u,
        singular_values: sigma,
        v,
    })
}

fn column_grams(ap: &[Complex64], aq: &[Complex64]) -> (f64, f64, Complex64) {
    let mut gpp = 0.0;
    let mut gqq = 0.0;
    let mut gpq = Complex64::new(0.0, 0.0);
    for (x, y) in ap.iter().zip(aq) {
        gpp += x.norm_sqr();
        gqq += y.norm_sqr();
        gpq += x.conj() * y;
    }
    (gpp, gqq, gpq)
}

fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, beta: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    let ap = &mut head[p];
    let aq = &mut tail[0];
    let sb = beta * s;
    let sbc = beta.conj() * s;
    for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
        let new_p = *x * c - *y * sbc;
        let new_q = *x * sb + *y * c;
        *x = new_p;
        *y = new_q;
    }
}

fn norm(col: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for e in col {
        acc += e.norm_sqr();
    }
    acc.sqrt()
}

/// First canonical basis vector with a significant component outside the
/// span of `built`, Gram-Schmidt orthogonalized and normalized.
fn orthonormal_completion(built: &[Vec<Complex64>], m: usize) -> Vec<Complex64> {
    for k in 0..m {
        let mut w = vec![Complex64::new(0.0, 0.0); m];
        w[k] = Complex64::new(1.0, 0.0);
        for col in built {
            let mut proj = Complex64::new(0.0, 0.0);
            for (wi, ci) in w.iter().zip(col) {
                proj += ci.conj() * wi;
            }
            for (wi, ci) in w.iter_mut().zip(col) {
                *wi -= proj * ci;
            }
        }
        let nrm = norm(&w);
        if nrm > 0.5 {
            return w.iter().map(|e| e / nrm).collect();
        }
    }
    unreachable!("orthonormal completion always succeeds for k <= m columns")
}

/// Minimum-norm least-squares solution of `A x ~ b` via SVD truncation:
/// directions with singular value `<= rank_tol * sigma_max` are dropped.
pub fn lstsq_min_norm(
    a: &ComplexMatrix,
    b: &ComplexVector,
    rank_tol: f64,
) -> Result<ComplexVector> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "lstsq {}x{} vs rhs {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    if !(rank_tol > 0.0) {
        return Err(Error::InvalidArgument("rank_tol must be positive".into()));
    }
    let dec = svd(a)?;
    let sigma_max = dec.singular_values.first().copied().unwrap_or(0.0);
    let mut x = ComplexVector::zeros(a.cols());
    if sigma_max == 0.0 {
        return Ok(x);
    }
    for (k, &s) in dec.singular_values.iter().enumerate() {
        if s <= rank_tol * sigma_max {
            break;
        }
        // coefficient = (u_k, b) / s  (conjugating u_k)
        let mut coeff = Complex64::new(0.0, 0.0);
        for i in 0..a.rows() {
            coeff += dec.u[(i, k)].conj() * b[i];
        }
        coeff /= s;
        for i in 0..a.cols() {
            x[i] += dec.v[(i, k)] * coeff;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Prng;

    fn random_matrix(rng: &mut Prng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            let (a, b) = rng.gaussian_pair();
            Complex64::new(a, b)
        })
        .unwrap()
    }

    fn reconstruct(dec: &SvdResult) -> ComplexMatrix {
        let k = dec.singular_values.len();
        let mut us = dec.u.clone();
        for j in 0..k {
            for i in 0..us.rows() {
                us[(i, j)] *= Complex64::new(dec.singular_values[j], 0.0);
            }
        }
        us.matmul(&dec.v.hermitian_transpose()).unwrap()
    }

    fn orthonormality_defect(m: &ComplexMatrix) -> f64 {
        let g = m.hermitian_transpose().matmul(m).unwrap();
        g.sub(&ComplexMatrix::identity(m.cols()))
            .unwrap()
            .frobenius_norm()
    }

    #[test]
    fn diagonal_two_by_two() {
        let a = ComplexMatrix::from_entries(
            2,
            2,
            vec![
                Complex64::new(3.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let dec = svd(&a).unwrap();
        assert!((dec.singular_values[0] - 3.0).abs() < 1e-12);
        assert!((dec.singular_values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_outer_product() {
        let mut rng = Prng::seed(13);
        let u = random_matrix(&mut rng, 6, 1);
        let v = random_matrix(&mut rng, 4, 1);
        let a = u.matmul(&v.hermitian_transpose()).unwrap();
        let dec = svd(&a).unwrap();
        let scale = u.column(0).norm() * v.column(0).norm();
        let above: usize = dec
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-12 * scale)
            .count();
        assert_eq!(above, 1);
    }

    #[test]
    fn reconstruction_of_random_matrix() {
        let mut rng = Prng::seed(14);
        let a = random_matrix(&mut rng, 5, 4);
        let dec = svd(&a).unwrap();
        let err = reconstruct(&dec).sub(&a).unwrap().frobenius_norm();
        assert!(err <= 1e-10 * dec.singular_values[0]);
        assert!(orthonormality_defect(&dec.u) < 1e-10);
        assert!(orthonormality_defect(&dec.v) < 1e-10);
    }

    #[test]
    fn wide_matrix_and_zero_matrix() {
        let mut rng = Prng::seed(15);
        let a = random_matrix(&mut rng, 3, 7);
        let dec = svd(&a).unwrap();
        assert_eq!(dec.u.rows(), 3);
        assert_eq!(dec.u.cols(), 3);
        assert_eq!(dec.v.rows(), 7);
        let err = reconstruct(&dec).sub(&a).unwrap().frobenius_norm();
        assert!(err <= 1e-10 * dec.singular_values[0]);

        let z = ComplexMatrix::zeros(3, 3);
        let dec = svd(&z).unwrap();
        assert!(dec.singular_values.iter().all(|&s| s == 0.0));
        assert!(orthonormality_defect(&dec.u) < 1e-12);
    }

    #[test]
    fn unitary_scaled_matrix_has_equal_singular_values() {
        // Build a unitary from the SVD of a random square matrix
        // (orthonormality is checked independently above).
        let mut rng = Prng::seed(16);
        let a = random_matrix(&mut rng, 6, 6);
        let q = svd(&a).unwrap().u;
        let c = Complex64::new(-1.25, 0.75);
        let dec = svd(&q.scale(c)).unwrap();
        for &s in &dec.singular_values {
            assert!((s - c.norm()).abs() <= 1e-10);
        }
    }

    #[test]
    fn lstsq_identity_and_zero() {
        let mut rng = Prng::seed(17);
        let b = ComplexVector::from_entries(
            (0..4)
                .map(|_| {
                    let (x, y) = rng.gaussian_pair();
                    Complex64::new(x, y)
                })
                .collect(),
        )
        .unwrap();
        let x = lstsq_min_norm(&ComplexMatrix::identity(4), &b, 1e-12).unwrap();
        assert!(x.sub(&b).unwrap().norm() < 1e-12);

        let x = lstsq_min_norm(&ComplexMatrix::zeros(4, 3), &b, 1e-12).unwrap();
        assert!(x.norm() == 0.0);
    }

    #[test]
    fn degenerate_inputs_error() {
        let b = ComplexVector::zeros(3);
        assert!(lstsq_min_norm(&ComplexMatrix::zeros(3, 2), &b, 0.0).is_err());
        assert!(lstsq_min_norm(&ComplexMatrix::zeros(2, 2), &b, 1e-12).is_err());
        assert!(svd(&ComplexMatrix::zeros(0, 0)).is_err());
    }

    #[test]
    fn lstsq_matches_normal_equations() {
        // Well-conditioned overdetermined instance; oracle solves
        // (A^H A) x = A^H b by hand-rolled Gaussian elimination.
        let mut rng = Prng::seed(18);
        let a = random_matrix(&mut rng, 6, 3);
        let b = ComplexVector::from_entries(
            (0..6)
                .map(|_| {
                    let (x, y) = rng.gaussian_pair();
                    Complex64::new(x, y)
                })
                .collect(),
        )
        .unwrap();
        let x = lstsq_min_norm(&a, &b, 1e-12).unwrap();

        let ah = a.hermitian_transpose();
        let g = ah.matmul(&a).unwrap();
        let rhs = ah.matvec(&b).unwrap();
        // 3x3 Gaussian elimination with partial pivoting.
        let n = 3;
        let mut aug: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                let mut row: Vec<Complex64> = (0..n).map(|j| g[(i, j)]).collect();
                row.push(rhs[i]);
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| aug[i][col].norm().partial_cmp(&aug[j][col].norm()).unwrap())
                .unwrap();
            aug.swap(col, piv);
            for row in (col + 1)..n {
                let f = aug[row][col] / aug[col][col];
                for j in col..=n {
                    let v = aug[col][j];
                    aug[row][j] -= f * v;
                }
            }
        }
        let mut oracle = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut acc = aug[i][n];
            for j in (i + 1)..n {
                acc -= aug[i][j] * oracle[j];
            }
            oracle[i] = acc / aug[i][i];
        }
        for i in 0..n {
            assert!((x[i] - oracle[i]).norm() <= 1e-9);
        }
    }

    #[test]
    fn lstsq_residual_is_minimal_over_row_space_perturbations() {
        let mut rng = Prng::seed(19);
        let a = random_matrix(&mut rng, 8, 5);
        let b = ComplexVector::from_entries(
            (0..8)
                .map(|_| {
                    let (x, y) = rng.gaussian_pair();
                    Complex64::new(x, y)
                })
                .collect(),
        )
        .unwrap();
        let x = lstsq_min_norm(&a, &b, 1e-12).unwrap();
        let base = a.matvec(&x).unwrap().sub(&b).unwrap().norm();
        let dec = svd(&a).unwrap();
        for _ in 0..100 {
            // Random perturbation inside the row space (span of V columns).
            let mut delta = ComplexVector::zeros(5);
            for k in 0..dec.singular_values.len() {
                let (re, im) = rng.gaussian_pair();
                let coeff = Complex64::new(re, im).scale(0.3);
                for i in 0..5 {
                    delta[i] += dec.v[(i, k)] * coeff;
                }
            }
            let xp = x.add(&delta).unwrap();
            let perturbed = a.matvec(&xp).unwrap().sub(&b).unwrap().norm();
            assert!(perturbed >= base - 1e-12);
        }
    }
}
