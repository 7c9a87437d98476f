//! Self-contained spectral kernel for real symmetric matrices up to 12x12.
//!
//! The production path is a cyclic Jacobi eigensolver; the closed-form 2x2
//! and 3x3 characteristic-polynomial solvers exist as independent oracles so
//! every spectrum can be cross-checked by a second route.

use crate::mat::SmallMat;
use thiserror::Error;

/// Convergence target: off-diagonal Frobenius norm relative to the input norm.
const OFF_TOL: f64 = 1e-14;
/// Fixed sweep budget; dimensions here are at most 12.
const MAX_SWEEPS: usize = 50;
/// Symmetry precondition, relative to `max(1, ||A||_F)`.
const SYM_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum EigError {
    #[error("matrix is not symmetric: defect {defect:.3e} exceeds {tol:.3e}")]
    NotSymmetric { defect: f64, tol: f64 },
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("closed-form solver supports dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
}

/// Eigendecomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `eigenvalues`.
    pub eigenvectors: Option<SmallMat>,
    /// `max_i ||A v_i - lambda_i v_i||_2`.
    pub residual: f64,
}

fn check_symmetric(a: &SmallMat) -> Result<(), EigError> {
    let tol = SYM_TOL * a.frobenius().max(1.0);
    let defect = a.symmetry_defect();
    if defect > tol {
        return Err(EigError::NotSymmetric { defect, tol });
    }
    Ok(())
}

/// Cyclic Jacobi eigensolver.
///
/// Rotations run in a fixed row-major sweep order (no threshold pivoting) so
/// results are bit-stable across platforms and thread counts.
pub fn jacobi_eig(a: &SmallMat) -> Result<Spectrum, EigError> {
    check_symmetric(a)?;
    let n = a.dim();
    let norm = a.frobenius();
    let mut w = a.clone();
    let mut v = SmallMat::identity(n);

    let mut converged = norm == 0.0 || n < 2;
    if !converged {
        for _ in 0..MAX_SWEEPS {
            if w.off_frobenius() <= OFF_TOL * norm {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = w.get(p, q);
                    if apq == 0.0 {
                        continue;
                    }
                    let app = w.get(p, p);
                    let aqq = w.get(q, q);
                    let theta = 0.5 * (aqq - app) / apq;
                    let t = if theta == 0.0 {
                        1.0
                    } else {
                        let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                        s / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;

                    for k in 0..n {
                        let akp = w.get(k, p);
                        let akq = w.get(k, q);
                        w.set(k, p, c * akp - s * akq);
                        w.set(k, q, s * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = w.get(p, k);
                        let aqk = w.get(q, k);
                        w.set(p, k, c * apk - s * aqk);
                        w.set(q, k, s * apk + c * aqk);
                    }
                    // Re-impose exact zero on the annihilated pair.
                    w.set_sym(p, q, 0.0);

                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp - s * vkq);
                        v.set(k, q, s * vkp + c * vkq);
                    }
                }
            }
        }
        if !converged && w.off_frobenius() <= OFF_TOL * norm {
            converged = true;
        }
    }
    if !converged {
        return Err(EigError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w.get(i, i).partial_cmp(&w.get(j, j)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w.get(i, i)).collect();
    let mut vectors = SmallMat::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }

    let mut residual: f64 = 0.0;
    for (col, &lambda) in eigenvalues.iter().enumerate() {
        let x: Vec<f64> = (0..n).map(|row| vectors.get(row, col)).collect();
        let ax = a.mul_vec(&x);
        let r2: f64 = ax
            .iter()
            .zip(&x)
            .map(|(axi, xi)| {
                let d = axi - lambda * xi;
                d * d
            })
            .sum();
        residual = residual.max(r2.sqrt());
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors: Some(vectors),
        residual,
    })
}

/// Eigenvalues only, sorted ascending. Same rotation schedule as
/// [`jacobi_eig`] without eigenvector accumulation; the convergence
/// criterion itself certifies the values to `1e-14 ||A||_F`.
pub fn jacobi_eigenvalues(a: &SmallMat) -> Result<Vec<f64>, EigError> {
    check_symmetric(a)?;
    let n = a.dim();
    let norm = a.frobenius();
    if norm == 0.0 || n < 2 {
        return Ok(vec![0.0; n]);
    }
    let mut w = a.clone();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if w.off_frobenius() <= OFF_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = w.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = w.get(p, p);
                let aqq = w.get(q, q);
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta == 0.0 {
                    1.0
                } else {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = w.get(k, p);
                    let akq = w.get(k, q);
                    w.set(k, p, c * akp - s * akq);
                    w.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = w.get(p, k);
                    let aqk = w.get(q, k);
                    w.set(p, k, c * apk - s * aqk);
                    w.set(q, k, s * apk + c * aqk);
                }
                w.set_sym(p, q, 0.0);
            }
        }
    }
    if !converged && w.off_frobenius() > OFF_TOL * norm {
        return Err(EigError::NoConvergence(MAX_SWEEPS));
    }
    let mut vals = w.diag();
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(vals)
}

/// Closed-form eigenvalues of a symmetric 2x2 matrix, sorted ascending.
pub fn quadratic_roots_symmetric(a: &SmallMat) -> Result<[f64; 2], EigError> {
    if a.dim() != 2 {
        return Err(EigError::WrongDimension {
            expected: 2,
            got: a.dim(),
        });
    }
    check_symmetric(a)?;
    let p = a.get(0, 0);
    let q = a.get(1, 1);
    let b = 0.5 * (a.get(0, 1) + a.get(1, 0));
    let mid = 0.5 * (p + q);
    let rad = (0.5 * (p - q)).hypot(b);
    Ok([mid - rad, mid + rad])
}

/// Closed-form eigenvalues of a symmetric 3x3 matrix via the trigonometric
/// solution of the depressed characteristic cubic, sorted ascending.
pub fn cubic_roots_symmetric(a: &SmallMat) -> Result<[f64; 3], EigError> {
    if a.dim() != 3 {
        return Err(EigError::WrongDimension {
            expected: 3,
            got: a.dim(),
        });
    }
    check_symmetric(a)?;

    let a01 = 0.5 * (a.get(0, 1) + a.get(1, 0));
    let a02 = 0.5 * (a.get(0, 2) + a.get(2, 0));
    let a12 = 0.5 * (a.get(1, 2) + a.get(2, 1));
    let p1 = a01 * a01 + a02 * a02 + a12 * a12;

    let mut roots = if p1 == 0.0 {
        [a.get(0, 0), a.get(1, 1), a.get(2, 2)]
    } else {
        let q = (a.get(0, 0) + a.get(1, 1) + a.get(2, 2)) / 3.0;
        let d0 = a.get(0, 0) - q;
        let d1 = a.get(1, 1) - q;
        let d2 = a.get(2, 2) - q;
        let p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        // B = (A - q I) / p; r = det(B) / 2 lies in [-1, 1] up to rounding.
        let b = SmallMat::from_rows(&[
            &[d0 / p, a01 / p, a02 / p],
            &[a01 / p, d1 / p, a12 / p],
            &[a02 / p, a12 / p, d2 / p],
        ]);
        let r = (b.det() / 2.0).clamp(-1.0, 1.0);
        let phi = r.acos() / 3.0;
        let e_hi = q + 2.0 * p * phi.cos();
        let e_lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
        let e_mid = 3.0 * q - e_hi - e_lo;
        [e_lo, e_mid, e_hi]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(roots)
}

/// Max distance between two sorted eigenvalue lists of equal length.
pub fn sorted_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra have different sizes");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
