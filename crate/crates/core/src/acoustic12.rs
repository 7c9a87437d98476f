//! Full 12x12 acoustic tensor of the relaxed model for an arbitrary
//! propagation direction.
//!
//! The unknown vector is ordered `(u_1, u_2, u_3, P_11, P_12, P_13, P_21,
//! P_22, P_23, P_31, P_32, P_33)`. The stiffness-side matrix `K` is
//! Hermitian with purely imaginary `i k (...)` coupling blocks; multiplying
//! the nine micro-distortion amplitudes by the imaginary unit makes the
//! system real, and congruence by `diag(sqrt(rho) I_3, sqrt(eta) I_9)^-1`
//! turns it into the real symmetric acoustic tensor whose eigenvalues are
//! `omega^2`. The phase transform is applied analytically during assembly,
//! so the production path never touches a complex matrix.
//!
//! Along `e_1` the spectrum factors into the four 3x3 blocks of the
//! `blocks` module; isotropy makes it direction independent. Both facts are
//! what the tests pin down.

use crate::eig::{self, sorted_distance, EigError};
use crate::mat::{C64, ComplexMat, SmallMat};
use crate::params::{MaterialParams, ParamError};
use crate::rng::SplitMix64;
use thiserror::Error;

const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum Acoustic12Error {
    #[error("direction must be a unit vector (|xi| = {norm}); normalize explicitly")]
    NonUnitDirection { norm: f64 },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error("isotropy scan needs at least 2 trials, got {0}")]
    TooFewTrials(u64),
}

/// Index of micro-distortion component `P_{(j+1)(l+1)}` in the unknown vector.
#[inline]
fn p_index(j: usize, l: usize) -> usize {
    3 + 3 * j + l
}

/// The assembled 12x12 system at one direction and wavenumber.
#[derive(Debug, Clone)]
pub struct Acoustic12 {
    pub xi: [f64; 3],
    pub k: f64,
    /// Real symmetric mass-normalized acoustic tensor; eigenvalues are `omega^2`.
    pub b_tilde: SmallMat,
}

impl Acoustic12 {
    /// Eigenvalues `omega^2`, ascending.
    pub fn omega_squared(&self) -> Result<Vec<f64>, EigError> {
        eig::jacobi_eigenvalues(&self.b_tilde)
    }
}

/// Coupling coefficient between displacement `i` and micro-distortion `(j, l)`.
#[inline]
fn coupling(p: &MaterialParams, xi: &[f64; 3], i: usize, j: usize, l: usize) -> f64 {
    let mut s = 0.0;
    if i == j {
        s += (p.mu_e + p.mu_c) * xi[l];
    }
    if i == l {
        s += (p.mu_e - p.mu_c) * xi[j];
    }
    if j == l {
        s += p.lambda_e * xi[i];
    }
    s
}

fn check_unit(xi: [f64; 3]) -> Result<(), Acoustic12Error> {
    let norm = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Acoustic12Error::NonUnitDirection { norm });
    }
    Ok(())
}

/// Assembles the real symmetric 12x12 acoustic tensor.
///
/// The direction is validated, not normalized silently.
pub fn assemble_12(
    p: &MaterialParams,
    xi: [f64; 3],
    k: f64,
) -> Result<Acoustic12, Acoustic12Error> {
    check_unit(xi)?;
    if p.rho <= 0.0 || p.eta <= 0.0 {
        return Err(ParamError::NonPositiveDensity {
            rho: p.rho,
            eta: p.eta,
        }
        .into());
    }
    let mut b = SmallMat::zeros(12);
    let sre = (p.rho * p.eta).sqrt();
    let curv = p.mu_e * p.l_c * p.l_c * k * k;

    // Displacement-displacement block: k^2 [(mu_e + mu_c) I + (mu_e - mu_c + lambda_e) xi (x) xi].
    for i in 0..3 {
        for i2 in i..3 {
            let mut v = (p.mu_e - p.mu_c + p.lambda_e) * xi[i] * xi[i2];
            if i == i2 {
                v += p.mu_e + p.mu_c;
            }
            b.set_sym(i, i2, k * k * v / p.rho);
        }
    }

    // Coupling block after the phase transform: -k S / sqrt(rho eta).
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                b.set_sym(i, p_index(j, l), -k * coupling(p, &xi, i, j, l) / sre);
            }
        }
    }

    // Micro-distortion block: curvature + relative/micro stiffness + trace coupling.
    for j in 0..3 {
        for l in 0..3 {
            let row = p_index(j, l);
            for j2 in 0..3 {
                for l2 in 0..3 {
                    let col = p_index(j2, l2);
                    if col < row {
                        continue;
                    }
                    let mut v = 0.0;
                    if j == j2 {
                        v += curv * (if l == l2 { 1.0 } else { 0.0 } - xi[l] * xi[l2]);
                    }
                    if j == j2 && l == l2 {
                        v += p.mu_e + p.mu_micro + p.mu_c;
                    }
                    if j == l2 && l == j2 {
                        v += p.mu_e + p.mu_micro - p.mu_c;
                    }
                    if j == l && j2 == l2 {
                        v += p.lambda_e + p.lambda_micro;
                    }
                    b.set_sym(row, col, v / p.eta);
                }
            }
        }
    }

    Ok(Acoustic12 { xi, k, b_tilde: b })
}

/// The Hermitian stiffness-side matrix before the phase transform, with
/// `i k (...)` coupling blocks; eigensolving goes through [`assemble_12`],
/// this form exists for consistency checks.
pub fn complex_stiffness(
    p: &MaterialParams,
    xi: [f64; 3],
    k: f64,
) -> Result<ComplexMat, Acoustic12Error> {
    check_unit(xi)?;
    let mut m = ComplexMat::zeros(12);
    let curv = p.mu_e * p.l_c * p.l_c * k * k;

    for i in 0..3 {
        for i2 in 0..3 {
            let mut v = (p.mu_e - p.mu_c + p.lambda_e) * xi[i] * xi[i2];
            if i == i2 {
                v += p.mu_e + p.mu_c;
            }
            m.set(i, i2, C64::real(k * k * v));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                let s = coupling(p, &xi, i, j, l);
                m.set(i, p_index(j, l), C64::imag(k * s));
                m.set(p_index(j, l), i, C64::imag(-k * s));
            }
        }
    }
    for j in 0..3 {
        for l in 0..3 {
            for j2 in 0..3 {
                for l2 in 0..3 {
                    let mut v = 0.0;
                    if j == j2 {
                        v += curv * (if l == l2 { 1.0 } else { 0.0 } - xi[l] * xi[l2]);
                    }
                    if j == j2 && l == l2 {
                        v += p.mu_e + p.mu_micro + p.mu_c;
                    }
                    if j == l2 && l == j2 {
                        v += p.mu_e + p.mu_micro - p.mu_c;
                    }
                    if j == l && j2 == l2 {
                        v += p.lambda_e + p.lambda_micro;
                    }
                    m.set(p_index(j, l), p_index(j2, l2), C64::real(v));
                }
            }
        }
    }
    Ok(m)
}

/// Multiset union of the `B1, B2, B3, B4` spectra at the same wavenumber,
/// sorted ascending. Along `e_1` this equals the 12x12 spectrum.
pub fn block_union_spectrum(p: &MaterialParams, k: f64) -> Result<Vec<f64>, EigError> {
    let mut all = Vec::with_capacity(12);
    all.extend(crate::blocks::relaxed_b1(p, k).omega_squared()?);
    let transverse = crate::blocks::relaxed_b2(p, k).omega_squared()?;
    all.extend(transverse.iter().copied());
    all.extend(transverse);
    all.extend(crate::blocks::relaxed_b4(p, k).omega_squared()?);
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(all)
}

/// Max sorted-spectrum deviation between the 12x12 tensor at `xi = e_1` and
/// at `trials` random unit directions.
pub fn isotropy_check(
    p: &MaterialParams,
    k: f64,
    trials: u64,
    seed: u64,
) -> Result<f64, Acoustic12Error> {
    if trials < 2 {
        return Err(Acoustic12Error::TooFewTrials(trials));
    }
    let reference = assemble_12(p, [1.0, 0.0, 0.0], k)?.omega_squared()?;
    let mut max_dev: f64 = 0.0;
    for trial in 0..trials {
        let mut rng = SplitMix64::for_trial(seed, trial);
        let xi = rng.unit_vector3();
        let spectrum = assemble_12(p, xi, k)?.omega_squared()?;
        max_dev = max_dev.max(sorted_distance(&reference, &spectrum));
    }
    Ok(max_dev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> MaterialParams {
        MaterialParams::canonical_unit()
    }

    fn arbitrary() -> MaterialParams {
        MaterialParams {
            mu_e: 1.4,
            lambda_e: -0.2,
            mu_micro: 0.8,
            lambda_micro: 0.5,
            mu_c: 0.6,
            l_c: 1.2,
            rho: 1.7,
            eta: 0.9,
        }
    }

    #[test]
    fn rejects_non_unit_direction() {
        let r = assemble_12(&unit(), [1.0, 1.0, 0.0], 1.0);
        assert!(matches!(r, Err(Acoustic12Error::NonUnitDirection { .. })));
    }

    #[test]
    fn b_tilde_is_exactly_symmetric() {
        let mut rng = SplitMix64::new(2);
        for _ in 0..10 {
            let xi = rng.unit_vector3();
            let a = assemble_12(&arbitrary(), xi, 1.3).unwrap();
            assert_eq!(a.b_tilde.symmetry_defect(), 0.0);
        }
    }

    #[test]
    fn stiffness_is_hermitian_for_all_inputs() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..10 {
            let xi = rng.unit_vector3();
            let k = rng.uniform(0.0, 5.0);
            let m = complex_stiffness(&arbitrary(), xi, k).unwrap();
            assert!(m.hermitian_defect() <= 1e-12 * m.frobenius().max(1.0));
        }
    }

    #[test]
    fn spectrum_along_e1_factors_into_blocks() {
        for (p, k) in [
            (unit(), 1.0),
            (arbitrary(), 0.3),
            (arbitrary(), 2.7),
        ] {
            let full = assemble_12(&p, [1.0, 0.0, 0.0], k)
                .unwrap()
                .omega_squared()
                .unwrap();
            let union = block_union_spectrum(&p, k).unwrap();
            assert!(
                sorted_distance(&full, &union) <= 1e-8,
                "block equivalence failed at k = {k}"
            );
        }
    }

    #[test]
    fn zero_wavenumber_multiset_at_unit_params() {
        // Diagonals of B1(0), B2(0), B3(0), B4(0) enumerate to
        // {0, 0, 0, 2, 2, 2, 4, 4, 4, 4, 4, 10}.
        let spectrum = assemble_12(&unit(), [1.0, 0.0, 0.0], 0.0)
            .unwrap()
            .omega_squared()
            .unwrap();
        let expected = [0.0, 0.0, 0.0, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 4.0, 4.0, 10.0];
        assert!(sorted_distance(&spectrum, &expected) <= 1e-12);
    }

    #[test]
    fn spectrum_is_direction_invariant() {
        let dev = isotropy_check(&arbitrary(), 1.0, 50, 42).unwrap();
        assert!(dev <= 1e-8, "max deviation {dev}");
    }

    #[test]
    fn direction_invariance_is_exact_at_zero_wavenumber() {
        let dev = isotropy_check(&unit(), 0.0, 10, 42).unwrap();
        assert!(dev <= 1e-12);
    }

    #[test]
    fn isotropy_scan_needs_two_trials() {
        assert!(matches!(
            isotropy_check(&unit(), 1.0, 1, 42),
            Err(Acoustic12Error::TooFewTrials(1))
        ));
    }
}
