//! Dispersion matrices for the three models.
//!
//! For plane waves along `e_1` the 12 degrees of freedom of the relaxed
//! model split into a longitudinal block `B1`, two identical transverse
//! blocks `B2 = B3` and an uncoupled diagonal block `B4`; all are real
//! symmetric with eigenvalues `omega^2`. The complex pre-symmetrization
//! forms `A1..A4` (and the Cosserat `A6`/`A7`, Cauchy `A5`) are retained
//! only for determinant consistency checks; production spectra always come
//! from the real symmetric blocks.
//!
//! Blocks are assembled symmetric entry-by-entry, never symmetrized after
//! the fact.

use crate::eig::{self, EigError, Spectrum};
use crate::mat::{C64, ComplexMat, SmallMat};
use crate::params::{CauchyParams, CosseratParams, MaterialParams, ParamError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BlockError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("block {0:?} does not belong to the {1} model")]
    WrongModel(BlockId, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Relaxed,
    Cosserat,
    Cauchy,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Relaxed => "relaxed",
            Model::Cosserat => "cosserat",
            Model::Cauchy => "cauchy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockId {
    B1,
    B2,
    B3,
    B4,
    B6,
    B7,
    CauchyD,
}

/// A real symmetric dispersion block evaluated at one wavenumber.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBlock {
    pub model: Model,
    pub id: BlockId,
    pub k: f64,
    pub mat: SmallMat,
}

impl SpectralBlock {
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Leading principal minors `M_1 .. M_dim`; all positive iff the block
    /// is positive definite (Sylvester's criterion).
    pub fn sylvester_minors(&self) -> Vec<f64> {
        self.mat.leading_minors()
    }

    pub fn spectrum(&self) -> Result<Spectrum, EigError> {
        eig::jacobi_eig(&self.mat)
    }

    /// Eigenvalues `omega^2`, ascending.
    pub fn omega_squared(&self) -> Result<Vec<f64>, EigError> {
        eig::jacobi_eigenvalues(&self.mat)
    }
}

/// A complex pre-symmetrization block evaluated at `(omega, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBlock {
    pub model: Model,
    pub id: BlockId,
    pub omega: f64,
    pub k: f64,
    pub mat: ComplexMat,
}

impl ComplexBlock {
    pub fn det(&self) -> C64 {
        self.mat.det()
    }
}

/// `B1(k)`: longitudinal block of the relaxed model, unknowns
/// `(u_1, P^D, P^S)` after mass normalization.
pub fn relaxed_b1(p: &MaterialParams, k: f64) -> SpectralBlock {
    let sre = (p.rho * p.eta).sqrt();
    let cm2 = p.cm_sq();
    let three_kappa_e = 2.0 * p.mu_e + 3.0 * p.lambda_e;
    let mut m = SmallMat::zeros(3);
    m.set(0, 0, p.cp_sq() * k * k);
    m.set_sym(0, 1, 2.0 * 6.0f64.sqrt() / 3.0 * k * p.mu_e / sre);
    m.set_sym(0, 2, 3.0f64.sqrt() / 3.0 * k * three_kappa_e / sre);
    m.set(1, 1, k * k * cm2 / 3.0 + p.omega_s_sq());
    m.set_sym(1, 2, -2.0f64.sqrt() / 3.0 * k * k * cm2);
    m.set(2, 2, 2.0 / 3.0 * k * k * cm2 + p.omega_p_sq());
    SpectralBlock {
        model: Model::Relaxed,
        id: BlockId::B1,
        k,
        mat: m,
    }
}

/// `B2(k) = B3(k)`: transverse block, unknowns `(u_t, P_(1t), P_[1t])`.
pub fn relaxed_b2(p: &MaterialParams, k: f64) -> SpectralBlock {
    let sre = (p.rho * p.eta).sqrt();
    let cm2 = p.cm_sq();
    let mut m = SmallMat::zeros(3);
    m.set(0, 0, p.cs_sq() * k * k);
    m.set_sym(0, 1, 2.0f64.sqrt() * k * p.mu_e / sre);
    m.set_sym(0, 2, -(2.0f64.sqrt()) * k * p.mu_c / sre);
    m.set(1, 1, cm2 * k * k / 2.0 + p.omega_s_sq());
    m.set_sym(1, 2, cm2 * k * k / 2.0);
    m.set(2, 2, cm2 * k * k / 2.0 + p.omega_r_sq());
    SpectralBlock {
        model: Model::Relaxed,
        id: BlockId::B2,
        k,
        mat: m,
    }
}

/// `B4(k)`: uncoupled diagonal block, unknowns `(P_(23), P_[23], P^V)`.
pub fn relaxed_b4(p: &MaterialParams, k: f64) -> SpectralBlock {
    let base = p.cm_sq() * k * k;
    SpectralBlock {
        model: Model::Relaxed,
        id: BlockId::B4,
        k,
        mat: SmallMat::diagonal(&[
            base + p.omega_s_sq(),
            base + p.omega_r_sq(),
            base + p.omega_s_sq(),
        ]),
    }
}

/// `B6(k)`: Cosserat longitudinal block, diagonal in `(u_1, a_1)`.
pub fn cosserat_b6(p: &CosseratParams, k: f64) -> SpectralBlock {
    SpectralBlock {
        model: Model::Cosserat,
        id: BlockId::B6,
        k,
        mat: SmallMat::diagonal(&[
            k * k * (2.0 * p.mu_macro + p.lambda_macro) / p.rho,
            (2.0 * p.mu_macro * p.l_c * p.l_c * k * k + 2.0 * p.mu_c) / p.eta,
        ]),
    }
}

/// `B7(k)`: Cosserat transverse block in `(u_t, a)`.
pub fn cosserat_b7(p: &CosseratParams, k: f64) -> SpectralBlock {
    let mut m = SmallMat::zeros(2);
    m.set(0, 0, k * k * (p.mu_macro + p.mu_c) / p.rho);
    m.set_sym(0, 1, 2.0f64.sqrt() * k * p.mu_c / (p.rho * p.eta).sqrt());
    m.set(
        1,
        1,
        (k * k * p.mu_macro * p.l_c * p.l_c + 4.0 * p.mu_c) / (2.0 * p.eta),
    );
    SpectralBlock {
        model: Model::Cosserat,
        id: BlockId::B7,
        k,
        mat: m,
    }
}

/// Acoustic-tensor factor `D(xi)` of the Cauchy model; `xi` is the
/// propagation direction scaled by the wavenumber. Eigenvalues are
/// `k^2 (2 mu + lambda)` and `k^2 mu` (double).
pub fn cauchy_d(p: &CauchyParams, xi: [f64; 3]) -> SpectralBlock {
    let mu = p.mu_macro;
    let la = p.lambda_macro;
    let n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    let mut m = SmallMat::zeros(3);
    for i in 0..3 {
        m.set(i, i, (2.0 * mu + la) * xi[i] * xi[i] + mu * (n2 - xi[i] * xi[i]));
        for j in (i + 1)..3 {
            m.set_sym(i, j, (la + mu) * xi[i] * xi[j]);
        }
    }
    SpectralBlock {
        model: Model::Cauchy,
        id: BlockId::CauchyD,
        k: n2.sqrt(),
        mat: m,
    }
}

/// Mass-normalized Cauchy acoustic tensor along `e_1`:
/// `diag((2 mu + lambda) k^2, mu k^2, mu k^2) / rho`.
pub fn cauchy_b(p: &CauchyParams, k: f64) -> SpectralBlock {
    let mut b = cauchy_d(p, [k, 0.0, 0.0]);
    let mut m = SmallMat::zeros(3);
    for i in 0..3 {
        for j in 0..3 {
            m.set(i, j, b.mat.get(i, j) / p.rho);
        }
    }
    b.mat = m;
    b.k = k;
    b
}

/// The rank-one quadratic form of classical elasticity,
/// `mu |u|^2 |xi|^2 + (mu + lambda) <u, xi>^2`, which equals `<D(xi) u, u>`.
pub fn cauchy_rank_one_form(p: &CauchyParams, u: [f64; 3], xi: [f64; 3]) -> f64 {
    let dot = u[0] * xi[0] + u[1] * xi[1] + u[2] * xi[2];
    let u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    let xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    p.mu_macro * u2 * xi2 + (p.mu_macro + p.lambda_macro) * dot * dot
}

/// Assembles a real symmetric block of any model from relaxed parameters;
/// Cosserat and Cauchy blocks use the homogenized macroscopic moduli.
pub fn assemble_b(p: &MaterialParams, id: BlockId, k: f64) -> Result<SpectralBlock, BlockError> {
    Ok(match id {
        BlockId::B1 => relaxed_b1(p, k),
        BlockId::B2 => relaxed_b2(p, k),
        BlockId::B3 => {
            let mut b = relaxed_b2(p, k);
            b.id = BlockId::B3;
            b
        }
        BlockId::B4 => relaxed_b4(p, k),
        BlockId::B6 => cosserat_b6(&p.to_cosserat()?, k),
        BlockId::B7 => cosserat_b7(&p.to_cosserat()?, k),
        BlockId::CauchyD => cauchy_d(&p.to_cauchy()?, [k, 0.0, 0.0]),
    })
}

/// `A1(omega, k)`: complex longitudinal system before symmetrization.
pub fn relaxed_a1(p: &MaterialParams, omega: f64, k: f64) -> ComplexBlock {
    let w2 = omega * omega;
    let cm2 = p.cm_sq();
    let three_kappa_e = 2.0 * p.mu_e + 3.0 * p.lambda_e;
    let mut m = ComplexMat::zeros(3);
    m.set(0, 0, C64::real(-w2 + p.cp_sq() * k * k));
    m.set(0, 1, C64::imag(k * 2.0 * p.mu_e / p.rho));
    m.set(0, 2, C64::imag(k * three_kappa_e / p.rho));
    m.set(1, 0, C64::imag(-k * 4.0 / 3.0 * p.mu_e / p.eta));
    m.set(1, 1, C64::real(-w2 + k * k * cm2 / 3.0 + p.omega_s_sq()));
    m.set(1, 2, C64::real(-2.0 / 3.0 * k * k * cm2));
    m.set(2, 0, C64::imag(-k / 3.0 * three_kappa_e / p.eta));
    m.set(2, 1, C64::real(-k * k * cm2 / 3.0));
    m.set(2, 2, C64::real(-w2 + 2.0 / 3.0 * k * k * cm2 + p.omega_p_sq()));
    ComplexBlock {
        model: Model::Relaxed,
        id: BlockId::B1,
        omega,
        k,
        mat: m,
    }
}

/// `A2(omega, k) = A3(omega, k)`: complex transverse system. The (1,3)
/// entry follows the symmetrized form, `-i k (eta/rho) omega_r^2 = -2 i k mu_c / rho`.
pub fn relaxed_a2(p: &MaterialParams, omega: f64, k: f64) -> ComplexBlock {
    let w2 = omega * omega;
    let cm2 = p.cm_sq();
    let mut m = ComplexMat::zeros(3);
    m.set(0, 0, C64::real(-w2 + k * k * p.cs_sq()));
    m.set(0, 1, C64::imag(k * 2.0 * p.mu_e / p.rho));
    m.set(0, 2, C64::imag(-k * 2.0 * p.mu_c / p.rho));
    m.set(1, 0, C64::imag(-k * p.mu_e / p.eta));
    m.set(1, 1, C64::real(-w2 + cm2 * k * k / 2.0 + p.omega_s_sq()));
    m.set(1, 2, C64::real(cm2 * k * k / 2.0));
    m.set(2, 0, C64::imag(k * p.mu_c / p.eta));
    m.set(2, 1, C64::real(cm2 * k * k / 2.0));
    m.set(2, 2, C64::real(-w2 + cm2 * k * k / 2.0 + p.omega_r_sq()));
    ComplexBlock {
        model: Model::Relaxed,
        id: BlockId::B2,
        omega,
        k,
        mat: m,
    }
}

/// `A4(omega, k)`: diagonal uncoupled system.
pub fn relaxed_a4(p: &MaterialParams, omega: f64, k: f64) -> ComplexBlock {
    let w2 = omega * omega;
    let base = p.cm_sq() * k * k;
    let mut m = ComplexMat::zeros(3);
    m.set(0, 0, C64::real(-w2 + base + p.omega_s_sq()));
    m.set(1, 1, C64::real(-w2 + base + p.omega_r_sq()));
    m.set(2, 2, C64::real(-w2 + base + p.omega_s_sq()));
    ComplexBlock {
        model: Model::Relaxed,
        id: BlockId::B4,
        omega,
        k,
        mat: m,
    }
}

/// `A6(omega, k)`: diagonal Cosserat longitudinal system.
pub fn cosserat_a6(p: &CosseratParams, omega: f64, k: f64) -> ComplexBlock {
    let w2 = omega * omega;
    let mut m = ComplexMat::zeros(2);
    m.set(
        0,
        0,
        C64::real(k * k * (2.0 * p.mu_macro + p.lambda_macro) / p.rho - w2),
    );
    m.set(
        1,
        1,
        C64::real((2.0 * p.mu_macro * p.l_c * p.l_c * k * k + 2.0 * p.mu_c) / p.eta - w2),
    );
    ComplexBlock {
        model: Model::Cosserat,
        id: BlockId::B6,
        omega,
        k,
        mat: m,
    }
}

/// `A7(omega, k)`: complex Cosserat transverse system.
pub fn cosserat_a7(p: &CosseratParams, omega: f64, k: f64) -> ComplexBlock {
    let w2 = omega * omega;
    let mut m = ComplexMat::zeros(2);
    m.set(
        0,
        0,
        C64::real(k * k * (p.mu_macro + p.mu_c) / p.rho - w2),
    );
    m.set(0, 1, C64::imag(-2.0 * k * p.mu_c / p.rho));
    m.set(1, 0, C64::imag(k * p.mu_c / p.eta));
    m.set(
        1,
        1,
        C64::real((k * k * p.mu_macro * p.l_c * p.l_c + 4.0 * p.mu_c) / (2.0 * p.eta) - w2),
    );
    ComplexBlock {
        model: Model::Cosserat,
        id: BlockId::B7,
        omega,
        k,
        mat: m,
    }
}

/// `A5(omega, k)`: the already-diagonal Cauchy system along `e_1`.
pub fn cauchy_a5(p: &CauchyParams, omega: f64, k: f64) -> ComplexBlock {
    let w2 = omega * omega;
    let cl2 = (2.0 * p.mu_macro + p.lambda_macro) / p.rho;
    let ct2 = p.mu_macro / p.rho;
    let mut m = ComplexMat::zeros(3);
    m.set(0, 0, C64::real(cl2 * k * k - w2));
    m.set(1, 1, C64::real(ct2 * k * k - w2));
    m.set(2, 2, C64::real(ct2 * k * k - w2));
    ComplexBlock {
        model: Model::Cauchy,
        id: BlockId::CauchyD,
        omega,
        k,
        mat: m,
    }
}

/// Assembles a complex pre-symmetrization block from relaxed parameters.
pub fn assemble_a(
    p: &MaterialParams,
    id: BlockId,
    omega: f64,
    k: f64,
) -> Result<ComplexBlock, BlockError> {
    Ok(match id {
        BlockId::B1 => relaxed_a1(p, omega, k),
        BlockId::B2 => relaxed_a2(p, omega, k),
        BlockId::B3 => {
            let mut b = relaxed_a2(p, omega, k);
            b.id = BlockId::B3;
            b
        }
        BlockId::B4 => relaxed_a4(p, omega, k),
        BlockId::B6 => cosserat_a6(&p.to_cosserat()?, omega, k),
        BlockId::B7 => cosserat_a7(&p.to_cosserat()?, omega, k),
        BlockId::CauchyD => cauchy_a5(&p.to_cauchy()?, omega, k),
    })
}

/// Closed-form leading principal minors of `B1(k)`:
///
/// ```text
/// M1 = k^2 (2 mu_e + lambda_e) / rho
/// M2 = k^2/(3 eta rho) [6 (2 mu_e + lambda_e) mu_micro + 6 mu_e kappa_e
///                        + (2 mu_e + lambda_e) mu_e L_c^2 k^2]
/// M3 = k^2/(eta^2 rho) [6 kappa_e kappa_micro (mu_e + mu_micro)
///                        + 8 mu_e mu_micro (kappa_e + kappa_micro)
///                        + (2 mu_e + lambda_e)(2 mu_micro + lambda_micro) mu_e L_c^2 k^2]
/// ```
pub fn b1_minors_closed(p: &MaterialParams, k: f64) -> [f64; 3] {
    let k2 = k * k;
    let two_mu_lam_e = 2.0 * p.mu_e + p.lambda_e;
    let two_mu_lam_micro = 2.0 * p.mu_micro + p.lambda_micro;
    let curv = p.mu_e * p.l_c * p.l_c * k2;
    let m1 = k2 * two_mu_lam_e / p.rho;
    let m2 = k2 / (3.0 * p.eta * p.rho)
        * (6.0 * two_mu_lam_e * p.mu_micro + 6.0 * p.mu_e * p.kappa_e() + two_mu_lam_e * curv);
    let m3 = k2 / (p.eta * p.eta * p.rho)
        * (6.0 * p.kappa_e() * p.kappa_micro() * (p.mu_e + p.mu_micro)
            + 8.0 * p.mu_e * p.mu_micro * (p.kappa_e() + p.kappa_micro())
            + two_mu_lam_e * two_mu_lam_micro * curv);
    [m1, m2, m3]
}

/// Macroscopic re-grouping of the `B1` minors; valid whenever the
/// homogenized moduli are defined, and identical to [`b1_minors_closed`].
pub fn b1_minors_closed_macro(p: &MaterialParams, k: f64) -> Result<[f64; 3], ParamError> {
    let k2 = k * k;
    let two_mu_lam_e = 2.0 * p.mu_e + p.lambda_e;
    let two_mu_lam_micro = 2.0 * p.mu_micro + p.lambda_micro;
    let mu_macro = p.mu_macro()?;
    let lambda_macro = p.lambda_macro()?;
    let curv = p.mu_e * p.l_c * p.l_c * k2;
    let m1 = k2 * two_mu_lam_e / p.rho;
    let m2 = k2 / (3.0 * p.eta * p.rho)
        * (2.0 * (4.0 * mu_macro + 3.0 * p.kappa_e()) * (p.mu_e + p.mu_micro)
            + two_mu_lam_e * curv);
    let m3 = k2 / (p.eta * p.eta * p.rho)
        * (6.0 * (p.kappa_e() + p.kappa_micro())
            * (p.mu_e + p.mu_micro)
            * (2.0 * mu_macro + lambda_macro)
            + two_mu_lam_e * two_mu_lam_micro * curv);
    Ok([m1, m2, m3])
}

/// Closed-form leading principal minors of `B2(k)`:
///
/// ```text
/// M1 = k^2 (mu_e + mu_c) / rho
/// M2 = k^2/(2 eta rho) [4 (mu_e mu_c + mu_micro (mu_e + mu_c))
///                        + (mu_e + mu_c) mu_e L_c^2 k^2]
/// M3 = k^2/(eta^2 rho) [4 mu_micro mu_c mu_e + (mu_e + mu_c) mu_micro mu_e L_c^2 k^2]
/// ```
pub fn b2_minors_closed(p: &MaterialParams, k: f64) -> [f64; 3] {
    let k2 = k * k;
    let curv = p.mu_e * p.l_c * p.l_c * k2;
    let m1 = k2 * (p.mu_e + p.mu_c) / p.rho;
    let m2 = k2 / (2.0 * p.eta * p.rho)
        * (4.0 * (p.mu_e * p.mu_c + p.mu_micro * (p.mu_e + p.mu_c)) + (p.mu_e + p.mu_c) * curv);
    let m3 = k2 / (p.eta * p.eta * p.rho)
        * (4.0 * p.mu_micro * p.mu_c * p.mu_e + (p.mu_e + p.mu_c) * p.mu_micro * curv);
    [m1, m2, m3]
}

/// Closed-form leading principal minors of the Cosserat `B7(k)`:
///
/// ```text
/// M1 = k^2 (mu_macro + mu_c) / rho
/// M2 = k^2/(2 eta rho) [4 mu_macro mu_c + k^2 mu_macro L_c^2 (mu_macro + mu_c)]
/// ```
pub fn b7_minors_closed(p: &CosseratParams, k: f64) -> [f64; 2] {
    let k2 = k * k;
    let m1 = k2 * (p.mu_macro + p.mu_c) / p.rho;
    let m2 = k2 / (2.0 * p.eta * p.rho)
        * (4.0 * p.mu_macro * p.mu_c + k2 * p.mu_macro * p.l_c * p.l_c * (p.mu_macro + p.mu_c));
    [m1, m2]
}
