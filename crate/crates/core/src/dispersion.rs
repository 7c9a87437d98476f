//! Dispersion branches `omega(k)` for the three models.
//!
//! Branch values are square roots of the block eigenvalues. Eigenvalues in
//! `[-1e-12, 0]` clamp to zero (numerical noise); anything below that is
//! recorded as an "imaginary" sample rather than an error, because exploring
//! indefinite parameter regimes is part of the tool's job.
//!
//! Branch continuity across `k` uses sorted eigenvalues per family with
//! labels anchored at the `k = 0` cutoffs; the uncoupled family is labeled
//! by diagonal position (which also breaks the `omega_r = omega_s` tie).

use crate::blocks::{self, Model};
use crate::eig::EigError;
use crate::params::{CauchyParams, CosseratParams, MaterialParams, ModelParams, ParamError};
use thiserror::Error;

/// Eigenvalues in `[-CLAMP_TOL, 0]` count as zero.
pub const CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum DispersionError {
    #[error("invalid grid: need samples >= 2 and k_max > 0 (got n = {n}, k_max = {k_max})")]
    InvalidGrid { n: usize, k_max: f64 },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error("acoustic branch is imaginary near k = 0; tangent undefined")]
    UndefinedTangent,
    #[error("k = {0} is outside the sampled range")]
    OutOfRange(f64),
    #[error("branch is not real around k = {0}")]
    ImaginaryAround(f64),
}

/// A branch value: real frequency, or the magnitude of the imaginary part
/// when `omega^2 < -1e-12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveOmega {
    Real(f64),
    Imaginary(f64),
}

impl WaveOmega {
    pub fn from_omega_squared(w2: f64) -> Self {
        if w2 >= 0.0 {
            WaveOmega::Real(w2.sqrt())
        } else if w2 >= -CLAMP_TOL {
            WaveOmega::Real(0.0)
        } else {
            WaveOmega::Imaginary((-w2).sqrt())
        }
    }

    pub fn real(&self) -> Option<f64> {
        match self {
            WaveOmega::Real(w) => Some(*w),
            WaveOmega::Imaginary(_) => None,
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, WaveOmega::Real(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchFamily {
    Longitudinal,
    Transverse,
    Uncoupled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchLabel {
    LA,
    LO1,
    LO2,
    TA,
    TO1,
    TO2,
    TSO,
    TRO,
    TCVO,
    CosseratAcousticLong,
    CosseratOpticLong,
    CosseratAcousticTrans,
    CosseratOpticTrans,
    CauchyP,
    CauchyS,
}

impl BranchLabel {
    pub fn id(&self) -> &'static str {
        match self {
            Self::LA => "LA",
            Self::LO1 => "LO1",
            Self::LO2 => "LO2",
            Self::TA => "TA",
            Self::TO1 => "TO1",
            Self::TO2 => "TO2",
            Self::TSO => "TSO",
            Self::TRO => "TRO",
            Self::TCVO => "TCVO",
            Self::CosseratAcousticLong => "cosserat-LA",
            Self::CosseratOpticLong => "cosserat-LO",
            Self::CosseratAcousticTrans => "cosserat-TA",
            Self::CosseratOpticTrans => "cosserat-TO",
            Self::CauchyP => "cauchy-P",
            Self::CauchyS => "cauchy-S",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        [
            Self::LA,
            Self::LO1,
            Self::LO2,
            Self::TA,
            Self::TO1,
            Self::TO2,
            Self::TSO,
            Self::TRO,
            Self::TCVO,
            Self::CosseratAcousticLong,
            Self::CosseratOpticLong,
            Self::CosseratAcousticTrans,
            Self::CosseratOpticTrans,
            Self::CauchyP,
            Self::CauchyS,
        ]
        .into_iter()
        .find(|l| l.id() == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSample {
    pub k: f64,
    pub omega: WaveOmega,
}

/// One sampled dispersion curve.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionBranch {
    pub model: Model,
    pub family: BranchFamily,
    pub label: BranchLabel,
    /// Physical multiplicity (transverse branches count twice).
    pub multiplicity: u32,
    /// Samples sorted by `k`.
    pub samples: Vec<BranchSample>,
    /// Finite-difference `d omega / dk` at `k -> 0+`; `None` when the branch
    /// is imaginary near zero.
    pub tangent_at_zero: Option<f64>,
}

impl DispersionBranch {
    pub fn is_acoustic(&self) -> bool {
        matches!(
            self.label,
            BranchLabel::LA
                | BranchLabel::TA
                | BranchLabel::CosseratAcousticLong
                | BranchLabel::CosseratAcousticTrans
                | BranchLabel::CauchyP
                | BranchLabel::CauchyS
        )
    }
}

/// Default sweep grid: `{0}`, then log-spaced points in `[1e-3, 1)`, then
/// linear points in `[1, k_max]`. Resolves both the `k -> 0` tangents and
/// the large-`k` asymptotes that drive the necessity conditions.
pub fn k_grid(k_max: f64, n: usize) -> Result<Vec<f64>, DispersionError> {
    if n < 2 || k_max <= 0.0 || !k_max.is_finite() {
        return Err(DispersionError::InvalidGrid { n, k_max });
    }
    let mut grid = Vec::with_capacity(n);
    grid.push(0.0);
    if k_max <= 1.0 || n < 4 {
        // Purely logarithmic from 1e-3 k_max to k_max.
        let lo = (1e-3 * k_max).ln();
        let hi = k_max.ln();
        for i in 0..(n - 1) {
            let t = i as f64 / (n - 2).max(1) as f64;
            grid.push((lo + t * (hi - lo)).exp());
        }
        if n == 2 {
            grid[1] = k_max;
        }
    } else {
        let n_log = (n - 1) / 2;
        let n_lin = n - 1 - n_log;
        for i in 0..n_log {
            // 1e-3 .. 1, excluding 1 (the linear part starts there).
            let t = i as f64 / n_log as f64;
            grid.push(10f64.powf(-3.0 + 3.0 * t));
        }
        for i in 0..n_lin {
            let t = i as f64 / (n_lin - 1) as f64;
            grid.push(1.0 + t * (k_max - 1.0));
        }
    }
    Ok(grid)
}

/// Log-spaced grid over `[k_min, k_max]`, used by the necessity scans.
pub fn log_grid(k_min: f64, k_max: f64, n: usize) -> Result<Vec<f64>, DispersionError> {
    if n < 2 || k_max <= 0.0 || k_min <= 0.0 || k_min >= k_max {
        return Err(DispersionError::InvalidGrid { n, k_max });
    }
    let lo = k_min.ln();
    let hi = k_max.ln();
    Ok((0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
        .collect())
}

/// Finite-difference step for the `k -> 0` tangents on O(1)-scaled problems.
fn default_step(l_c: f64) -> f64 {
    1e-3 * (1.0 / l_c).max(1.0)
}

/// One Richardson extrapolation level over the chord slopes at `h` and `h/2`:
/// eliminates the `h^2` error term of `omega(h)/h` on an acoustic branch.
fn richardson_slope(omega_h: f64, omega_h2: f64, h: f64) -> f64 {
    let f_h = omega_h / h;
    let f_h2 = omega_h2 / (0.5 * h);
    (4.0 * f_h2 - f_h) / 3.0
}

/// Sorted `omega^2` eigenvalues of a family block at one wavenumber.
type FamilyEval = dyn Fn(f64) -> Result<Vec<f64>, DispersionError>;

fn build_family(
    model: Model,
    family: BranchFamily,
    labels: &[BranchLabel],
    multiplicity: u32,
    grid: &[f64],
    step: f64,
    eval: &FamilyEval,
) -> Result<Vec<DispersionBranch>, DispersionError> {
    let dim = labels.len();
    let mut samples: Vec<Vec<BranchSample>> = vec![Vec::with_capacity(grid.len()); dim];
    for &k in grid {
        let w2 = eval(k)?;
        debug_assert_eq!(w2.len(), dim);
        for (i, &v) in w2.iter().enumerate() {
            samples[i].push(BranchSample {
                k,
                omega: WaveOmega::from_omega_squared(v),
            });
        }
    }

    // Tangent estimate at k -> 0+ from dedicated evaluations at h and h/2.
    let w2_0 = eval(0.0)?;
    let w2_h = eval(step)?;
    let w2_h2 = eval(0.5 * step)?;
    let mut branches = Vec::with_capacity(dim);
    for (i, &label) in labels.iter().enumerate() {
        let tangent = if w2_h[i] >= -CLAMP_TOL && w2_h2[i] >= -CLAMP_TOL && w2_0[i] >= -CLAMP_TOL {
            let base = w2_0[i].max(0.0).sqrt();
            Some(richardson_slope(
                w2_h[i].max(0.0).sqrt() - base,
                w2_h2[i].max(0.0).sqrt() - base,
                step,
            ))
        } else {
            None
        };
        branches.push(DispersionBranch {
            model,
            family,
            label,
            multiplicity,
            samples: std::mem::take(&mut samples[i]),
            tangent_at_zero: tangent,
        });
    }
    Ok(branches)
}

/// Sweeps the relaxed model: longitudinal (`B1`), transverse (`B2`, double
/// multiplicity) and uncoupled (`B4`) families, 12 degrees of freedom total.
pub fn sweep_relaxed_grid(
    p: &MaterialParams,
    grid: &[f64],
) -> Result<Vec<DispersionBranch>, DispersionError> {
    let step = default_step(p.l_c);
    let mut out = Vec::with_capacity(9);

    let p1 = *p;
    out.extend(build_family(
        Model::Relaxed,
        BranchFamily::Longitudinal,
        &[BranchLabel::LA, BranchLabel::LO1, BranchLabel::LO2],
        1,
        grid,
        step,
        &move |k| Ok(blocks::relaxed_b1(&p1, k).omega_squared()?),
    )?);
    out.extend(build_family(
        Model::Relaxed,
        BranchFamily::Transverse,
        &[BranchLabel::TA, BranchLabel::TO1, BranchLabel::TO2],
        2,
        grid,
        step,
        &move |k| Ok(blocks::relaxed_b2(&p1, k).omega_squared()?),
    )?);
    // B4 is diagonal for every k; take the diagonal directly so the labels
    // stay pinned to their positions.
    out.extend(build_family(
        Model::Relaxed,
        BranchFamily::Uncoupled,
        &[BranchLabel::TSO, BranchLabel::TRO, BranchLabel::TCVO],
        1,
        grid,
        step,
        &move |k| Ok(blocks::relaxed_b4(&p1, k).mat.diag()),
    )?);
    Ok(out)
}

/// Sweeps the Cosserat model: `B6` (diagonal) and `B7` (double multiplicity).
pub fn sweep_cosserat_grid(
    p: &CosseratParams,
    grid: &[f64],
) -> Result<Vec<DispersionBranch>, DispersionError> {
    let step = default_step(p.l_c);
    let mut out = Vec::with_capacity(4);
    let p1 = *p;
    out.extend(build_family(
        Model::Cosserat,
        BranchFamily::Longitudinal,
        &[
            BranchLabel::CosseratAcousticLong,
            BranchLabel::CosseratOpticLong,
        ],
        1,
        grid,
        step,
        &move |k| Ok(blocks::cosserat_b6(&p1, k).mat.diag()),
    )?);
    out.extend(build_family(
        Model::Cosserat,
        BranchFamily::Transverse,
        &[
            BranchLabel::CosseratAcousticTrans,
            BranchLabel::CosseratOpticTrans,
        ],
        2,
        grid,
        step,
        &move |k| Ok(blocks::cosserat_b7(&p1, k).omega_squared()?),
    )?);
    Ok(out)
}

/// Sweeps the Cauchy model: two non-dispersive branches, the transverse one
/// with double multiplicity.
pub fn sweep_cauchy_grid(
    p: &CauchyParams,
    grid: &[f64],
) -> Result<Vec<DispersionBranch>, DispersionError> {
    let step = 1e-3;
    let mut out = Vec::with_capacity(2);
    let p1 = *p;
    out.extend(build_family(
        Model::Cauchy,
        BranchFamily::Longitudinal,
        &[BranchLabel::CauchyP],
        1,
        grid,
        step,
        &move |k| Ok(vec![k * k * (2.0 * p1.mu_macro + p1.lambda_macro) / p1.rho]),
    )?);
    out.extend(build_family(
        Model::Cauchy,
        BranchFamily::Transverse,
        &[BranchLabel::CauchyS],
        2,
        grid,
        step,
        &move |k| Ok(vec![k * k * p1.mu_macro / p1.rho]),
    )?);
    Ok(out)
}

/// Sweeps any model over the default grid (`n` samples up to `k_max`).
pub fn sweep(
    p: &ModelParams,
    k_max: f64,
    n: usize,
) -> Result<Vec<DispersionBranch>, DispersionError> {
    let grid = k_grid(k_max, n)?;
    match p {
        ModelParams::Relaxed(q) => sweep_relaxed_grid(q, &grid),
        ModelParams::Cosserat(q) => sweep_cosserat_grid(q, &grid),
        ModelParams::Cauchy(q) => sweep_cauchy_grid(q, &grid),
    }
}

/// The four Cosserat branch values at one wavenumber from the closed forms
///
/// ```text
/// omega_acoustic/optic,trans = sqrt( (a(k) -/+ sqrt(a(k)^2 - b^2 k^2)) / 4 )
/// a(k) = (4 mu_c + mu_macro L_c^2 k^2)/eta + 2 (mu_macro + mu_c) k^2 / rho
/// b^2  = 8 mu_macro (4 mu_c + k^2 L_c^2 (mu_macro + mu_c)) / (rho eta)
/// ```
///
/// with `a(k) = 2 tr B7` and `b^2 k^2 = 16 det B7`, so the pair reproduces
/// the `B7` eigenvalues exactly; the longitudinal pair comes from the `B6`
/// diagonal. A negative inner radicand (possible only through rounding, the
/// discriminant is a sum of squares) or a negative eigenvalue is reported as
/// an imaginary marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosseratClosedForm {
    pub acoustic_long: WaveOmega,
    pub optic_long: WaveOmega,
    pub acoustic_trans: WaveOmega,
    pub optic_trans: WaveOmega,
}

pub fn cosserat_closed_form(p: &CosseratParams, k: f64) -> CosseratClosedForm {
    let acoustic_long =
        WaveOmega::from_omega_squared(k * k * (2.0 * p.mu_macro + p.lambda_macro) / p.rho);
    let optic_long = WaveOmega::from_omega_squared(
        (2.0 * p.mu_macro * p.l_c * p.l_c * k * k + 2.0 * p.mu_c) / p.eta,
    );

    let a = (4.0 * p.mu_c + p.mu_macro * p.l_c * p.l_c * k * k) / p.eta
        + 2.0 * (p.mu_macro + p.mu_c) / p.rho * k * k;
    let b_sq = 8.0 * p.mu_macro * (4.0 * p.mu_c + k * k * p.l_c * p.l_c * (p.mu_macro + p.mu_c))
        / (p.rho * p.eta);
    let inner = a * a - b_sq * k * k;
    let (acoustic_trans, optic_trans) = if inner < 0.0 {
        (
            WaveOmega::Imaginary((-inner).sqrt() / 2.0),
            WaveOmega::Imaginary((-inner).sqrt() / 2.0),
        )
    } else {
        let root = inner.sqrt();
        (
            WaveOmega::from_omega_squared((a - root) / 4.0),
            WaveOmega::from_omega_squared((a + root) / 4.0),
        )
    };
    CosseratClosedForm {
        acoustic_long,
        optic_long,
        acoustic_trans,
        optic_trans,
    }
}

/// Acoustic tangents `(c_l, c_t)` at `k -> 0+` with a custom step.
pub fn tangents_at_zero_with_step(
    p: &ModelParams,
    h: f64,
) -> Result<(f64, f64), DispersionError> {
    let slope = |w2_h: f64, w2_h2: f64| -> Result<f64, DispersionError> {
        if w2_h < -CLAMP_TOL || w2_h2 < -CLAMP_TOL {
            return Err(DispersionError::UndefinedTangent);
        }
        Ok(richardson_slope(
            w2_h.max(0.0).sqrt(),
            w2_h2.max(0.0).sqrt(),
            h,
        ))
    };
    match p {
        ModelParams::Relaxed(q) => {
            let long_h = blocks::relaxed_b1(q, h).omega_squared()?[0];
            let long_h2 = blocks::relaxed_b1(q, 0.5 * h).omega_squared()?[0];
            let trans_h = blocks::relaxed_b2(q, h).omega_squared()?[0];
            let trans_h2 = blocks::relaxed_b2(q, 0.5 * h).omega_squared()?[0];
            Ok((slope(long_h, long_h2)?, slope(trans_h, trans_h2)?))
        }
        ModelParams::Cosserat(q) => {
            let cl2 = (2.0 * q.mu_macro + q.lambda_macro) / q.rho;
            let trans_h = blocks::cosserat_b7(q, h).omega_squared()?[0];
            let trans_h2 = blocks::cosserat_b7(q, 0.5 * h).omega_squared()?[0];
            Ok((
                slope(cl2 * h * h, cl2 * 0.25 * h * h)?,
                slope(trans_h, trans_h2)?,
            ))
        }
        ModelParams::Cauchy(q) => {
            let cl2 = (2.0 * q.mu_macro + q.lambda_macro) / q.rho;
            let ct2 = q.mu_macro / q.rho;
            Ok((
                slope(cl2 * h * h, cl2 * 0.25 * h * h)?,
                slope(ct2 * h * h, ct2 * 0.25 * h * h)?,
            ))
        }
    }
}

/// Acoustic tangents `(c_l, c_t)` at the default step
/// `h = 1e-3 max(1, 1/L_c)`.
pub fn tangents_at_zero(p: &ModelParams) -> Result<(f64, f64), DispersionError> {
    let h = match p {
        ModelParams::Relaxed(q) => default_step(q.l_c),
        ModelParams::Cosserat(q) => default_step(q.l_c),
        ModelParams::Cauchy(_) => 1e-3,
    };
    tangents_at_zero_with_step(p, h)
}

/// Group velocity `d omega / dk` from a sampled branch by central finite
/// difference at the interior sample nearest to `k` (one-sided at the ends).
pub fn group_velocity(branch: &DispersionBranch, k: f64) -> Result<f64, DispersionError> {
    let s = &branch.samples;
    if s.len() < 2 || k < s[0].k || k > s[s.len() - 1].k {
        return Err(DispersionError::OutOfRange(k));
    }
    let mut idx = 0;
    let mut best = f64::INFINITY;
    for (i, sample) in s.iter().enumerate() {
        let d = (sample.k - k).abs();
        if d < best {
            best = d;
            idx = i;
        }
    }
    let (lo, mid, hi) = if idx == 0 {
        (0, 0, 1)
    } else if idx == s.len() - 1 {
        (s.len() - 2, s.len() - 1, s.len() - 1)
    } else {
        (idx - 1, idx, idx + 1)
    };
    let w = |i: usize| -> Result<f64, DispersionError> {
        s[i].omega
            .real()
            .ok_or(DispersionError::ImaginaryAround(s[i].k))
    };
    if lo == mid || mid == hi {
        // Boundary: one-sided difference.
        let a = if lo == mid { mid } else { lo };
        let b = if lo == mid { hi } else { mid };
        return Ok((w(b)? - w(a)?) / (s[b].k - s[a].k));
    }
    // Non-uniform central difference, exact for quadratics.
    let h1 = s[mid].k - s[lo].k;
    let h2 = s[hi].k - s[mid].k;
    Ok((w(hi)? * h1 * h1 - w(lo)? * h2 * h2 + w(mid)? * (h2 * h2 - h1 * h1))
        / (h1 * h2 * (h1 + h2)))
}

/// Smallest `omega^2` over `B1`, `B2`, `B4` on a wavenumber grid.
pub fn min_relaxed_omega_squared(
    p: &MaterialParams,
    grid: &[f64],
) -> Result<f64, DispersionError> {
    let mut min = f64::INFINITY;
    for &k in grid {
        for w2 in [
            blocks::relaxed_b1(p, k).omega_squared()?,
            blocks::relaxed_b2(p, k).omega_squared()?,
            blocks::relaxed_b4(p, k).omega_squared()?,
        ] {
            for v in w2 {
                min = min.min(v);
            }
        }
    }
    Ok(min)
}

/// Whether every `omega^2` of `B1`, `B2`, `B4` stays at or above `-floor`
/// over the grid. Bails out at the first violation.
pub fn relaxed_all_real(
    p: &MaterialParams,
    grid: &[f64],
    floor: f64,
) -> Result<bool, DispersionError> {
    for &k in grid {
        for w2 in [
            blocks::relaxed_b1(p, k).omega_squared()?,
            blocks::relaxed_b2(p, k).omega_squared()?,
            blocks::relaxed_b4(p, k).omega_squared()?,
        ] {
            if w2.iter().any(|v| *v < -floor) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of the criteria/spectra equivalence scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgreementScan {
    pub trials: u64,
    /// Samples where the inequality verdict and the spectral verdict agree.
    pub agreeing: u64,
    pub proposition_passes: u64,
    pub spectral_passes: u64,
}

/// Compares the real-wave inequality verdict with a brute-force spectral
/// verdict (`omega^2 >= -1e-12` on the default 200-point grid over [0, 10])
/// for seeded random relaxed parameter sets. Partition-invariant for any
/// thread count.
pub fn proposition_spectra_agreement(
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<AgreementScan, DispersionError> {
    if trials == 0 {
        return Err(DispersionError::InvalidGrid { n: 0, k_max: 10.0 });
    }
    let grid = k_grid(10.0, 200)?;
    let threads = threads.max(1).min(trials as usize);
    let run = |range: std::ops::Range<u64>| -> Result<(u64, u64, u64), DispersionError> {
        let mut agreeing = 0;
        let mut prop = 0;
        let mut spec = 0;
        for trial in range {
            let mut rng = crate::rng::SplitMix64::for_trial(seed, trial);
            let p = crate::criteria::sample_relaxed(&mut rng);
            let passes = crate::criteria::check_relaxed(
                &p,
                crate::criteria::ConditionSetName::PropositionRealWaves,
            )
            .expect("sampled parameters have nonzero denominators")
            .passed;
            let all_real = relaxed_all_real(&p, &grid, CLAMP_TOL)?;
            prop += u64::from(passes);
            spec += u64::from(all_real);
            agreeing += u64::from(passes == all_real);
        }
        Ok((agreeing, prop, spec))
    };

    let (agreeing, proposition_passes, spectral_passes) = if threads == 1 {
        run(0..trials)?
    } else {
        let chunk = trials.div_ceil(threads as u64);
        let partials = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(trials);
                    scope.spawn(move || run(lo..hi.max(lo)))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("agreement worker panicked"))
                .collect::<Vec<_>>()
        });
        let mut acc = (0, 0, 0);
        for p in partials {
            let (a, b, c) = p?;
            acc = (acc.0 + a, acc.1 + b, acc.2 + c);
        }
        acc
    };
    Ok(AgreementScan {
        trials,
        agreeing,
        proposition_passes,
        spectral_passes,
    })
}
