//! Constitutive parameters, derived moduli and the micro/macro
//! homogenization relations.
//!
//! The relaxed model carries 8 constants (`mu_e`, `lambda_e`, `mu_micro`,
//! `lambda_micro`, `mu_c`, `l_c`, `rho`, `eta`); the Cosserat and Cauchy
//! comparison models use the macroscopic subsets. Harmonic-mean
//! homogenization ties the scales together:
//!
//! ```text
//! mu_macro    = mu_e mu_micro / (mu_e + mu_micro)
//! kappa_macro = kappa_e kappa_micro / (kappa_e + kappa_micro)
//! ```
//!
//! No sign constraints are imposed at construction time; classifying a
//! parameter set is the `criteria` module's concern.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("rho and eta must be strictly positive (rho = {rho}, eta = {eta})")]
    NonPositiveDensity { rho: f64, eta: f64 },
    #[error("harmonic-mean denominator {name} vanishes")]
    ZeroDenominator { name: &'static str },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

/// The 8 constitutive constants of the relaxed micromorphic model (SI units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    /// Elastic shear-type stiffness (Pa).
    pub mu_e: f64,
    /// Elastic Lamé-type stiffness (Pa).
    pub lambda_e: f64,
    /// Microscopic shear-type stiffness (Pa).
    pub mu_micro: f64,
    /// Microscopic Lamé-type stiffness (Pa).
    pub lambda_micro: f64,
    /// Rotational coupling stiffness (Pa).
    pub mu_c: f64,
    /// Characteristic length (m).
    pub l_c: f64,
    /// Averaged macroscopic mass density (kg/m^3).
    pub rho: f64,
    /// Micro-inertia density (kg/m).
    pub eta: f64,
}

/// Parameters of the Cosserat (micropolar) comparison model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosseratParams {
    pub mu_macro: f64,
    pub lambda_macro: f64,
    pub mu_c: f64,
    pub l_c: f64,
    pub rho: f64,
    pub eta: f64,
}

/// Parameters of the classical linear-elastic comparison model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyParams {
    pub mu_macro: f64,
    pub lambda_macro: f64,
    pub rho: f64,
}

/// Parameter set for any of the three supported models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Relaxed(MaterialParams),
    Cosserat(CosseratParams),
    Cauchy(CauchyParams),
}

impl MaterialParams {
    /// All eight constants equal to one; the reference point used across the
    /// test suite.
    pub fn canonical_unit() -> Self {
        Self {
            mu_e: 1.0,
            lambda_e: 1.0,
            mu_micro: 1.0,
            lambda_micro: 1.0,
            mu_c: 1.0,
            l_c: 1.0,
            rho: 1.0,
            eta: 1.0,
        }
    }

    fn check_density(&self) -> Result<(), ParamError> {
        if self.rho <= 0.0 || self.eta <= 0.0 {
            return Err(ParamError::NonPositiveDensity {
                rho: self.rho,
                eta: self.eta,
            });
        }
        Ok(())
    }

    pub fn kappa_e(&self) -> f64 {
        (2.0 * self.mu_e + 3.0 * self.lambda_e) / 3.0
    }

    pub fn kappa_micro(&self) -> f64 {
        (2.0 * self.mu_micro + 3.0 * self.lambda_micro) / 3.0
    }

    pub fn mu_macro(&self) -> Result<f64, ParamError> {
        let den = self.mu_e + self.mu_micro;
        if den == 0.0 {
            return Err(ParamError::ZeroDenominator {
                name: "mu_e + mu_micro",
            });
        }
        Ok(self.mu_e * self.mu_micro / den)
    }

    pub fn kappa_macro(&self) -> Result<f64, ParamError> {
        let den = self.kappa_e() + self.kappa_micro();
        if den == 0.0 {
            return Err(ParamError::ZeroDenominator {
                name: "kappa_e + kappa_micro",
            });
        }
        Ok(self.kappa_e() * self.kappa_micro() / den)
    }

    /// `lambda_macro = kappa_macro - (2/3) mu_macro`; never stored separately.
    pub fn lambda_macro(&self) -> Result<f64, ParamError> {
        Ok(self.kappa_macro()? - 2.0 / 3.0 * self.mu_macro()?)
    }

    // Squared characteristic quantities. These are what the dispersion
    // blocks consume; they stay real even when the parameter set is
    // indefinite and the corresponding speed/frequency is undefined.

    /// `c_m^2 = mu_e L_c^2 / eta`.
    pub fn cm_sq(&self) -> f64 {
        self.mu_e * self.l_c * self.l_c / self.eta
    }

    /// `c_s^2 = (mu_e + mu_c) / rho`.
    pub fn cs_sq(&self) -> f64 {
        (self.mu_e + self.mu_c) / self.rho
    }

    /// `c_p^2 = (2 mu_e + lambda_e) / rho`.
    pub fn cp_sq(&self) -> f64 {
        (2.0 * self.mu_e + self.lambda_e) / self.rho
    }

    /// `omega_s^2 = 2 (mu_e + mu_micro) / eta`.
    pub fn omega_s_sq(&self) -> f64 {
        2.0 * (self.mu_e + self.mu_micro) / self.eta
    }

    /// `omega_p^2 = ((2 mu_e + 3 lambda_e) + (2 mu_micro + 3 lambda_micro)) / eta`.
    pub fn omega_p_sq(&self) -> f64 {
        (2.0 * self.mu_e + 3.0 * self.lambda_e + 2.0 * self.mu_micro + 3.0 * self.lambda_micro)
            / self.eta
    }

    /// `omega_r^2 = 2 mu_c / eta`.
    pub fn omega_r_sq(&self) -> f64 {
        2.0 * self.mu_c / self.eta
    }

    /// `omega_l^2 = (2 mu_micro + lambda_micro) / eta`.
    pub fn omega_l_sq(&self) -> f64 {
        (2.0 * self.mu_micro + self.lambda_micro) / self.eta
    }

    /// `omega_t^2 = mu_micro / eta`.
    pub fn omega_t_sq(&self) -> f64 {
        self.mu_micro / self.eta
    }

    /// Cosserat model with the homogenized macroscopic moduli and the same
    /// coupling, length scale and inertia.
    pub fn to_cosserat(&self) -> Result<CosseratParams, ParamError> {
        Ok(CosseratParams {
            mu_macro: self.mu_macro()?,
            lambda_macro: self.lambda_macro()?,
            mu_c: self.mu_c,
            l_c: self.l_c,
            rho: self.rho,
            eta: self.eta,
        })
    }

    /// Cauchy model with the homogenized macroscopic moduli.
    pub fn to_cauchy(&self) -> Result<CauchyParams, ParamError> {
        Ok(CauchyParams {
            mu_macro: self.mu_macro()?,
            lambda_macro: self.lambda_macro()?,
            rho: self.rho,
        })
    }
}

/// A speed or frequency whose defining radicand may be negative for
/// indefinite parameter sets. The spectral machinery never needs these
/// square roots; they exist for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Characteristic {
    /// The radicand (a squared speed or squared frequency).
    pub squared: f64,
}

impl Characteristic {
    pub fn new(squared: f64) -> Self {
        Self { squared }
    }

    /// The square root when defined, `None` when the radicand is negative.
    pub fn value(&self) -> Option<f64> {
        (self.squared >= 0.0).then(|| self.squared.sqrt())
    }
}

/// Bulk moduli, macroscopic Lamé pair and characteristic speeds/frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedModuli {
    pub kappa_e: f64,
    pub kappa_micro: f64,
    pub kappa_macro: f64,
    pub mu_macro: f64,
    pub lambda_macro: f64,
    pub c_m: Characteristic,
    pub c_s: Characteristic,
    pub c_p: Characteristic,
    pub omega_s: Characteristic,
    pub omega_p: Characteristic,
    pub omega_r: Characteristic,
    pub omega_l: Characteristic,
    pub omega_t: Characteristic,
}

/// Computes every derived modulus and characteristic quantity.
pub fn derive(p: &MaterialParams) -> Result<DerivedModuli, ParamError> {
    p.check_density()?;
    let mu_macro = p.mu_macro()?;
    let kappa_macro = p.kappa_macro()?;
    Ok(DerivedModuli {
        kappa_e: p.kappa_e(),
        kappa_micro: p.kappa_micro(),
        kappa_macro,
        mu_macro,
        lambda_macro: kappa_macro - 2.0 / 3.0 * mu_macro,
        c_m: Characteristic::new(p.cm_sq()),
        c_s: Characteristic::new(p.cs_sq()),
        c_p: Characteristic::new(p.cp_sq()),
        omega_s: Characteristic::new(p.omega_s_sq()),
        omega_p: Characteristic::new(p.omega_p_sq()),
        omega_r: Characteristic::new(p.omega_r_sq()),
        omega_l: Characteristic::new(p.omega_l_sq()),
        omega_t: Characteristic::new(p.omega_t_sq()),
    })
}

/// A `(mu, kappa)` modulus pair on one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusPair {
    pub mu: f64,
    pub kappa: f64,
}

/// Which side of the micro/elastic pair is known when inverting the
/// homogenization formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnownScale {
    Elastic(ModulusPair),
    Micro(ModulusPair),
}

/// Recovers the missing `(mu, kappa)` pair from the macroscopic pair and the
/// known scale, inverting the harmonic means:
///
/// ```text
/// mu_e = mu_micro mu_macro / (mu_micro - mu_macro)      (and symmetrically)
/// ```
pub fn invert_micro(macro_pair: ModulusPair, known: KnownScale) -> Result<ModulusPair, ParamError> {
    let (mu_known, kappa_known) = match known {
        KnownScale::Elastic(p) | KnownScale::Micro(p) => (p.mu, p.kappa),
    };
    let mu_den = mu_known - macro_pair.mu;
    if mu_den == 0.0 {
        return Err(ParamError::ZeroDenominator {
            name: "mu_known - mu_macro",
        });
    }
    let kappa_den = kappa_known - macro_pair.kappa;
    if kappa_den == 0.0 {
        return Err(ParamError::ZeroDenominator {
            name: "kappa_known - kappa_macro",
        });
    }
    Ok(ModulusPair {
        mu: mu_known * macro_pair.mu / mu_den,
        kappa: kappa_known * macro_pair.kappa / kappa_den,
    })
}

/// One inequality from the harmonic-mean chain, reported as its slack
/// (left-hand side minus right-hand side; nonnegative when satisfied).
#[derive(Debug, Clone, PartialEq)]
pub struct InequalitySlack {
    pub label: &'static str,
    pub slack: f64,
}

/// Evaluates the harmonic-mean inequality chain.
///
/// Requires `mu_e + mu_micro > 0` and `kappa_e + kappa_micro > 0`; under
/// those sums the macroscopic moduli are bounded by both scales and
/// `3 (2 mu_e + lambda_e) >= 4 mu_macro + 3 kappa_e >= 3 (2 mu_macro + lambda_macro)`.
pub fn appendix_inequalities(p: &MaterialParams) -> Result<Vec<InequalitySlack>, ParamError> {
    if p.mu_e + p.mu_micro <= 0.0 {
        return Err(ParamError::PreconditionViolated("mu_e + mu_micro must be > 0"));
    }
    if p.kappa_e() + p.kappa_micro() <= 0.0 {
        return Err(ParamError::PreconditionViolated(
            "kappa_e + kappa_micro must be > 0",
        ));
    }
    let mu_macro = p.mu_macro()?;
    let kappa_macro = p.kappa_macro()?;
    let lambda_macro = kappa_macro - 2.0 / 3.0 * mu_macro;
    let mid = 4.0 * mu_macro + 3.0 * p.kappa_e();
    Ok(vec![
        InequalitySlack {
            label: "kappa_macro <= kappa_e",
            slack: p.kappa_e() - kappa_macro,
        },
        InequalitySlack {
            label: "kappa_macro <= kappa_micro",
            slack: p.kappa_micro() - kappa_macro,
        },
        InequalitySlack {
            label: "mu_macro <= mu_e",
            slack: p.mu_e - mu_macro,
        },
        InequalitySlack {
            label: "mu_macro <= mu_micro",
            slack: p.mu_micro - mu_macro,
        },
        InequalitySlack {
            label: "3(2 mu_e + lambda_e) >= 4 mu_macro + 3 kappa_e",
            slack: 3.0 * (2.0 * p.mu_e + p.lambda_e) - mid,
        },
        InequalitySlack {
            label: "4 mu_macro + 3 kappa_e >= 3(2 mu_macro + lambda_macro)",
            slack: mid - 3.0 * (2.0 * mu_macro + lambda_macro),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn canonical_unit_derivation() {
        let d = derive(&MaterialParams::canonical_unit()).unwrap();
        assert!(close(d.mu_macro, 0.5, 1e-15));
        assert!(close(d.kappa_e, 5.0 / 3.0, 1e-15));
        assert!(close(d.kappa_micro, 5.0 / 3.0, 1e-15));
        assert!(close(d.kappa_macro, 5.0 / 6.0, 1e-15));
        assert!(close(d.lambda_macro, 0.5, 1e-15));
        assert!(close(d.c_m.value().unwrap(), 1.0, 1e-15));
        assert!(close(d.omega_s.squared, 4.0, 1e-15));
        assert!(close(d.omega_r.squared, 2.0, 1e-15));
        assert!(close(d.omega_p.squared, 10.0, 1e-15));
        assert!(close(d.c_s.squared, 2.0, 1e-15));
        assert!(close(d.c_p.squared, 3.0, 1e-15));
        assert!(close(d.omega_l.squared, 3.0, 1e-15));
        assert!(close(d.omega_t.squared, 1.0, 1e-15));
    }

    #[test]
    fn equal_moduli_halve_under_harmonic_mean() {
        let p = MaterialParams {
            mu_e: 2.0,
            mu_micro: 2.0,
            ..MaterialParams::canonical_unit()
        };
        assert!(close(p.mu_macro().unwrap(), 1.0, 1e-15));
    }

    #[test]
    fn negative_radicand_is_undefined() {
        let p = MaterialParams {
            mu_c: -0.5,
            ..MaterialParams::canonical_unit()
        };
        let d = derive(&p).unwrap();
        assert_eq!(d.omega_r.value(), None);
        assert!(close(d.omega_r.squared, -1.0, 1e-15));
    }

    #[test]
    fn density_must_be_positive() {
        let p = MaterialParams {
            rho: 0.0,
            ..MaterialParams::canonical_unit()
        };
        assert!(matches!(
            derive(&p),
            Err(ParamError::NonPositiveDensity { .. })
        ));
        let p = MaterialParams {
            eta: -1.0,
            ..MaterialParams::canonical_unit()
        };
        assert!(derive(&p).is_err());
    }

    #[test]
    fn zero_denominator_detected() {
        let p = MaterialParams {
            mu_e: 1.0,
            mu_micro: -1.0,
            ..MaterialParams::canonical_unit()
        };
        assert_eq!(
            p.mu_macro(),
            Err(ParamError::ZeroDenominator {
                name: "mu_e + mu_micro"
            })
        );
    }

    #[test]
    fn lame_bulk_identity() {
        // 2 mu_e + lambda_e = (4 mu_e + 3 kappa_e) / 3 exactly.
        for (mu, la) in [(1.0, 1.0), (2.5, -0.75), (-0.5, 3.0), (0.125, 0.25)] {
            let p = MaterialParams {
                mu_e: mu,
                lambda_e: la,
                ..MaterialParams::canonical_unit()
            };
            let lhs = 2.0 * p.mu_e + p.lambda_e;
            let rhs = (4.0 * p.mu_e + 3.0 * p.kappa_e()) / 3.0;
            assert!(close(lhs, rhs, 1e-14 * lhs.abs().max(1.0)));
        }
    }

    #[test]
    fn invert_micro_trivial_cases() {
        // mu_micro = 1, mu_macro = 0.5 -> mu_e = 1
        let out = invert_micro(
            ModulusPair { mu: 0.5, kappa: 5.0 / 6.0 },
            KnownScale::Micro(ModulusPair { mu: 1.0, kappa: 5.0 / 3.0 }),
        )
        .unwrap();
        assert!(close(out.mu, 1.0, 1e-14));
        // kappa_e = 5/3, kappa_macro = 5/6 -> kappa_micro = 5/3
        assert!(close(out.kappa, 5.0 / 3.0, 1e-14));
    }

    #[test]
    fn invert_micro_rejects_equal_moduli() {
        let r = invert_micro(
            ModulusPair { mu: 1.0, kappa: 1.0 },
            KnownScale::Elastic(ModulusPair { mu: 1.0, kappa: 2.0 }),
        );
        assert!(matches!(r, Err(ParamError::ZeroDenominator { .. })));
    }

    #[test]
    fn appendix_chain_on_unit_params() {
        let slacks = appendix_inequalities(&MaterialParams::canonical_unit()).unwrap();
        for s in &slacks {
            assert!(s.slack >= -1e-15, "{} violated: {}", s.label, s.slack);
        }
        let mu_slack = slacks.iter().find(|s| s.label == "mu_macro <= mu_e").unwrap();
        assert!(close(mu_slack.slack, 0.5, 1e-15));
    }

    #[test]
    fn appendix_chain_allows_one_negative_modulus() {
        // mu_e = 3, mu_micro = -1: mu_macro = -1.5 <= min(3, -1) = -1.
        let p = MaterialParams {
            mu_e: 3.0,
            mu_micro: -1.0,
            ..MaterialParams::canonical_unit()
        };
        assert!(close(p.mu_macro().unwrap(), -1.5, 1e-15));
        let slacks = appendix_inequalities(&p).unwrap();
        for s in &slacks {
            assert!(s.slack >= -1e-14, "{} violated: {}", s.label, s.slack);
        }
    }

    #[test]
    fn appendix_chain_precondition() {
        let p = MaterialParams {
            mu_e: 1.0,
            mu_micro: -1.0,
            ..MaterialParams::canonical_unit()
        };
        assert!(matches!(
            appendix_inequalities(&p),
            Err(ParamError::PreconditionViolated(_))
        ));
    }
}
