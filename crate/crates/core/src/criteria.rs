//! Named inequality sets and parameter-set classification.
//!
//! Each set mirrors one condition stated for the relaxed micromorphic,
//! Cosserat or Cauchy model: positive definiteness of the energy, the
//! necessary-and-sufficient real-wave condition, its reduced form, the macro
//! limit, and the strong-ellipticity conditions. Strictness is encoded
//! exactly as stated; `mu_c >= 0` is the only non-strict entry in the
//! real-wave set.

use crate::params::{CauchyParams, CosseratParams, MaterialParams, ModelParams, ParamError};
use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CriteriaError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("condition set {set:?} is not defined for the {model} model")]
    NotApplicable { set: ConditionSetName, model: &'static str },
    #[error("at least one trial required")]
    NoTrials,
}

/// Every named condition set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionSetName {
    PositiveDefiniteRelaxed,
    PropositionRealWaves,
    ReducedRealWaves,
    MacroLimit,
    CauchyPositiveDefinite,
    CauchyStrongEllipticity,
    CosseratPositiveDefinite,
    CosseratRealWaves,
    MicropolarStrongEllipticity,
}

pub const ALL_SETS: [ConditionSetName; 9] = [
    ConditionSetName::PositiveDefiniteRelaxed,
    ConditionSetName::PropositionRealWaves,
    ConditionSetName::ReducedRealWaves,
    ConditionSetName::MacroLimit,
    ConditionSetName::CauchyPositiveDefinite,
    ConditionSetName::CauchyStrongEllipticity,
    ConditionSetName::CosseratPositiveDefinite,
    ConditionSetName::CosseratRealWaves,
    ConditionSetName::MicropolarStrongEllipticity,
];

impl ConditionSetName {
    /// Stable kebab-case identifier, used by the CLI.
    pub fn id(&self) -> &'static str {
        match self {
            Self::PositiveDefiniteRelaxed => "positive-definite",
            Self::PropositionRealWaves => "proposition",
            Self::ReducedRealWaves => "reduced",
            Self::MacroLimit => "macro-limit",
            Self::CauchyPositiveDefinite => "cauchy-positive-definite",
            Self::CauchyStrongEllipticity => "cauchy-ellipticity",
            Self::CosseratPositiveDefinite => "cosserat-positive-definite",
            Self::CosseratRealWaves => "cosserat-real-waves",
            Self::MicropolarStrongEllipticity => "micropolar-ellipticity",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        ALL_SETS.iter().copied().find(|s| s.id() == id)
    }
}

/// One evaluated inequality `value > 0` (strict) or `value >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub label: &'static str,
    pub value: f64,
    pub strict: bool,
    /// Listed for fidelity but never affects the verdict.
    pub redundant: bool,
    pub satisfied: bool,
}

/// Pass/fail verdict for one condition set on one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub set: ConditionSetName,
    pub passed: bool,
    pub inequalities: Vec<Inequality>,
}

impl ConditionReport {
    /// Labels and values of the violated non-redundant inequalities.
    pub fn violated(&self) -> Vec<(&'static str, f64)> {
        self.inequalities
            .iter()
            .filter(|q| !q.redundant && !q.satisfied)
            .map(|q| (q.label, q.value))
            .collect()
    }
}

/// A not-yet-evaluated inequality: (label, value, strict, redundant).
type RawInequality = (&'static str, f64, bool, bool);

/// Evaluates raw inequalities with an absolute slack tolerance. The default
/// tolerance is 0: criteria are sign conditions, not approximations.
fn evaluate(
    set: ConditionSetName,
    raw: Vec<RawInequality>,
    slack_tol: f64,
) -> ConditionReport {
    let inequalities: Vec<Inequality> = raw
        .into_iter()
        .map(|(label, value, strict, redundant)| {
            let satisfied = if strict {
                value > -slack_tol
            } else {
                value >= -slack_tol
            };
            Inequality {
                label,
                value,
                strict,
                redundant,
                satisfied,
            }
        })
        .collect();
    let passed = inequalities
        .iter()
        .all(|q| q.redundant || q.satisfied);
    ConditionReport {
        set,
        passed,
        inequalities,
    }
}

fn macro_pair(p: &MaterialParams) -> Result<(f64, f64), ParamError> {
    Ok((p.mu_macro()?, p.lambda_macro()?))
}

fn raw_macro_limit(mu_macro: f64, lambda_macro: f64, mu_c: f64) -> Vec<RawInequality> {
    vec![
        ("mu_macro > 0", mu_macro, true, false),
        ("mu_c >= 0", mu_c, false, false),
        (
            "2 mu_macro + lambda_macro > 0",
            2.0 * mu_macro + lambda_macro,
            true,
            false,
        ),
    ]
}

fn raw_cauchy_pd(mu_macro: f64, lambda_macro: f64) -> Vec<RawInequality> {
    vec![
        ("mu_macro > 0", mu_macro, true, false),
        (
            "2 mu_macro + 3 lambda_macro > 0",
            2.0 * mu_macro + 3.0 * lambda_macro,
            true,
            false,
        ),
    ]
}

fn raw_cauchy_se(mu_macro: f64, lambda_macro: f64) -> Vec<RawInequality> {
    vec![
        ("mu_macro > 0", mu_macro, true, false),
        (
            "2 mu_macro + lambda_macro > 0",
            2.0 * mu_macro + lambda_macro,
            true,
            false,
        ),
    ]
}

fn raw_cosserat_pd(mu_macro: f64, lambda_macro: f64, mu_c: f64, l_c: f64) -> Vec<RawInequality> {
    vec![
        (
            "2 mu_macro + 3 lambda_macro > 0",
            2.0 * mu_macro + 3.0 * lambda_macro,
            true,
            false,
        ),
        ("mu_macro > 0", mu_macro, true, false),
        ("mu_c > 0", mu_c, true, false),
        ("L_c > 0", l_c, true, false),
    ]
}

fn raw_cosserat_real_waves(mu_macro: f64, lambda_macro: f64, mu_c: f64) -> Vec<RawInequality> {
    vec![
        (
            "2 mu_macro + lambda_macro > 0",
            2.0 * mu_macro + lambda_macro,
            true,
            false,
        ),
        ("mu_macro > 0", mu_macro, true, false),
        ("mu_c >= 0", mu_c, false, false),
    ]
}

fn raw_micropolar_se(mu_macro: f64, lambda_macro: f64, mu_c: f64) -> Vec<RawInequality> {
    vec![
        (
            "2 mu_macro + lambda_macro > 0",
            2.0 * mu_macro + lambda_macro,
            true,
            false,
        ),
        ("mu_macro + mu_c > 0", mu_macro + mu_c, true, false),
    ]
}

/// Classifies a relaxed-model parameter set. Sets defined on the macroscopic
/// scale are evaluated with the homogenized moduli.
pub fn check_relaxed(
    p: &MaterialParams,
    set: ConditionSetName,
) -> Result<ConditionReport, CriteriaError> {
    check_relaxed_with_tol(p, set, 0.0)
}

pub fn check_relaxed_with_tol(
    p: &MaterialParams,
    set: ConditionSetName,
    slack_tol: f64,
) -> Result<ConditionReport, CriteriaError> {
    use ConditionSetName::*;
    let raw = match set {
        PositiveDefiniteRelaxed => vec![
            ("mu_e > 0", p.mu_e, true, false),
            ("mu_c > 0", p.mu_c, true, false),
            (
                "2 mu_e + 3 lambda_e > 0",
                2.0 * p.mu_e + 3.0 * p.lambda_e,
                true,
                false,
            ),
            ("mu_micro > 0", p.mu_micro, true, false),
            (
                "2 mu_micro + 3 lambda_micro > 0",
                2.0 * p.mu_micro + 3.0 * p.lambda_micro,
                true,
                false,
            ),
            ("L_c > 0", p.l_c, true, false),
        ],
        PropositionRealWaves => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            vec![
                ("mu_c >= 0", p.mu_c, false, false),
                ("mu_e > 0", p.mu_e, true, false),
                (
                    "2 mu_e + lambda_e > 0",
                    2.0 * p.mu_e + p.lambda_e,
                    true,
                    false,
                ),
                ("mu_micro > 0", p.mu_micro, true, false),
                (
                    "2 mu_micro + lambda_micro > 0",
                    2.0 * p.mu_micro + p.lambda_micro,
                    true,
                    false,
                ),
                // Redundant: implied by mu_e > 0 and mu_micro > 0.
                ("mu_macro > 0 (redundant)", mu_macro, true, true),
                (
                    "2 mu_macro + lambda_macro > 0",
                    2.0 * mu_macro + lambda_macro,
                    true,
                    false,
                ),
                (
                    "kappa_e + kappa_micro > 0",
                    p.kappa_e() + p.kappa_micro(),
                    true,
                    false,
                ),
                (
                    "4 mu_macro + 3 kappa_e > 0",
                    4.0 * mu_macro + 3.0 * p.kappa_e(),
                    true,
                    false,
                ),
            ]
        }
        ReducedRealWaves => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            vec![
                ("mu_e > 0", p.mu_e, true, false),
                ("mu_micro > 0", p.mu_micro, true, false),
                ("mu_c >= 0", p.mu_c, false, false),
                (
                    "kappa_e + kappa_micro > 0",
                    p.kappa_e() + p.kappa_micro(),
                    true,
                    false,
                ),
                (
                    "2 mu_macro + lambda_macro > 0",
                    2.0 * mu_macro + lambda_macro,
                    true,
                    false,
                ),
            ]
        }
        MacroLimit => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            raw_macro_limit(mu_macro, lambda_macro, p.mu_c)
        }
        CauchyPositiveDefinite => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            raw_cauchy_pd(mu_macro, lambda_macro)
        }
        CauchyStrongEllipticity => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            raw_cauchy_se(mu_macro, lambda_macro)
        }
        CosseratPositiveDefinite => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            raw_cosserat_pd(mu_macro, lambda_macro, p.mu_c, p.l_c)
        }
        CosseratRealWaves => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            raw_cosserat_real_waves(mu_macro, lambda_macro, p.mu_c)
        }
        MicropolarStrongEllipticity => {
            let (mu_macro, lambda_macro) = macro_pair(p)?;
            raw_micropolar_se(mu_macro, lambda_macro, p.mu_c)
        }
    };
    Ok(evaluate(set, raw, slack_tol))
}

/// Classifies a Cosserat-model parameter set.
pub fn check_cosserat(
    p: &CosseratParams,
    set: ConditionSetName,
) -> Result<ConditionReport, CriteriaError> {
    use ConditionSetName::*;
    let raw = match set {
        MacroLimit => raw_macro_limit(p.mu_macro, p.lambda_macro, p.mu_c),
        CauchyPositiveDefinite => raw_cauchy_pd(p.mu_macro, p.lambda_macro),
        CauchyStrongEllipticity => raw_cauchy_se(p.mu_macro, p.lambda_macro),
        CosseratPositiveDefinite => raw_cosserat_pd(p.mu_macro, p.lambda_macro, p.mu_c, p.l_c),
        CosseratRealWaves => raw_cosserat_real_waves(p.mu_macro, p.lambda_macro, p.mu_c),
        MicropolarStrongEllipticity => raw_micropolar_se(p.mu_macro, p.lambda_macro, p.mu_c),
        _ => {
            return Err(CriteriaError::NotApplicable {
                set,
                model: "Cosserat",
            })
        }
    };
    Ok(evaluate(set, raw, 0.0))
}

/// Classifies a Cauchy-model parameter set.
pub fn check_cauchy(
    p: &CauchyParams,
    set: ConditionSetName,
) -> Result<ConditionReport, CriteriaError> {
    use ConditionSetName::*;
    let raw = match set {
        CauchyPositiveDefinite => raw_cauchy_pd(p.mu_macro, p.lambda_macro),
        CauchyStrongEllipticity => raw_cauchy_se(p.mu_macro, p.lambda_macro),
        _ => {
            return Err(CriteriaError::NotApplicable {
                set,
                model: "Cauchy",
            })
        }
    };
    Ok(evaluate(set, raw, 0.0))
}

/// Classifies any model's parameter set.
pub fn check(p: &ModelParams, set: ConditionSetName) -> Result<ConditionReport, CriteriaError> {
    match p {
        ModelParams::Relaxed(q) => check_relaxed(q, set),
        ModelParams::Cosserat(q) => check_cosserat(q, set),
        ModelParams::Cauchy(q) => check_cauchy(q, set),
    }
}

/// Condition sets applicable to a model, in canonical order.
pub fn applicable_sets(p: &ModelParams) -> Vec<ConditionSetName> {
    use ConditionSetName::*;
    match p {
        ModelParams::Relaxed(_) => ALL_SETS.to_vec(),
        ModelParams::Cosserat(_) => vec![
            MacroLimit,
            CauchyPositiveDefinite,
            CauchyStrongEllipticity,
            CosseratPositiveDefinite,
            CosseratRealWaves,
            MicropolarStrongEllipticity,
        ],
        ModelParams::Cauchy(_) => vec![CauchyPositiveDefinite, CauchyStrongEllipticity],
    }
}

/// Random relaxed parameter set for implication scans: each modulus uniform
/// in [-2, 4], `L_c` uniform in (0, 2], `rho = eta = 1`, resampling when a
/// harmonic-mean denominator comes within 1e-6 of zero.
pub fn sample_relaxed(rng: &mut SplitMix64) -> MaterialParams {
    loop {
        let p = MaterialParams {
            mu_e: rng.uniform(-2.0, 4.0),
            lambda_e: rng.uniform(-2.0, 4.0),
            mu_micro: rng.uniform(-2.0, 4.0),
            lambda_micro: rng.uniform(-2.0, 4.0),
            mu_c: rng.uniform(-2.0, 4.0),
            l_c: 2.0 - rng.uniform(0.0, 2.0),
            rho: 1.0,
            eta: 1.0,
        };
        if (p.mu_e + p.mu_micro).abs() > 1e-6 && (p.kappa_e() + p.kappa_micro()).abs() > 1e-6 {
            return p;
        }
    }
}

/// Observed-counterexample table over all ordered pairs of condition sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicationMatrix {
    pub trials: u64,
    /// `counterexamples[a][b]` counts samples where set `a` passed and set
    /// `b` failed, indexed per [`ALL_SETS`].
    pub counterexamples: [[u64; 9]; 9],
}

impl ImplicationMatrix {
    pub fn count(&self, premise: ConditionSetName, conclusion: ConditionSetName) -> u64 {
        let ia = ALL_SETS.iter().position(|s| *s == premise).unwrap();
        let ib = ALL_SETS.iter().position(|s| *s == conclusion).unwrap();
        self.counterexamples[ia][ib]
    }
}

fn verdicts_for_trial(seed: u64, trial: u64) -> [bool; 9] {
    let mut rng = SplitMix64::for_trial(seed, trial);
    let p = sample_relaxed(&mut rng);
    let mut verdicts = [false; 9];
    for (i, set) in ALL_SETS.iter().enumerate() {
        // sample_relaxed rejects zero denominators, so this cannot fail.
        verdicts[i] = check_relaxed(&p, *set).unwrap().passed;
    }
    verdicts
}

/// Tallies counterexamples to "A implies B" for every ordered pair of
/// condition sets over seeded random parameter sets.
///
/// Trials may be partitioned across threads; the per-trial generator makes
/// the outcome identical for any `threads >= 1`.
pub fn implication_matrix(
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<ImplicationMatrix, CriteriaError> {
    if trials == 0 {
        return Err(CriteriaError::NoTrials);
    }
    let threads = threads.max(1).min(trials as usize);
    let tally = |range: std::ops::Range<u64>| -> [[u64; 9]; 9] {
        let mut counts = [[0u64; 9]; 9];
        for trial in range {
            let v = verdicts_for_trial(seed, trial);
            for a in 0..9 {
                if !v[a] {
                    continue;
                }
                for (b, passed_b) in v.iter().enumerate() {
                    if !passed_b {
                        counts[a][b] += 1;
                    }
                }
            }
        }
        counts
    };

    let counterexamples = if threads == 1 {
        tally(0..trials)
    } else {
        let chunk = trials.div_ceil(threads as u64);
        let partials = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(trials);
                    scope.spawn(move || tally(lo..hi.max(lo)))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("implication worker panicked"))
                .collect::<Vec<_>>()
        });
        let mut counts = [[0u64; 9]; 9];
        for p in partials {
            for a in 0..9 {
                for b in 0..9 {
                    counts[a][b] += p[a][b];
                }
            }
        }
        counts
    };

    Ok(ImplicationMatrix {
        trials,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConditionSetName::*;

    #[test]
    fn unit_params_pass_definiteness_and_proposition() {
        let p = MaterialParams::canonical_unit();
        assert!(check_relaxed(&p, PositiveDefiniteRelaxed).unwrap().passed);
        let prop = check_relaxed(&p, PropositionRealWaves).unwrap();
        assert!(prop.passed);
        assert!(prop.violated().is_empty());
    }

    #[test]
    fn proposition_reports_redundant_mu_macro_without_vetoing() {
        let p = MaterialParams::canonical_unit();
        let r = check_relaxed(&p, PropositionRealWaves).unwrap();
        let red: Vec<_> = r.inequalities.iter().filter(|q| q.redundant).collect();
        assert_eq!(red.len(), 1);
        assert_eq!(red[0].label, "mu_macro > 0 (redundant)");
    }

    #[test]
    fn ellipticity_passes_where_real_waves_fail() {
        // mu_macro = 1, lambda_macro = 0, mu_c = -0.5
        let p = CosseratParams {
            mu_macro: 1.0,
            lambda_macro: 0.0,
            mu_c: -0.5,
            l_c: 1.0,
            rho: 1.0,
            eta: 1.0,
        };
        assert!(check_cosserat(&p, MicropolarStrongEllipticity).unwrap().passed);
        let rw = check_cosserat(&p, CosseratRealWaves).unwrap();
        assert!(!rw.passed);
        assert_eq!(rw.violated(), vec![("mu_c >= 0", -0.5)]);
    }

    #[test]
    fn mu_c_zero_passes_real_waves_but_not_definiteness() {
        let p = CosseratParams {
            mu_macro: 1.0,
            lambda_macro: 0.0,
            mu_c: 0.0,
            l_c: 1.0,
            rho: 1.0,
            eta: 1.0,
        };
        assert!(check_cosserat(&p, CosseratRealWaves).unwrap().passed);
        assert!(!check_cosserat(&p, CosseratPositiveDefinite).unwrap().passed);
    }

    #[test]
    fn reduced_set_passes_with_negative_kappa_micro() {
        // kappa_e = 2, kappa_micro = -1 with mu_e = mu_micro = 4 makes all
        // five reduced inequalities hold: mu_macro = 2, kappa_macro = -2,
        // 2 mu_macro + lambda_macro = (4*2 - 6)/3 = 2/3 > 0.
        let kappa_e = 2.0f64;
        let kappa_micro = -1.0f64;
        let p = MaterialParams {
            mu_e: 4.0,
            lambda_e: (3.0 * kappa_e - 2.0 * 4.0) / 3.0,
            mu_micro: 4.0,
            lambda_micro: (3.0 * kappa_micro - 2.0 * 4.0) / 3.0,
            mu_c: 0.0,
            l_c: 1.0,
            rho: 1.0,
            eta: 1.0,
        };
        assert!((p.kappa_micro() - kappa_micro).abs() < 1e-14);
        let r = check_relaxed(&p, ReducedRealWaves).unwrap();
        assert!(r.passed, "violated: {:?}", r.violated());
        // The reduced set implies the full set.
        assert!(check_relaxed(&p, PropositionRealWaves).unwrap().passed);
        // But the energy is not positive definite.
        assert!(!check_relaxed(&p, PositiveDefiniteRelaxed).unwrap().passed);
    }

    #[test]
    fn cauchy_model_only_supports_cauchy_sets() {
        let p = CauchyParams {
            mu_macro: 1.0,
            lambda_macro: 1.0,
            rho: 1.0,
        };
        assert!(check_cauchy(&p, CauchyStrongEllipticity).unwrap().passed);
        assert!(matches!(
            check_cauchy(&p, PropositionRealWaves),
            Err(CriteriaError::NotApplicable { .. })
        ));
    }

    #[test]
    fn implication_matrix_requires_trials() {
        assert_eq!(implication_matrix(0, 42, 1), Err(CriteriaError::NoTrials));
    }

    #[test]
    fn implication_scan_confirms_proven_implications() {
        let m = implication_matrix(100_000, 42, 4).unwrap();
        assert_eq!(m.count(PositiveDefiniteRelaxed, PropositionRealWaves), 0);
        assert_eq!(m.count(ReducedRealWaves, PropositionRealWaves), 0);
        assert_eq!(m.count(PropositionRealWaves, ReducedRealWaves), 0);
        assert_eq!(m.count(CosseratPositiveDefinite, CosseratRealWaves), 0);
        assert_eq!(m.count(CosseratRealWaves, MicropolarStrongEllipticity), 0);
        // Ellipticity is strictly weaker: the converse has counterexamples.
        assert!(m.count(MicropolarStrongEllipticity, CosseratRealWaves) > 0);
    }

    #[test]
    fn implication_scan_is_partition_invariant() {
        let a = implication_matrix(5_000, 7, 1).unwrap();
        let b = implication_matrix(5_000, 7, 4).unwrap();
        let c = implication_matrix(5_000, 7, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
