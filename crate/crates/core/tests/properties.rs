//! Property-based invariants: homogenization bounds, round-trips, spectra
//! realness and the dual-route eigensolver agreement.

use mmwave_core::blocks::{self, BlockId};
use mmwave_core::criteria::{self, ConditionSetName};
use mmwave_core::dispersion;
use mmwave_core::eig::{self, sorted_distance};
use mmwave_core::mat::SmallMat;
use mmwave_core::params::{
    self, derive, invert_micro, KnownScale, MaterialParams, ModulusPair,
};
use mmwave_core::rng::SplitMix64;
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = MaterialParams> {
    (
        -2.0..4.0f64,
        -2.0..4.0f64,
        -2.0..4.0f64,
        -2.0..4.0f64,
        -2.0..4.0f64,
        0.05..2.0f64,
    )
        .prop_map(|(mu_e, lambda_e, mu_micro, lambda_micro, mu_c, l_c)| MaterialParams {
            mu_e,
            lambda_e,
            mu_micro,
            lambda_micro,
            mu_c,
            l_c,
            rho: 1.0,
            eta: 1.0,
        })
}

proptest! {
    /// Harmonic-mean bound: whenever the denominators are safely positive,
    /// the macroscopic moduli sit below both scales.
    #[test]
    fn harmonic_mean_bound(p in params_strategy()) {
        prop_assume!(p.mu_e + p.mu_micro > 1e-3);
        prop_assume!(p.kappa_e() + p.kappa_micro() > 1e-3);
        let mu_macro = p.mu_macro().unwrap();
        let kappa_macro = p.kappa_macro().unwrap();
        let tol = 1e-10 * (1.0 + mu_macro.abs().max(kappa_macro.abs()));
        prop_assert!(mu_macro <= p.mu_e.min(p.mu_micro) + tol);
        prop_assert!(kappa_macro <= p.kappa_e().min(p.kappa_micro()) + tol);
    }

    /// 2 mu_e + lambda_e = (4 mu_e + 3 kappa_e) / 3 holds for all inputs.
    #[test]
    fn lame_bulk_identity(mu in -10.0..10.0f64, lambda in -10.0..10.0f64) {
        let p = MaterialParams { mu_e: mu, lambda_e: lambda, ..MaterialParams::canonical_unit() };
        let lhs = 2.0 * p.mu_e + p.lambda_e;
        let rhs = (4.0 * p.mu_e + 3.0 * p.kappa_e()) / 3.0;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    /// invert_micro composed with derive is the identity on the recovered
    /// pair, away from zero denominators.
    #[test]
    fn homogenization_round_trip(p in params_strategy()) {
        prop_assume!((p.mu_e + p.mu_micro).abs() > 1e-3);
        prop_assume!((p.kappa_e() + p.kappa_micro()).abs() > 1e-3);
        let d = derive(&p).unwrap();
        prop_assume!((p.mu_micro - d.mu_macro).abs() > 1e-6);
        prop_assume!((p.kappa_micro() - d.kappa_macro).abs() > 1e-6);
        let macro_pair = ModulusPair { mu: d.mu_macro, kappa: d.kappa_macro };
        let micro_pair = ModulusPair { mu: p.mu_micro, kappa: p.kappa_micro() };
        let rec = invert_micro(macro_pair, KnownScale::Micro(micro_pair)).unwrap();
        prop_assert!((rec.mu - p.mu_e).abs() <= 1e-12 * p.mu_e.abs().max(1.0));
        prop_assert!((rec.kappa - p.kappa_e()).abs() <= 1e-12 * p.kappa_e().abs().max(1.0));
    }

    /// Assembled blocks are exactly symmetric and B2 = B3 entry-wise, so the
    /// Jacobi spectra are certified real by the residual bound.
    #[test]
    fn blocks_symmetric_and_spectra_certified(p in params_strategy(), k in 0.0..10.0f64) {
        let b2 = blocks::assemble_b(&p, BlockId::B2, k).unwrap();
        let b3 = blocks::assemble_b(&p, BlockId::B3, k).unwrap();
        prop_assert_eq!(&b2.mat, &b3.mat);
        for id in [BlockId::B1, BlockId::B2, BlockId::B4] {
            let b = blocks::assemble_b(&p, id, k).unwrap();
            prop_assert_eq!(b.mat.symmetry_defect(), 0.0);
            let s = b.spectrum().unwrap();
            prop_assert!(s.residual <= 1e-9 * b.mat.frobenius().max(1.0));
        }
    }

    /// Jacobi and the closed-form cubic agree on random symmetric matrices.
    #[test]
    fn jacobi_vs_cubic(entries in proptest::array::uniform6(-10.0..10.0f64)) {
        let [a, b, c, d, e, f] = entries;
        let m = SmallMat::from_rows(&[&[a, b, c], &[b, d, e], &[c, e, f]]);
        let jac = eig::jacobi_eigenvalues(&m).unwrap();
        let cub = eig::cubic_roots_symmetric(&m).unwrap();
        prop_assert!(sorted_distance(&jac, &cub) <= 1e-8);
    }

    /// The 12x12 spectrum is direction independent, and along e1 it factors
    /// into the union of the block spectra.
    #[test]
    fn acoustic12_isotropy_and_block_factorization(
        p in params_strategy(),
        raw_dir in proptest::array::uniform3(-1.0..1.0f64),
        k in 0.0..5.0f64,
    ) {
        let norm = raw_dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(norm > 0.1);
        let xi = [raw_dir[0] / norm, raw_dir[1] / norm, raw_dir[2] / norm];
        let along_e1 = mmwave_core::acoustic12::assemble_12(&p, [1.0, 0.0, 0.0], k)
            .unwrap()
            .omega_squared()
            .unwrap();
        let oblique = mmwave_core::acoustic12::assemble_12(&p, xi, k)
            .unwrap()
            .omega_squared()
            .unwrap();
        prop_assert!(sorted_distance(&along_e1, &oblique) <= 1e-8);
        let union = mmwave_core::acoustic12::block_union_spectrum(&p, k).unwrap();
        prop_assert!(sorted_distance(&along_e1, &union) <= 1e-8);
    }

    /// The reduced five-inequality set is equivalent to the full real-wave set.
    #[test]
    fn reduced_set_equivalent_to_proposition(p in params_strategy()) {
        prop_assume!((p.mu_e + p.mu_micro).abs() > 1e-6);
        prop_assume!((p.kappa_e() + p.kappa_micro()).abs() > 1e-6);
        let reduced = criteria::check_relaxed(&p, ConditionSetName::ReducedRealWaves).unwrap();
        let full = criteria::check_relaxed(&p, ConditionSetName::PropositionRealWaves).unwrap();
        prop_assert_eq!(reduced.passed, full.passed);
    }
}

/// The harmonic-mean bound at the oracle sample count (10^4 seeded draws),
/// with the appendix chain checked alongside.
#[test]
fn harmonic_mean_bound_bulk_scan() {
    let mut rng = SplitMix64::new(20_260_101);
    let mut checked = 0u32;
    while checked < 10_000 {
        let p = criteria::sample_relaxed(&mut rng);
        if p.mu_e + p.mu_micro <= 1e-3 || p.kappa_e() + p.kappa_micro() <= 1e-3 {
            continue;
        }
        checked += 1;
        let slacks = params::appendix_inequalities(&p).unwrap();
        for s in &slacks {
            assert!(
                s.slack >= -1e-10 * (1.0 + s.slack.abs()),
                "{} violated with slack {} for {:?}",
                s.label,
                s.slack,
                p
            );
        }
    }
}

/// Proposition verdict vs brute-force spectra on the default grid; the
/// full-scale scan runs in the acceptance suite, this pins the bridge.
#[test]
fn criteria_spectra_equivalence_spot_check() {
    let scan = dispersion::proposition_spectra_agreement(600, 42, 2).unwrap();
    assert_eq!(scan.agreeing, scan.trials);
}
