use approx::assert_abs_diff_eq;
use discorr_core::analysis::{
    hermitian_eigenvalues, joint_distribution, logarithmic_negativity, partial_transpose, uncorrelated_reference,
    discorrelation_metric,
};
use discorr_core::fock::{partial_trace, to_density};
use discorr_core::optics::{beam_splitter, herald_single_photon, loss_channel, phase_shift, project_occupation};
use discorr_core::states::{coherent, CoherentAmplitude};
use discorr_core::{BeamSplitterParams, MultiModeState, Normalize, SingleModeState, TwoModeState, C64};
use ndarray::{Array1, Array2, ArrayD, IxDyn};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn single_mode(max_dim: usize) -> impl Strategy<Value = SingleModeState> {
    (2..=max_dim)
        .prop_flat_map(|d| prop::collection::vec(complex(), d))
        .prop_filter_map("zero vector", |v| SingleModeState::from_amplitudes(Array1::from(v)).ok())
}

/// Two-mode state on a `d x d` grid with total photon number below `d`, so a
/// beam splitter never leaves the truncation.
fn two_mode(max_dim: usize) -> impl Strategy<Value = TwoModeState> {
    (3..=max_dim)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(complex(), d * d)))
        .prop_filter_map("zero vector", |(d, v)| {
            let c = Array2::from_shape_fn((d, d), |(n, m)| if n + m < d { v[n * d + m] } else { C64::new(0.0, 0.0) });
            TwoModeState::from_coeffs(c).ok()
        })
}

fn transmissivity() -> impl Strategy<Value = BeamSplitterParams> {
    (0.0..=1.0f64).prop_map(|t| BeamSplitterParams::new(t).unwrap())
}

fn max_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(s in single_mode(12)) {
        let (again, discarded) = s.clone().normalize().unwrap();
        prop_assert_eq!(again.amps(), s.amps());
        prop_assert!(discarded.abs() < 1e-14);
    }

    #[test]
    fn beam_splitter_preserves_norm_and_overlaps(a in two_mode(7), b in two_mode(7), bs in transmissivity()) {
        prop_assume!(a.dims() == b.dims());
        let (ma, mb) = (a.to_multimode(), b.to_multimode());
        let (ua, ub) = (beam_splitter(&ma, (0, 1), bs).unwrap(), beam_splitter(&mb, (0, 1), bs).unwrap());
        prop_assert!((ua.norm_sqr() - 1.0).abs() < 1e-12);
        let before = ma.inner(&mb).unwrap();
        let after = ua.inner(&ub).unwrap();
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn beam_splitter_conserves_photon_number(s in two_mode(8), bs in transmissivity()) {
        let m = s.to_multimode();
        let out = beam_splitter(&m, (0, 1), bs).unwrap();
        for (x, y) in m.total_photon_distribution().iter().zip(out.total_photon_distribution()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn beam_splitter_inverse_round_trips(s in two_mode(8), bs in transmissivity()) {
        let m = s.to_multimode();
        let back = beam_splitter(&beam_splitter(&m, (0, 1), bs).unwrap(), (0, 1), bs.inverse()).unwrap();
        let overlap = m.inner(&back).unwrap();
        prop_assert!((overlap - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor(a in single_mode(6), b in single_mode(6)) {
        let psi = MultiModeState::from(a.clone()).tensor(&b.into()).unwrap();
        let reduced = partial_trace(&to_density(&psi), &[0]).unwrap();
        let expected = to_density(&a.into());
        prop_assert!(max_diff(&reduced.matrix(), &expected.matrix()) < 1e-13);
    }

    #[test]
    fn pure_density_has_single_unit_eigenvalue(s in two_mode(5)) {
        let rho = to_density(&s.to_multimode());
        let mut eig = hermitian_eigenvalues(&rho.matrix());
        eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
        prop_assert!((eig[0] - 1.0).abs() < 1e-12);
        prop_assert!(eig[1..].iter().all(|e| e.abs() < 1e-12));
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loss_composes_multiplicatively(s in single_mode(8), e1 in 0.0..=1.0f64, e2 in 0.0..=1.0f64) {
        let rho = to_density(&s.into());
        let twice = loss_channel(&loss_channel(&rho, 0, e1).unwrap(), 0, e2).unwrap();
        let once = loss_channel(&rho, 0, e1 * e2).unwrap();
        prop_assert!(max_diff(&twice.matrix(), &once.matrix()) < 1e-12);
        prop_assert!((once.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loss_keeps_states_positive(s in two_mode(5), eta in 0.0..=1.0f64) {
        let rho = loss_channel(&to_density(&s.to_multimode()), 1, eta).unwrap();
        prop_assert!(rho.hermiticity_error() < 1e-13);
        prop_assert!(hermitian_eigenvalues(&rho.matrix()).iter().all(|&e| e > -1e-12));
    }

    #[test]
    fn occupation_projections_sum_to_one(s in two_mode(7)) {
        let m = s.to_multimode();
        let total: f64 = (0..m.dims()[1]).map(|n| project_occupation(&m, 1, n).unwrap().norm_sqr()).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        if let Ok((_, p)) = herald_single_photon(&m, 1) {
            prop_assert!((p - project_occupation(&m, 1, 1).unwrap().norm_sqr()).abs() < 1e-14);
        }
    }

    #[test]
    fn negativity_ignores_local_phases(s in two_mode(6), phi in -3.0..3.0f64) {
        let m = s.to_multimode();
        let rotated = phase_shift(&m, 0, phi).unwrap();
        let a = logarithmic_negativity(&to_density(&m)).unwrap();
        let b = logarithmic_negativity(&to_density(&rotated)).unwrap();
        prop_assert!(a >= 0.0);
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn partial_transpose_keeps_trace_and_hermiticity(s in two_mode(5)) {
        let rho = to_density(&s.to_multimode());
        let pt = partial_transpose(&rho).unwrap();
        let trace: C64 = pt.diag().sum();
        prop_assert!((trace - C64::new(1.0, 0.0)).norm() < 1e-12);
        let herm = pt.iter().zip(pt.t().iter()).map(|(x, y)| (x - y.conj()).norm()).fold(0.0, f64::max);
        prop_assert!(herm < 1e-13);
    }

    #[test]
    fn coherent_products_score_zero(a in 0.0..2.0f64, b in 0.0..2.0f64, pa in -3.0..3.0f64, pb in -3.0..3.0f64) {
        let ca = coherent(CoherentAmplitude::new(a, pa).unwrap(), 40).unwrap();
        let cb = coherent(CoherentAmplitude::new(b, pb).unwrap(), 40).unwrap();
        let jd = joint_distribution(&TwoModeState::product(&ca, &cb)).unwrap();
        let reference = uncorrelated_reference(jd.mean_a(), jd.mean_b()).unwrap();
        let score = discorrelation_metric(&jd, &reference).unwrap();
        prop_assert!(score.value.abs() < 1e-9, "{}", score.value);
    }
}

#[test]
fn partial_trace_keeps_middle_mode_populations() {
    let t = ArrayD::from_shape_fn(IxDyn(&[2, 3, 2]), |i| C64::new((i[0] * 6 + i[1] * 2 + i[2]) as f64, 0.0));
    let m = MultiModeState::from_tensor(t.clone()).unwrap();
    let rho = partial_trace(&to_density(&m), &[1]).unwrap();
    let total: f64 = t.iter().map(|c| c.norm_sqr()).sum();
    for k in 0..3 {
        let mut expected = 0.0;
        for a in 0..2 {
            for c in 0..2 {
                expected += t[[a, k, c]].norm_sqr();
            }
        }
        assert_abs_diff_eq!(rho.populations()[[k]], expected / total, epsilon = 1e-14);
    }
}
