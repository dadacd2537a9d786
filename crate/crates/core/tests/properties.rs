use std::f64::consts::FRAC_PI_2;

use holofrft_core::closedform::{coherent_state, hfrft_coherent, sb_coherent};
use holofrft_core::engine::{
    hfrft_apply_with, inner_l2, norm_l2, sb_inverse_fn, sb_kernel_apply, EngineOptions, Method,
};
use holofrft_core::geometry::gauge_factor;
use holofrft_core::hermite::{analyze, synthesize};
use holofrft_core::{
    CoherentImageForm, CoherentLabel, HermiteCoefficients, LineGrid, LineSamples, PlaneGrid, SampledSignal,
    TransformParameter,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn label() -> impl Strategy<Value = CoherentLabel> {
    (-2.5f64..2.5, -2.5f64..2.5).prop_map(|(p, q)| CoherentLabel { p, q })
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)), len)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coherent_states_have_unit_norm(y in label()) {
        let n = norm_l2(&SampledSignal::coherent(y)).unwrap();
        prop_assert!((n - 1.0).abs() < 1e-10);
    }

    #[test]
    fn alpha_and_beta_forms_agree(t in 0.02f64..FRAC_PI_2 - 0.02, y in label(), x in -3.0f64..3.0, p in -3.0f64..3.0) {
        let param = TransformParameter::from_t(t).unwrap();
        let a = hfrft_coherent(&param, &y, CoherentImageForm::Alpha, x, p).unwrap();
        let b = hfrft_coherent(&param, &y, CoherentImageForm::Beta, x, p).unwrap();
        prop_assert!(rel(a, b) < 1e-11);
    }

    #[test]
    fn gauge_factor_links_the_pictures(s in 0.1f64..6.0, y in label(), x in -3.0f64..3.0, p in -3.0f64..3.0) {
        let param = TransformParameter::from_s(s).unwrap();
        let lhs = gauge_factor(&param, p).unwrap() * sb_coherent(s, &y, x, p).unwrap();
        let rhs = hfrft_coherent(&param, &y, CoherentImageForm::Beta, x, p).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-11);
    }

    #[test]
    fn kernel_matches_closed_form(s in 0.2f64..4.0, y in label(), x in -4.0f64..4.0, p in -4.0f64..4.0) {
        let v = sb_kernel_apply(s, &SampledSignal::coherent(y), &[Complex64::new(x, s * p)]).unwrap()[0];
        prop_assert!(rel(v, sb_coherent(s, &y, x, p).unwrap()) < 1e-9);
    }

    #[test]
    fn kernel_is_linear(s in 0.2f64..3.0, a in label(), b in label(), w in -2.0f64..2.0) {
        let pts = [Complex64::new(0.3, -0.4), Complex64::new(-1.0, 1.5)];
        let sum = SampledSignal::coherent_sum(vec![(Complex64::new(1.0, 0.0), a), (Complex64::new(0.0, w), b)]).unwrap();
        let lhs = sb_kernel_apply(s, &sum, &pts).unwrap();
        let fa = sb_kernel_apply(s, &SampledSignal::coherent(a), &pts).unwrap();
        let fb = sb_kernel_apply(s, &SampledSignal::coherent(b), &pts).unwrap();
        for k in 0..pts.len() {
            let rhs = fa[k] + Complex64::new(0.0, w) * fb[k];
            prop_assert!((lhs[k] - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn parseval_for_finite_sums(s in 0.2f64..3.0, c in coeffs(8)) {
        let h = HermiteCoefficients::new(s, c).unwrap();
        let energy = h.energy();
        let n = norm_l2(&SampledSignal::HermiteRep(h)).unwrap();
        prop_assert!((n - energy).abs() < 1e-10 * energy.max(1.0));
    }

    #[test]
    fn analysis_inverts_synthesis(s in 0.3f64..2.0, c in coeffs(5)) {
        let h = HermiteCoefficients::new(s, c).unwrap();
        let half = 16.0 * s.sqrt();
        let grid = LineGrid::new(-half, half, 1601).unwrap();
        let samples = LineSamples::new(grid, synthesize(&h, &grid.nodes())).unwrap();
        let back = analyze(&SampledSignal::Samples(samples), s, 4).unwrap();
        for (u, v) in back.coeffs().iter().zip(h.coeffs()) {
            prop_assert!((u - v).norm() < 1e-10);
        }
    }

    #[test]
    fn inversion_recovers_coherent_states(y in label(), x in -3.0f64..3.0) {
        let g = |x: f64, p: f64| sb_coherent(1.0, &y, x, p).unwrap();
        let inv = sb_inverse_fn(1.0, g, &[x], 14.0, 561).unwrap();
        prop_assert!((inv.values[0] - coherent_state(&y, x)).norm() < 1e-9);
    }

    #[test]
    fn inner_product_is_hermitian(a in label(), b in label()) {
        let (fa, fb) = (SampledSignal::coherent(a), SampledSignal::coherent(b));
        let opts = EngineOptions::default();
        let ab = inner_l2(&fa, &fb, &opts).unwrap();
        let ba = inner_l2(&fb, &fa, &opts).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
        prop_assert!(ab.norm() <= 1.0 + 1e-12);
    }
}

#[test]
fn transforms_are_deterministic() {
    let param = TransformParameter::from_t(0.6).unwrap();
    let grid = PlaneGrid::square(5.0, 41).unwrap();
    let f = SampledSignal::coherent_sum(vec![
        (Complex64::new(1.0, 0.0), CoherentLabel::new(0.4, -1.0).unwrap()),
        (Complex64::new(0.2, -0.7), CoherentLabel::new(-1.1, 0.3).unwrap()),
    ])
    .unwrap();
    for method in [Method::Kernel, Method::Spectral] {
        let a = hfrft_apply_with(&param, &f, &grid, method, &EngineOptions::default()).unwrap();
        let b = hfrft_apply_with(&param, &f, &grid, method, &EngineOptions::default()).unwrap();
        assert!(a
            .values()
            .iter()
            .zip(b.values())
            .all(|(u, v)| u.re.to_bits() == v.re.to_bits() && u.im.to_bits() == v.im.to_bits()));
    }
}

#[test]
fn sampled_and_closed_form_signals_transform_alike() {
    let y = CoherentLabel::new(0.5, -0.5).unwrap();
    let grid = LineGrid::new(-12.0, 12.0, 961).unwrap();
    let samples = SampledSignal::Samples(LineSamples::from_fn(grid, |x| coherent_state(&y, x)));
    let pts: Vec<Complex64> =
        [(0.0, 0.0), (1.0, 2.0), (-2.0, -1.5)].iter().map(|&(x, p)| Complex64::new(x, p)).collect();
    let a = sb_kernel_apply(1.0, &samples, &pts).unwrap();
    let b = sb_kernel_apply(1.0, &SampledSignal::coherent(y), &pts).unwrap();
    for (u, v) in a.iter().zip(&b) {
        assert!(rel(*u, *v) < 1e-9, "{u} vs {v}");
    }
}
