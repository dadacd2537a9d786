//! Exact images of Gaussian coherent states. These are the analytic oracles
//! the numerical engine is checked against.
//!
//! Exponents are assembled in complex arithmetic and exponentiated once.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CoherentLabel;
use crate::param::TransformParameter;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which closed form of the coherent-state image to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoherentImageForm {
    /// `α_t e^{−iP_t(w−Q_t)} e^{−cot(π/4+t)(w−Q_t)²/2} e^{−tan t·w²/2} F_t` with
    /// `P_t = cos t·P + i sin t·Q`. Manifestly `F_t × (w_t-holomorphic)`.
    Alpha,
    /// The same expression with `P_t` swapped for `sin t·Q + i cos t·P`. It
    /// agrees with the other forms only when `Y = 0`; kept for auditing.
    AlphaSwapped,
    /// `β_t e^{−iP(x−Q)} e^{−[sin t(p−P)² + cos t(x−Q)² + 2i sin t(x−Q)(p−P)]/(2√2 sin(π/4+t))}`.
    /// Authoritative.
    Beta,
}

/// `ψ_Y(x) = π^{−1/2} exp(−iP(x−Q) − (x−Q)²/2)`.
pub fn coherent_state(label: &CoherentLabel, x: f64) -> Complex64 {
    coherent_state_at(label, Complex64::new(x, 0.0))
}

/// Analytic continuation of [`coherent_state`] to complex `x`.
pub fn coherent_state_at(label: &CoherentLabel, x: Complex64) -> Complex64 {
    let d = x - label.q;
    let e = -I * label.p * d - 0.5 * d * d;
    e.exp() / PI.sqrt()
}

/// `cot(π/4 + t)` written as `(1 − tan t)/(1 + tan t)`.
fn cot_quarter_plus(t: f64) -> f64 {
    let s = t.tan();
    (1.0 - s) / (1.0 + s)
}

/// `(√2 π sin(π/4 + t))^{−1/2}`.
fn beta_prefactor(t: f64) -> f64 {
    (SQRT_2 * PI * (FRAC_PI_4 + t).sin()).powf(-0.5)
}

/// Image of `ψ_Y` under the holomorphic fractional Fourier transform at an
/// interior parameter.
pub fn hfrft_coherent(
    param: &TransformParameter,
    label: &CoherentLabel,
    form: CoherentImageForm,
    x: f64,
    p: f64,
) -> Result<Complex64> {
    let (t, s) = param.interior().ok_or(Error::Endpoint)?;
    let (big_p, big_q) = (label.p, label.q);
    Ok(match form {
        CoherentImageForm::Beta => {
            let (dx, dp) = (x - big_q, p - big_p);
            let denom = 2.0 * SQRT_2 * (FRAC_PI_4 + t).sin();
            let quad = Complex64::new(t.sin() * dp * dp + t.cos() * dx * dx, 2.0 * t.sin() * dx * dp);
            let e = -I * big_p * dx - quad / denom;
            beta_prefactor(t) * e.exp()
        }
        CoherentImageForm::Alpha | CoherentImageForm::AlphaSwapped => {
            let w = Complex64::new(t.cos() * x, t.sin() * p);
            let qt = label.rotated_position(t);
            let d = w - qt;
            let linear = match form {
                CoherentImageForm::Alpha => -I * label.rotated_momentum(t) * d,
                _ => -I * label.swapped_rotated_momentum(t) * d,
            };
            let log_alpha = Complex64::new(
                (2.0 * t).sin() / 4.0 * (big_p * big_p + big_q * big_q),
                t.sin().powi(2) * big_p * big_q,
            );
            let e = log_alpha + linear - 0.5 * cot_quarter_plus(t) * d * d - 0.5 * s * w * w - 0.5 * s * p * p;
            beta_prefactor(t) * e.exp()
        }
    })
}

/// The `t = π/2` image: `π^{−1/2} e^{−iP(x−Q)} e^{−i(x−Q)(p−P)} e^{−(p−P)²/2}`.
pub fn hfrft_endpoint_coherent(label: &CoherentLabel, x: f64, p: f64) -> Complex64 {
    let (dx, dp) = (x - label.q, p - label.p);
    let e = Complex64::new(-0.5 * dp * dp, -label.p * dx - dx * dp);
    e.exp() / PI.sqrt()
}

/// `SB_s ψ_Y` evaluated at `z_s = x + i s p`.
pub fn sb_coherent(s: f64, label: &CoherentLabel, x: f64, p: f64) -> Result<Complex64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Parameter(format!("heat time s = {s} must be positive")));
    }
    let (dx, dp) = (x - label.q, p - label.p);
    let k = s / (1.0 + s);
    let e =
        Complex64::new(0.5 * s * p * p - 0.5 * k * dp * dp - 0.5 * dx * dx / (1.0 + s), -label.p * dx - k * dx * dp);
    Ok(e.exp() / (PI * (1.0 + s)).sqrt())
}

/// `⟨ψ_{Y1}, ψ_{Y2}⟩` under `⟨f, g⟩ = √π ∫ f̄ g dx`:
/// `exp(−ΔQ²/4 − ΔP²/4 + iΔP·(Q1+Q2)/2 + i(P2 Q2 − P1 Q1))` with `Δ = Y1 − Y2`.
pub fn coherent_overlap(a: &CoherentLabel, b: &CoherentLabel) -> Complex64 {
    let dq = a.q - b.q;
    let dp = a.p - b.p;
    let mid = 0.5 * (a.q + b.q);
    Complex64::new(-0.25 * (dq * dq + dp * dp), dp * mid + b.p * b.q - a.p * a.q).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::gauge_factor;
    use crate::quadrature::{gauss_hermite, integrate_1d_unweighted};
    use rand::{Rng, SeedableRng};
    use std::f64::consts::FRAC_PI_2;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn label(p: f64, q: f64) -> CoherentLabel {
        CoherentLabel::new(p, q).unwrap()
    }

    #[test]
    fn coherent_state_peaks() {
        let y0 = CoherentLabel::origin();
        assert!((coherent_state(&y0, 0.0).re - 0.5641895835477563).abs() < 1e-15);
        let y = label(0.0, 2.5);
        assert!((coherent_state(&y, 2.5) - Complex64::new(PI.powf(-0.5), 0.0)).norm() < 1e-15);
        let y = label(3.0, -1.0);
        for x in [-4.0, -1.0, 0.0, 2.0] {
            assert!(coherent_state(&y, x).norm() <= PI.powf(-0.5) + 1e-16);
        }
    }

    #[test]
    fn coherent_normalisation_by_quadrature() {
        let r = gauss_hermite(64, 1.0).unwrap();
        let y = label(1.3, -0.4);
        let v = integrate_1d_unweighted(&r, |x| {
            let f = coherent_state(&y, x + y.q);
            Complex64::new(PI.sqrt() * f.norm_sqr(), 0.0)
        })
        .unwrap();
        assert!((v.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quarter_turn_values() {
        let param = TransformParameter::from_t(FRAC_PI_4).unwrap();
        let y0 = CoherentLabel::origin();
        let v = hfrft_coherent(&param, &y0, CoherentImageForm::Beta, 0.0, 0.0).unwrap();
        assert_eq!(v.im, 0.0);
        assert!((v.re - (SQRT_2 * PI).powf(-0.5)).abs() < 1e-15);
        let (x, p) = (0.7, -1.1);
        let v = hfrft_coherent(&param, &y0, CoherentImageForm::Beta, x, p).unwrap();
        let e = Complex64::new(-(p * p + x * x) / 4.0, -2.0 * x * p / 4.0);
        assert!(rel(v, (SQRT_2 * PI).powf(-0.5) * e.exp()) < 1e-14);
    }

    #[test]
    fn endpoint_values() {
        let y0 = CoherentLabel::origin();
        for x in [-3.0, 0.0, 1.5] {
            let v = hfrft_endpoint_coherent(&y0, x, 0.0);
            assert!((v - Complex64::new(PI.powf(-0.5), 0.0)).norm() < 1e-15);
        }
        let (x, p) = (1.2, 0.8);
        let expected = Complex64::new(-p * p / 2.0, -x * p).exp() / PI.sqrt();
        assert!(rel(hfrft_endpoint_coherent(&y0, x, p), expected) < 1e-15);
        let y = label(0.5, 2.0);
        let m = hfrft_endpoint_coherent(&y, -3.0, 1.0).norm();
        assert!((hfrft_endpoint_coherent(&y, 4.0, 1.0).norm() - m).abs() < 1e-15);
    }

    #[test]
    fn endpoint_is_the_limit() {
        let y = label(0.4, -0.3);
        let mut prev = f64::INFINITY;
        for k in 2..=5 {
            let param = TransformParameter::from_t(FRAC_PI_2 - 10f64.powi(-k)).unwrap();
            let err = [(0.5, 0.2), (-1.0, 1.0), (2.0, -0.5)]
                .iter()
                .map(|&(x, p)| {
                    let a = hfrft_coherent(&param, &y, CoherentImageForm::Beta, x, p).unwrap();
                    (a - hfrft_endpoint_coherent(&y, x, p)).norm()
                })
                .fold(0.0, f64::max);
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn sb_values() {
        let v = sb_coherent(1.0, &CoherentLabel::origin(), 0.0, 0.0).unwrap();
        assert!((v.re - (2.0 * PI).powf(-0.5)).abs() < 1e-15);
        assert!(sb_coherent(0.0, &CoherentLabel::origin(), 0.0, 0.0).is_err());
        let y0 = CoherentLabel::origin();
        for x in [-1.0, 0.0, 0.5, 2.0] {
            let s = 1e-6;
            let err = (sb_coherent(s, &y0, x, 0.0).unwrap() - coherent_state(&y0, x)).norm();
            assert!(err < 10.0 * s);
        }
    }

    #[test]
    fn alpha_and_beta_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let t = rng.gen_range(0.01..(FRAC_PI_2 - 0.01));
            let param = TransformParameter::from_t(t).unwrap();
            let y = label(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let (x, p) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let a = hfrft_coherent(&param, &y, CoherentImageForm::Alpha, x, p).unwrap();
            let b = hfrft_coherent(&param, &y, CoherentImageForm::Beta, x, p).unwrap();
            assert!(rel(a, b) < 1e-11, "t={t} y={y:?} x={x} p={p}");
        }
    }

    #[test]
    fn swapped_alpha_only_matches_at_origin_label() {
        let param = TransformParameter::from_t(0.7).unwrap();
        let y0 = CoherentLabel::origin();
        let a = hfrft_coherent(&param, &y0, CoherentImageForm::AlphaSwapped, 0.3, -0.8).unwrap();
        let b = hfrft_coherent(&param, &y0, CoherentImageForm::Beta, 0.3, -0.8).unwrap();
        assert!(rel(a, b) < 1e-13);
        let y = label(0.8, -0.5);
        let a = hfrft_coherent(&param, &y, CoherentImageForm::AlphaSwapped, 1.0, 1.0).unwrap();
        let b = hfrft_coherent(&param, &y, CoherentImageForm::Beta, 1.0, 1.0).unwrap();
        assert!(rel(a, b) > 0.1);
    }

    #[test]
    fn gauge_links_sb_and_hfrft() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for s in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let param = TransformParameter::from_s(s).unwrap();
            for _ in 0..100 {
                let y = label(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let (x, p) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
                let lhs = gauge_factor(&param, p).unwrap() * sb_coherent(s, &y, x, p).unwrap();
                let rhs = hfrft_coherent(&param, &y, CoherentImageForm::Beta, x, p).unwrap();
                assert!(rel(lhs, rhs) < 1e-11);
            }
        }
    }

    #[test]
    fn overlap_closed_form() {
        let y = label(0.3, 1.7);
        assert!((coherent_overlap(&y, &y) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(coherent_overlap(&CoherentLabel::origin(), &label(0.0, 60.0)).norm() < 1e-300);
        let r = gauss_hermite(96, 1.0).unwrap();
        let pairs = [
            (CoherentLabel::origin(), label(1.5, 0.0)),
            (label(0.4, -1.0), label(-0.7, 0.6)),
            (label(2.0, 1.0), label(1.0, 2.5)),
        ];
        for (a, b) in pairs {
            let q = integrate_1d_unweighted(&r, |x| PI.sqrt() * coherent_state(&a, x).conj() * coherent_state(&b, x))
                .unwrap();
            assert!((q - coherent_overlap(&a, &b)).norm() < 1e-12, "{a:?} {b:?}");
        }
        let o = coherent_overlap(&CoherentLabel::origin(), &label(1.5, 0.0));
        assert!((o.norm() - (-1.5f64 * 1.5 / 4.0).exp()).abs() < 1e-15);
    }
}
