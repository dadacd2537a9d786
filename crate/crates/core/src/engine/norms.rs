//! Norms and inner products on the signal side (`√π ∫ f̄ g dx`) and on the
//! plane (`H_t` with `dμ_t`, `H̃_s` with `√s e^{−sp²} dx dp`), and the
//! unitarity report built from them.
//!
//! Functions named `norm_*` return squared norms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernel::{check_samples, rule_for, support_check};
use super::transform::{hfrft_apply_with, sb_apply, EngineOptions, Method};
use crate::contour::{contour_integral, EntireFunction};
use crate::error::{Error, Result};
use crate::field::{Gauge, PlaneField};
use crate::geometry::measure_density;
use crate::grid::PlaneGrid;
use crate::hermite::SUPPORT_TAIL;
use crate::param::TransformParameter;
use crate::quadrature::{pairwise_sum, pairwise_sum_real};
use crate::signal::SampledSignal;

/// `⟨f, g⟩ = √π ∫ f̄ g dx`.
pub fn inner_l2(f: &SampledSignal, g: &SampledSignal, opts: &EngineOptions) -> Result<Complex64> {
    let grid = match (f.samples(), g.samples()) {
        (Some(a), Some(b)) if a.grid() != b.grid() => {
            return Err(Error::Grid("sampled signals on different grids".into()))
        }
        (Some(a), _) => Some(*a.grid()),
        (_, Some(b)) => Some(*b.grid()),
        _ => None,
    };
    if let Some(grid) = grid {
        for s in [f, g].iter().filter_map(|s| s.samples()) {
            check_samples(s)?;
        }
        let w = grid.trapezoid_weights();
        let terms: Vec<Complex64> =
            grid.nodes().iter().zip(&w).map(|(&x, &wx)| f.value(x).conj() * g.value(x) * wx).collect();
        return Ok(PI.sqrt() * pairwise_sum(&terms));
    }

    let (fs, gs) = (f.entire_terms(), g.entire_terms());
    let mut parts = Vec::with_capacity(fs.len() * gs.len());
    for (wf, tf) in &fs {
        for (wg, tg) in &gs {
            let degree = tf.degree().zip(tg.degree()).map(|(a, b)| a + b);
            let rule = rule_for(opts.gh_order, degree)?;
            let hint = tf.hint().conjugate().combine(&tg.hint());
            let v = contour_integral(&rule, hint, |x| tf.eval_conj(x) * tg.eval(x))?;
            support_check(&v, degree.is_some(), &rule)?;
            parts.push(wf.conj() * wg * v.value);
        }
    }
    Ok(PI.sqrt() * pairwise_sum(&parts))
}

/// `‖f‖² = √π ∫ |f|² dx`.
pub fn norm_l2(f: &SampledSignal) -> Result<f64> {
    Ok(inner_l2(f, f, &EngineOptions::default())?.re)
}

fn plane_weights(grid: &PlaneGrid) -> (Vec<f64>, Vec<f64>) {
    (grid.x.trapezoid_weights(), grid.p.trapezoid_weights())
}

/// `Σ w_ij a_ij` over the grid in storage order, after checking that
/// `|a|` at the boundary is below the tail threshold relative to its peak.
fn plane_sum(grid: &PlaneGrid, integrand: &[Complex64]) -> Result<Complex64> {
    let mut peak: f64 = 0.0;
    let mut edge: f64 = 0.0;
    for (k, v) in integrand.iter().enumerate() {
        if !(v.re.is_finite() && v.im.is_finite()) {
            let (x, p) = grid.coords(k);
            return Err(Error::IntegrationDomain {
                node: if x.abs() >= p.abs() { x } else { p },
                value: v.to_string(),
            });
        }
        let m = v.norm();
        peak = peak.max(m);
        if grid.is_boundary(k) {
            edge = edge.max(m);
        }
    }
    if peak > 0.0 && edge / peak > SUPPORT_TAIL {
        return Err(Error::BoundaryTail { ratio: edge / peak });
    }
    let (wx, wp) = plane_weights(grid);
    let np = wp.len();
    let terms: Vec<Complex64> = integrand.iter().enumerate().map(|(k, v)| v * (wx[k / np] * wp[k % np])).collect();
    Ok(pairwise_sum(&terms))
}

fn same_layout(a: &PlaneField, b: &PlaneField) -> Result<()> {
    if a.grid() != b.grid() {
        return Err(Error::Grid("fields live on different grids".into()));
    }
    if a.gauge() != b.gauge() {
        return Err(Error::GaugeMismatch { expected: format!("{:?}", a.gauge()), found: format!("{:?}", b.gauge()) });
    }
    Ok(())
}

fn weighted_t(field: &PlaneField) -> Result<f64> {
    match field.gauge() {
        Gauge::Weighted { t } => measure_density(&field.parameter()).inspect(|_| {
            debug_assert_eq!(t, field.parameter().t());
        }),
        other => Err(Error::GaugeMismatch { expected: "weighted".into(), found: other.name().into() }),
    }
}

/// `⟨F, G⟩_{H_t} = ∫ F̄ G dμ_t`.
pub fn inner_ht(a: &PlaneField, b: &PlaneField) -> Result<Complex64> {
    same_layout(a, b)?;
    let density = weighted_t(a)?;
    let integrand: Vec<Complex64> = a.values().iter().zip(b.values()).map(|(u, v)| u.conj() * v).collect();
    Ok(plane_sum(a.grid(), &integrand)? * density)
}

/// `‖F‖²_{H_t} = ∫ |F|² dμ_t`.
pub fn norm_ht(field: &PlaneField) -> Result<f64> {
    Ok(inner_ht(field, field)?.re)
}

fn holomorphic_s(field: &PlaneField) -> Result<f64> {
    match field.gauge() {
        Gauge::Holomorphic { s } => Ok(s),
        other => Err(Error::GaugeMismatch { expected: "holomorphic".into(), found: other.name().into() }),
    }
}

/// `⟨f, g⟩_{H̃_s} = √s ∫ f̄ g e^{−sp²} dx dp`.
pub fn inner_hs(a: &PlaneField, b: &PlaneField) -> Result<Complex64> {
    same_layout(a, b)?;
    let s = holomorphic_s(a)?;
    // split e^{−sp²} between the factors so |f|² never has to be formed
    let integrand: Vec<Complex64> = a
        .iter()
        .zip(b.values())
        .map(|((_, p, u), v)| {
            let half = (-0.5 * s * p * p).exp();
            (u * half).conj() * (v * half)
        })
        .collect();
    Ok(plane_sum(a.grid(), &integrand)? * s.sqrt())
}

/// `‖f‖²_{H̃_s}`.
pub fn norm_hs(field: &PlaneField) -> Result<f64> {
    Ok(inner_hs(field, field)?.re)
}

/// Centre and variances of `|F|²` treated as a density on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondMoments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
}

impl SecondMoments {
    /// `σ_p² / σ_x²`.
    pub fn ratio(&self) -> f64 {
        self.var_p / self.var_x
    }
}

pub fn second_moments(field: &PlaneField) -> Result<SecondMoments> {
    let grid = field.grid();
    let density: Vec<Complex64> = field.values().iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
    plane_sum(grid, &density)?;
    let (wx, wp) = plane_weights(grid);
    let np = wp.len();
    let moment = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
        let terms: Vec<f64> = density
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let (x, p) = grid.coords(k);
                d.re * f(x, p) * wx[k / np] * wp[k % np]
            })
            .collect();
        pairwise_sum_real(&terms)
    };
    let mass = moment(&|_, _| 1.0);
    if mass == 0.0 {
        return Err(Error::Signal("second moments of a zero field".into()));
    }
    let mean_x = moment(&|x, _| x) / mass;
    let mean_p = moment(&|_, p| p) / mass;
    let var_x = moment(&|x, _| (x - mean_x).powi(2)) / mass;
    let var_p = moment(&|_, p| (p - mean_p).powi(2)) / mass;
    Ok(SecondMoments { mean_x, mean_p, var_x, var_p })
}

/// `max/min − 1`, zero for fewer than two values.
pub fn spread(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max / min - 1.0
}

/// Norm ratios of `A_t` and `SB_{tan t}` over a set of signals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitarityReport {
    pub t: f64,
    pub s: f64,
    /// `‖A_t f‖²_{H_t} / ‖f‖²`
    pub ht_ratios: Vec<f64>,
    /// `‖SB_s f‖²_{H̃_s} / ‖f‖²`
    pub hs_ratios: Vec<f64>,
    pub ht_spread: f64,
    pub hs_spread: f64,
    /// Mean of `ht_ratios`.
    pub kappa_sq: f64,
}

pub fn unitarity_report(
    param: &TransformParameter,
    signals: &[SampledSignal],
    grid: &PlaneGrid,
    opts: &EngineOptions,
) -> Result<UnitarityReport> {
    let (t, s) = param.interior().ok_or(Error::DegenerateMeasure { t: param.t() })?;
    if signals.is_empty() {
        return Err(Error::Signal("unitarity report needs at least one signal".into()));
    }
    let mut ht_ratios = Vec::with_capacity(signals.len());
    let mut hs_ratios = Vec::with_capacity(signals.len());
    for f in signals {
        let n = norm_l2(f)?;
        let a = hfrft_apply_with(param, f, grid, Method::Kernel, opts)?;
        ht_ratios.push(norm_ht(&a)? / n);
        let b = sb_apply(s, f, grid, Method::Kernel, opts)?;
        hs_ratios.push(norm_hs(&b)? / n);
    }
    let kappa_sq = ht_ratios.iter().sum::<f64>() / ht_ratios.len() as f64;
    Ok(UnitarityReport {
        t,
        s,
        ht_spread: spread(&ht_ratios),
        hs_spread: spread(&hs_ratios),
        ht_ratios,
        hs_ratios,
        kappa_sq,
    })
}

/// Reports at several `t` folded together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaritySummary {
    pub reports: Vec<UnitarityReport>,
    /// Spread of every `H_t` ratio across signals and `t`.
    pub ht_spread: f64,
    pub hs_spread: f64,
    pub kappa_sq: f64,
}

impl UnitaritySummary {
    pub fn new(reports: Vec<UnitarityReport>) -> Self {
        let ht: Vec<f64> = reports.iter().flat_map(|r| r.ht_ratios.iter().copied()).collect();
        let hs: Vec<f64> = reports.iter().flat_map(|r| r.hs_ratios.iter().copied()).collect();
        let kappa_sq = if ht.is_empty() { f64::NAN } else { ht.iter().sum::<f64>() / ht.len() as f64 };
        Self { ht_spread: spread(&ht), hs_spread: spread(&hs), kappa_sq, reports }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::coherent_overlap;
    use crate::geometry::CoherentLabel;
    use crate::grid::LineGrid;
    use crate::hermite::HermiteCoefficients;
    use crate::signal::LineSamples;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn signal_norms() {
        let y = CoherentLabel::new(2.0, -1.5).unwrap();
        assert!((norm_l2(&SampledSignal::coherent(y)).unwrap() - 1.0).abs() < 1e-12);
        for n in [0, 5, 20] {
            let h = SampledSignal::HermiteRep(HermiteCoefficients::unit(0.7, n, n).unwrap());
            assert!((norm_l2(&h).unwrap() - 1.0).abs() < 1e-10);
        }
        let zero = SampledSignal::HermiteRep(HermiteCoefficients::new(1.0, vec![c(0.0, 0.0); 3]).unwrap());
        assert_eq!(norm_l2(&zero).unwrap(), 0.0);
    }

    #[test]
    fn inner_product_of_coherent_states() {
        let a = CoherentLabel::new(0.5, 1.0).unwrap();
        let b = CoherentLabel::new(-1.0, 0.2).unwrap();
        let v = inner_l2(&SampledSignal::coherent(a), &SampledSignal::coherent(b), &EngineOptions::default()).unwrap();
        assert!((v - coherent_overlap(&a, &b)).norm() < 1e-13);
        let samples = SampledSignal::Samples(LineSamples::from_fn(LineGrid::new(-10.0, 10.0, 401).unwrap(), |x| {
            crate::closedform::coherent_state(&a, x)
        }));
        let w = inner_l2(&samples, &SampledSignal::coherent(b), &EngineOptions::default()).unwrap();
        assert!((w - coherent_overlap(&a, &b)).norm() < 1e-12);
    }

    #[test]
    fn plane_norms_of_the_ground_state() {
        let sig = SampledSignal::coherent(CoherentLabel::origin());
        let grid = PlaneGrid::default_verification();
        let opts = EngineOptions::default();
        let param = TransformParameter::from_t(FRAC_PI_4).unwrap();
        let a = hfrft_apply_with(&param, &sig, &grid, Method::Kernel, &opts).unwrap();
        assert!((norm_ht(&a).unwrap() - FRAC_1_SQRT_2).abs() < 1e-10);
        let b = sb_apply(1.0, &sig, &grid, Method::Kernel, &opts).unwrap();
        assert!((norm_hs(&b).unwrap() - 1.0).abs() < 1e-10);
        assert!(matches!(norm_hs(&a), Err(Error::GaugeMismatch { .. })));
        assert!(matches!(norm_ht(&b), Err(Error::GaugeMismatch { .. })));
    }

    #[test]
    fn truncated_fields_are_rejected() {
        let sig = SampledSignal::coherent(CoherentLabel::new(0.0, 3.0).unwrap());
        let grid = PlaneGrid::square(3.0, 31).unwrap();
        let b = sb_apply(1.0, &sig, &grid, Method::Kernel, &EngineOptions::default()).unwrap();
        assert!(matches!(norm_hs(&b), Err(Error::BoundaryTail { .. })));
    }

    #[test]
    fn report_on_a_single_signal_has_no_spread() {
        let sig = [SampledSignal::coherent(CoherentLabel::new(0.3, 0.4).unwrap())];
        let r = unitarity_report(
            &TransformParameter::from_t(0.6).unwrap(),
            &sig,
            &PlaneGrid::square(9.0, 145).unwrap(),
            &EngineOptions::default(),
        )
        .unwrap();
        assert_eq!(r.ht_spread, 0.0);
        assert!((r.kappa_sq - FRAC_1_SQRT_2).abs() < 1e-8);
        assert!((r.hs_ratios[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn endpoints_have_no_report() {
        let sig = [SampledSignal::coherent(CoherentLabel::origin())];
        let g = PlaneGrid::square(4.0, 9).unwrap();
        for p in [TransformParameter::identity(), TransformParameter::fourier()] {
            assert!(unitarity_report(&p, &sig, &g, &EngineOptions::default()).is_err());
        }
    }

    #[test]
    fn spreads() {
        assert_eq!(spread(&[]), 0.0);
        assert_eq!(spread(&[2.0]), 0.0);
        assert!((spread(&[1.0, 1.5, 1.2]) - 0.5).abs() < 1e-15);
    }
}
