//! Plane fields of `SB_s f` and `A_t f`, and the Fourier endpoint.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{check_samples, rule_for, sb_kernel_apply_with, support_check, KernelOptions, DEFAULT_GH_ORDER};
use super::spectral::{build_basis_images_with, sb_spectral_apply};
use crate::contour::{contour_integral, EntireFunction, GaussianHint};
use crate::error::{Error, Result};
use crate::field::{Gauge, PlaneField};
use crate::geometry::gauge_prefactor;
use crate::grid::PlaneGrid;
use crate::hermite::analyze;
use crate::param::{Regime, TransformParameter};
use crate::quadrature::pairwise_sum;
use crate::signal::SampledSignal;

pub const DEFAULT_SPECTRAL_ORDER: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Method {
    /// Heat-kernel quadrature per point.
    #[default]
    Kernel,
    /// Hermite expansion with tabulated basis images.
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineOptions {
    pub gh_order: usize,
    /// Truncation order `N` of the spectral path.
    pub spectral_order: usize,
    /// Scale of the Hermite basis; `None` uses the transform's own `s`.
    pub basis_scale: Option<f64>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { gh_order: DEFAULT_GH_ORDER, spectral_order: DEFAULT_SPECTRAL_ORDER, basis_scale: None }
    }
}

impl EngineOptions {
    fn kernel(&self) -> KernelOptions {
        KernelOptions { gh_order: self.gh_order, ..KernelOptions::default() }
    }
}

fn z_points(s: f64, grid: &PlaneGrid) -> Vec<Complex64> {
    grid.points().into_iter().map(|(x, p)| Complex64::new(x, s * p)).collect()
}

fn sb_values(
    s: f64,
    signal: &SampledSignal,
    points: &[Complex64],
    offsets: Option<&[f64]>,
    method: Method,
    opts: &EngineOptions,
) -> Result<Vec<Complex64>> {
    match method {
        Method::Kernel => sb_kernel_apply_with(s, signal, points, offsets, opts.kernel()),
        Method::Spectral => {
            let b = opts.basis_scale.unwrap_or(s);
            let coeffs = analyze(signal, b, opts.spectral_order)?;
            let cache = build_basis_images_with(s, b, opts.spectral_order, points, offsets, opts.kernel())?;
            sb_spectral_apply(s, &coeffs, &cache)
        }
    }
}

/// `SB_s f` on a grid, in the holomorphic gauge.
pub fn sb_apply(
    s: f64,
    signal: &SampledSignal,
    grid: &PlaneGrid,
    method: Method,
    opts: &EngineOptions,
) -> Result<PlaneField> {
    let param = TransformParameter::from_s(s)?;
    if param.interior().is_none() {
        return Err(Error::Parameter(format!("SB_s needs 0 < s < ∞, got {s}")));
    }
    let values = sb_values(s, signal, &z_points(s, grid), None, method, opts)?;
    PlaneField::new(*grid, values, Gauge::Holomorphic { s }, param)
}

/// `A_t f` on a grid, in the weighted gauge, with default options.
pub fn hfrft_apply(
    param: &TransformParameter,
    signal: &SampledSignal,
    grid: &PlaneGrid,
    method: Method,
) -> Result<PlaneField> {
    hfrft_apply_with(param, signal, grid, method, &EngineOptions::default())
}

/// `A_t f = (1+s²)^{1/4} e^{−sp²/2} SB_s f` for `0 < t < π/2`. At `t = 0` the
/// signal is replicated along `p`; at `t = π/2` this is [`endpoint_apply`].
pub fn hfrft_apply_with(
    param: &TransformParameter,
    signal: &SampledSignal,
    grid: &PlaneGrid,
    method: Method,
    opts: &EngineOptions,
) -> Result<PlaneField> {
    match param.regime() {
        Regime::Identity => {
            let values = grid.points().into_iter().map(|(x, _)| signal.value(x)).collect();
            PlaneField::new(*grid, values, Gauge::Weighted { t: 0.0 }, *param)
        }
        Regime::Fourier => endpoint_apply_with(signal, grid, opts),
        Regime::Holomorphic => {
            let (t, s) = param.interior().expect("holomorphic regime");
            let offsets: Vec<f64> = grid.points().iter().map(|&(_, p)| -0.5 * s * p * p).collect();
            let pre = gauge_prefactor(s);
            let values = sb_values(s, signal, &z_points(s, grid), Some(&offsets), method, opts)?
                .into_iter()
                .map(|v| v * pre)
                .collect();
            PlaneField::new(*grid, values, Gauge::Weighted { t }, *param)
        }
    }
}

/// `(ℱf)(p) = (2π)^{−1/2} ∫ e^{ipx} f(x) dx` at each `p`.
pub fn fourier_transform(signal: &SampledSignal, ps: &[f64], opts: &EngineOptions) -> Result<Vec<Complex64>> {
    let c = (2.0 * PI).powf(-0.5);
    if let Some(samples) = signal.samples() {
        check_samples(samples)?;
        let pmax = ps.iter().fold(0.0f64, |m, p| m.max(p.abs()));
        let h = samples.grid().spacing();
        if pmax > 0.0 && h > PI / (2.0 * pmax) {
            return Err(Error::Resolution {
                spacing: h,
                limit: PI / (2.0 * pmax),
                reason: format!("fewer than 4 samples per period of e^{{ipx}} at |p| = {pmax}"),
            });
        }
        let xs = samples.grid().nodes();
        let w = samples.grid().trapezoid_weights();
        return Ok(ps
            .par_iter()
            .map(|&p| {
                let terms: Vec<Complex64> = xs
                    .iter()
                    .zip(&w)
                    .zip(samples.values())
                    .map(|((&x, &wx), &f)| Complex64::new(0.0, p * x).exp() * f * wx)
                    .collect();
                pairwise_sum(&terms) * c
            })
            .collect());
    }
    let terms = signal.entire_terms();
    let degree = terms.iter().filter_map(|(_, t)| t.degree()).max();
    let rule = rule_for(opts.gh_order, degree)?;
    ps.par_iter()
        .map(|&p| {
            let mut parts = Vec::with_capacity(terms.len());
            for (w, term) in &terms {
                let hint = GaussianHint::new(0.0, Complex64::new(0.0, p)).combine(&term.hint());
                let v = contour_integral(&rule, hint, |x| (Complex64::i() * p * x).exp() * term.eval(x))?;
                support_check(&v, term.degree().is_some(), &rule)?;
                parts.push(w * v.value);
            }
            Ok(pairwise_sum(&parts) * c)
        })
        .collect()
}

/// `(A_{π/2} f)(x, p) = e^{−ipx} (ℱf)(p)`.
pub fn endpoint_apply(signal: &SampledSignal, grid: &PlaneGrid) -> Result<PlaneField> {
    endpoint_apply_with(signal, grid, &EngineOptions::default())
}

pub fn endpoint_apply_with(signal: &SampledSignal, grid: &PlaneGrid, opts: &EngineOptions) -> Result<PlaneField> {
    let ps = grid.p.nodes();
    let ft = fourier_transform(signal, &ps, opts)?;
    let np = ps.len();
    let values = grid
        .points()
        .into_iter()
        .enumerate()
        .map(|(k, (x, p))| Complex64::new(0.0, -p * x).exp() * ft[k % np])
        .collect();
    let param = TransformParameter::fourier();
    PlaneField::new(*grid, values, Gauge::Weighted { t: param.t() }, param)
}
