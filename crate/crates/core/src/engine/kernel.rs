//! `SB_s` by direct quadrature of the heat kernel,
//! `(SB_s f)(z) = c_s ∫ e^{−(z−x)²/2s} f(x) dx`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contour::{contour_integral, ContourValue, EntireFunction, GaussianHint};
use crate::error::{Error, Result};
use crate::hermite::SUPPORT_TAIL;
use crate::quadrature::{gauss_hermite, pairwise_sum, QuadratureRule1D, MAX_GAUSS_HERMITE_ORDER};
use crate::signal::{EntireTerm, LineSamples, SampledSignal};

pub const DEFAULT_GH_ORDER: usize = 64;

/// Constant in front of the heat-kernel integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SbNormalization {
    /// `(2πs)^{−1/2}`: the heat semigroup. Maps `H_n^s` to `s^{−n} z^n` and is
    /// an isometry from `⟨f, g⟩ = √π ∫ f̄ g` onto the range norm.
    #[default]
    Heat,
    /// `(2s)^{−1/2} π^{−3/4}`, the constant quoted with the basis images. It is
    /// `π^{−1/4}` times [`Heat`](Self::Heat); used only for comparing against
    /// the claimed basis-image constants.
    Claimed,
}

impl SbNormalization {
    pub fn constant(self, s: f64) -> f64 {
        match self {
            Self::Heat => (2.0 * PI * s).powf(-0.5),
            Self::Claimed => (2.0 * s).powf(-0.5) * PI.powf(-0.75),
        }
    }

    /// Constant of the matching inverse, `∫ g(x + isp) e^{−sp²/2} dp`.
    pub fn inverse_constant(self, s: f64) -> f64 {
        match self {
            Self::Heat => (2.0 * PI).powf(-0.5) * s.sqrt(),
            Self::Claimed => 2f64.powf(-0.5) * PI.powf(-0.25) * s.sqrt(),
        }
    }
}

/// Evaluation settings for the kernel path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOptions {
    pub gh_order: usize,
    pub normalization: SbNormalization,
}

impl Default for KernelOptions {
    fn default() -> Self {
        Self { gh_order: DEFAULT_GH_ORDER, normalization: SbNormalization::Heat }
    }
}

pub(crate) fn check_heat_time(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("heat time s = {s} must be positive and finite")))
    }
}

/// Rule of at least `order` nodes that is exact for a polynomial of the given
/// degree times a Gaussian.
pub(crate) fn rule_for(order: usize, degree: Option<usize>) -> Result<QuadratureRule1D> {
    let needed = degree.map_or(0, |d| d / 2 + 1);
    gauss_hermite(order.max(needed).min(MAX_GAUSS_HERMITE_ORDER), 1.0)
}

pub(crate) fn support_check(v: &ContourValue, exact: bool, rule: &QuadratureRule1D) -> Result<()> {
    if !exact && v.tail > SUPPORT_TAIL {
        Err(Error::Support { tail: v.tail, suggested_order: (2 * rule.len()).min(MAX_GAUSS_HERMITE_ORDER) })
    } else {
        Ok(())
    }
}

fn kernel_hint(s: f64, z: Complex64) -> GaussianHint {
    GaussianHint::new(0.5 / s, z / s)
}

/// `∫ e^{offset − (z−x)²/2s} f(x) dx` for one entire piece.
fn kernel_term(
    rule: &QuadratureRule1D,
    s: f64,
    term: &EntireTerm<'_>,
    z: Complex64,
    offset: f64,
) -> Result<ContourValue> {
    let hint = kernel_hint(s, z).combine(&term.hint());
    let v = match term {
        // assemble one exponent so neither factor can overflow on its own
        EntireTerm::Coherent(y) => contour_integral(rule, hint, |x| {
            let d = z - x;
            let e = x - y.q;
            let expo = offset - d * d / (2.0 * s) - Complex64::i() * y.p * e - 0.5 * e * e;
            expo.exp() / PI.sqrt()
        })?,
        _ => contour_integral(rule, hint, |x| {
            let d = z - x;
            (offset - d * d / (2.0 * s)).exp() * term.eval(x)
        })?,
    };
    support_check(&v, term.degree().is_some(), rule)?;
    Ok(v)
}

/// Largest sample spacing the trapezoid rule accepts for the kernel at `z`.
fn kernel_spacing_limit(s: f64, z: Complex64) -> f64 {
    // four samples per kernel width and per oscillation e^{−i(X−x)Im z/s}
    let width = s.sqrt() / 2.0;
    if z.im == 0.0 {
        width
    } else {
        width.min(PI * s / (2.0 * z.im.abs()))
    }
}

pub(crate) fn check_samples(samples: &LineSamples) -> Result<()> {
    let ratio = samples.edge_ratio();
    if ratio > SUPPORT_TAIL {
        return Err(Error::SampleSupport { ratio });
    }
    Ok(())
}

fn kernel_samples(samples: &LineSamples, s: f64, z: Complex64, offset: f64) -> Result<Complex64> {
    let h = samples.grid().spacing();
    let limit = kernel_spacing_limit(s, z);
    if h > limit {
        return Err(Error::Resolution {
            spacing: h,
            limit,
            reason: format!("heat kernel at z = {z} is under-resolved"),
        });
    }
    let w = samples.grid().trapezoid_weights();
    let terms: Vec<Complex64> = samples
        .grid()
        .nodes()
        .iter()
        .zip(&w)
        .zip(samples.values())
        .map(|((&x, &wx), &f)| {
            let d = z - x;
            (offset - d * d / (2.0 * s)).exp() * f * wx
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// `SB_s f` at the given `z_s` points with the default options.
pub fn sb_kernel_apply(s: f64, signal: &SampledSignal, points: &[Complex64]) -> Result<Vec<Complex64>> {
    sb_kernel_apply_with(s, signal, points, None, KernelOptions::default())
}

/// `SB_s f` at the given points, each value multiplied by `e^{log_offsets[k]}`.
///
/// The offset is added inside the exponent of the integrand, which keeps
/// values such as `e^{−sp²/2}·SB_s f` finite when `SB_s f` alone would
/// overflow.
pub fn sb_kernel_apply_with(
    s: f64,
    signal: &SampledSignal,
    points: &[Complex64],
    log_offsets: Option<&[f64]>,
    opts: KernelOptions,
) -> Result<Vec<Complex64>> {
    check_heat_time(s)?;
    check_offsets(points, log_offsets)?;
    let c = opts.normalization.constant(s);
    let offset_at = |k: usize| log_offsets.map_or(0.0, |o| o[k]);

    if let Some(samples) = signal.samples() {
        check_samples(samples)?;
        return points
            .par_iter()
            .enumerate()
            .map(|(k, &z)| kernel_samples(samples, s, z, offset_at(k)).map(|v| v * c))
            .collect();
    }

    let terms = signal.entire_terms();
    let degree = terms.iter().filter_map(|(_, t)| t.degree()).max();
    let rule = rule_for(opts.gh_order, degree)?;
    points
        .par_iter()
        .enumerate()
        .map(|(k, &z)| {
            let mut parts = Vec::with_capacity(terms.len());
            for (w, term) in &terms {
                parts.push(w * kernel_term(&rule, s, term, z, offset_at(k))?.value);
            }
            Ok(pairwise_sum(&parts) * c)
        })
        .collect()
}

/// `SB_s f` for any entire integrand, including ones without Gaussian decay
/// such as polynomials.
pub fn sb_kernel_apply_entire<F: EntireFunction>(
    s: f64,
    f: &F,
    points: &[Complex64],
    opts: KernelOptions,
) -> Result<Vec<Complex64>> {
    check_heat_time(s)?;
    let c = opts.normalization.constant(s);
    let rule = rule_for(opts.gh_order, f.degree())?;
    points
        .par_iter()
        .map(|&z| {
            let hint = kernel_hint(s, z).combine(&f.hint());
            let v = contour_integral(&rule, hint, |x| {
                let d = z - x;
                (-d * d / (2.0 * s)).exp() * f.eval(x)
            })?;
            support_check(&v, f.degree().is_some(), &rule)?;
            Ok(v.value * c)
        })
        .collect()
}

fn check_offsets(points: &[Complex64], log_offsets: Option<&[f64]>) -> Result<()> {
    match log_offsets {
        Some(o) if o.len() != points.len() => {
            Err(Error::Grid(format!("{} offsets for {} points", o.len(), points.len())))
        }
        _ => Ok(()),
    }
}
