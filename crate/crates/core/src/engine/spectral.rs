//! `SB_s` through the Hermite expansion `f = Σ f_n h_n^b`, with the basis
//! images `SB_s h_n^b` tabulated once per set of evaluation points.
//!
//! The tabulated images come from kernel quadrature. For `n ≤ 12` the cache
//! also holds the claimed closed form `d_{s,n} z^n e^{−z²/6s}`, so the two can
//! be compared; the closed form is never used to
//! build transforms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{check_heat_time, rule_for, support_check, KernelOptions, SbNormalization};
use crate::contour::{contour_integral_many, GaussianHint};
use crate::error::{Error, Result};
use crate::hermite::{hermite_functions_at, norm_constant, HermiteCoefficients, MAX_HERMITE_ORDER};
use crate::quadrature::pairwise_sum;

/// Highest `n` for which the claimed closed form is tabulated.
pub const CLAIMED_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Heat-kernel quadrature. Authoritative.
    KernelQuadrature,
    /// `d_{s,n} z^n e^{−z²/6s}`; comparison only.
    ClaimedClosedForm,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Self::KernelQuadrature => "kernel_quadrature",
            Self::ClaimedClosedForm => "claimed_closed_form",
        }
    }
}

/// `SB_s h_n^b` at fixed points for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisImageCache {
    s: f64,
    basis_scale: f64,
    normalization: SbNormalization,
    points: Vec<Complex64>,
    log_offsets: Vec<f64>,
    /// `images[n][k]`
    images: Vec<Vec<Complex64>>,
    claimed: Vec<Vec<Complex64>>,
    deviations: Vec<f64>,
}

impl BasisImageCache {
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn basis_scale(&self) -> f64 {
        self.basis_scale
    }

    pub fn normalization(&self) -> SbNormalization {
        self.normalization
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn log_offsets(&self) -> &[f64] {
        &self.log_offsets
    }

    pub fn order(&self) -> usize {
        self.images.len() - 1
    }

    /// Authoritative image of `h_n` at every point.
    pub fn image(&self, n: usize) -> &[Complex64] {
        &self.images[n]
    }

    /// Claimed closed form, when tabulated for `n`.
    pub fn claimed(&self, n: usize) -> Option<&[Complex64]> {
        self.claimed.get(n).map(|v| v.as_slice())
    }

    pub fn provenances(&self, n: usize) -> Vec<Provenance> {
        let mut out = vec![Provenance::KernelQuadrature];
        if n < self.claimed.len() {
            out.push(Provenance::ClaimedClosedForm);
        }
        out
    }

    /// Maximum over the points of `|claimed − quadrature|`, for each tabulated
    /// `n`.
    pub fn deviations(&self) -> &[f64] {
        &self.deviations
    }
}

/// `d_{s,n} = (−1)^n a_{s,n} s^{−n} π^{−1/4} 6^{−1/2} 3^{−n}`.
pub fn claimed_constant(s: f64, n: usize) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * norm_constant(s, n) * s.powi(-(n as i32)) * PI.powf(-0.25) / 6f64.sqrt() / 3f64.powi(n as i32)
}

/// Claimed closed form for `SB_s h_n^s` at `z`, times `e^{offset}`.
pub fn claimed_image(s: f64, n: usize, z: Complex64, offset: f64) -> Complex64 {
    claimed_constant(s, n) * z.powi(n as i32) * (offset - z * z / (6.0 * s)).exp()
}

/// Tabulate `SB_s h_n^s` for `n ≤ N` with the default kernel options.
pub fn build_basis_images(s: f64, order: usize, points: &[Complex64]) -> Result<BasisImageCache> {
    build_basis_images_with(s, s, order, points, None, KernelOptions::default())
}

/// Tabulate `SB_s h_n^b` for `n ≤ N`, each image multiplied by
/// `e^{log_offsets[k]}` as in [`super::kernel::sb_kernel_apply_with`]. The
/// claimed closed form is only tabulated when `b = s`.
pub fn build_basis_images_with(
    s: f64,
    basis_scale: f64,
    order: usize,
    points: &[Complex64],
    log_offsets: Option<&[f64]>,
    opts: KernelOptions,
) -> Result<BasisImageCache> {
    check_heat_time(s)?;
    check_heat_time(basis_scale)?;
    if order > MAX_HERMITE_ORDER {
        return Err(Error::HermiteOrder { n: order, max: MAX_HERMITE_ORDER });
    }
    let offsets: Vec<f64> = match log_offsets {
        Some(o) if o.len() != points.len() => {
            return Err(Error::Grid(format!("{} offsets for {} points", o.len(), points.len())))
        }
        Some(o) => o.to_vec(),
        None => vec![0.0; points.len()],
    };
    let c = opts.normalization.constant(s);
    // the integrand is a polynomial of degree ≤ N times a Gaussian
    let rule = rule_for(opts.gh_order, Some(order))?;
    let basis_hint = GaussianHint::centered(0.25 / basis_scale);

    let per_point: Vec<Vec<Complex64>> = points
        .par_iter()
        .zip(&offsets)
        .map(|(&z, &off)| {
            let hint = GaussianHint::new(0.5 / s, z / s).combine(&basis_hint);
            let vals = contour_integral_many(&rule, hint, order + 1, |x| {
                let d = z - x;
                let k = (off - d * d / (2.0 * s)).exp();
                hermite_functions_at(basis_scale, order, x).into_iter().map(|h| h * k).collect()
            })?;
            vals.iter().map(|v| support_check(v, true, &rule).map(|_| v.value * c)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let images: Vec<Vec<Complex64>> = (0..=order).map(|n| per_point.iter().map(|v| v[n]).collect()).collect();

    let (claimed, deviations) = if basis_scale == s {
        let top = order.min(CLAIMED_MAX_ORDER);
        let claimed: Vec<Vec<Complex64>> = (0..=top)
            .map(|n| points.iter().zip(&offsets).map(|(&z, &o)| claimed_image(s, n, z, o)).collect())
            .collect();
        let dev = claimed
            .iter()
            .zip(&images)
            .map(|(c, q)| c.iter().zip(q).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
            .collect();
        (claimed, dev)
    } else {
        (Vec::new(), Vec::new())
    };

    Ok(BasisImageCache {
        s,
        basis_scale,
        normalization: opts.normalization,
        points: points.to_vec(),
        log_offsets: offsets,
        images,
        claimed,
        deviations,
    })
}

/// `Σ_n f_n·SB_s h_n^b` at the cached points.
pub fn sb_spectral_apply(s: f64, coeffs: &HermiteCoefficients, cache: &BasisImageCache) -> Result<Vec<Complex64>> {
    if s != cache.s {
        return Err(Error::CacheMismatch(format!("cache built for s = {}, requested s = {s}", cache.s)));
    }
    if coeffs.s() != cache.basis_scale {
        return Err(Error::CacheMismatch(format!(
            "coefficients use basis scale {}, cache uses {}",
            coeffs.s(),
            cache.basis_scale
        )));
    }
    if coeffs.order() > cache.order() {
        return Err(Error::CacheMismatch(format!(
            "coefficients reach order {}, cache only {}",
            coeffs.order(),
            cache.order()
        )));
    }
    Ok((0..cache.points.len())
        .into_par_iter()
        .map(|k| {
            let terms: Vec<Complex64> =
                coeffs.coeffs().iter().enumerate().map(|(n, f)| f * cache.images[n][k]).collect();
            pairwise_sum(&terms)
        })
        .collect())
}

/// Comparison of the claimed basis images against quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisImageAudit {
    pub s: f64,
    /// `SB_s h_0 / (d_{s,0} e^{−z²/6s})` with the claimed kernel constant.
    pub n0_ratio_claimed_kernel: f64,
    /// The same ratio with the heat-semigroup constant used by the engine.
    pub n0_ratio_engine: f64,
    /// Coefficients `(c_0, c_1, c_2)` of `SB_s h_2 · e^{z²/6s}`.
    pub n2_components: [Complex64; 3],
    /// `c_0 / c_2`; zero if the claimed pure-`z²` form held.
    pub n2_constant_over_quadratic: Complex64,
    /// Largest departure of `SB_s h_1 · e^{z²/6s} / z` from a constant.
    pub n1_proportionality_spread: f64,
}

/// Reduce `SB_s h_n · e^{z²/6s}` to polynomial coefficients using images at
/// `z ∈ {0, 1, −1, 2}`.
pub fn basis_image_audit(s: f64) -> Result<BasisImageAudit> {
    let pts: Vec<Complex64> = [0.0, 1.0, -1.0, 2.0, 0.5].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let claimed = KernelOptions { normalization: SbNormalization::Claimed, ..KernelOptions::default() };
    let p_cache = build_basis_images_with(s, s, 2, &pts, None, claimed)?;
    let e_cache = build_basis_images_with(s, s, 2, &pts, None, KernelOptions::default())?;
    let strip = |cache: &BasisImageCache, n: usize| -> Vec<Complex64> {
        cache.image(n).iter().zip(&pts).map(|(v, z)| v * (z * z / (6.0 * s)).exp()).collect()
    };
    let claimed0 = claimed_constant(s, 0);
    let n0_ratio = |cache: &BasisImageCache| strip(cache, 0)[0].re / claimed0;

    let g2 = strip(&p_cache, 2);
    let c0 = g2[0];
    let c1 = 0.5 * (g2[1] - g2[2]);
    let c2 = 0.5 * (g2[1] + g2[2]) - c0;

    let g1 = strip(&p_cache, 1);
    let ratios: Vec<Complex64> = g1.iter().zip(&pts).skip(1).map(|(g, z)| g / z).collect();
    let spread = ratios.iter().map(|r| (r - ratios[0]).norm() / ratios[0].norm()).fold(0.0, f64::max);

    Ok(BasisImageAudit {
        s,
        n0_ratio_claimed_kernel: n0_ratio(&p_cache),
        n0_ratio_engine: n0_ratio(&e_cache),
        n2_components: [c0, c1, c2],
        n2_constant_over_quadratic: c0 / c2,
        n1_proportionality_spread: spread,
    })
}
