//! `SB_s^{−1} g(x) = c ∫_{−R}^{R} g(x + isp) e^{−sp²/2} dp`, truncated at a
//! finite `R` with an estimate of the discarded tail.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{check_heat_time, SbNormalization};
use crate::error::{Error, Result};
use crate::field::{Gauge, PlaneField};
use crate::grid::LineGrid;
use crate::quadrature::pairwise_sum;

/// Truncation estimates above this produce a warning.
pub const TRUNCATION_WARNING: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseResult {
    pub values: Vec<Complex64>,
    /// Largest estimated contribution of `|p| > R` over all `x`.
    pub truncation_estimate: f64,
    /// True when some `x` fell between grid columns and the field was
    /// interpolated linearly in `x`.
    pub interpolated: bool,
    pub warning: Option<String>,
}

/// Tail beyond the last node, assuming `|integrand| ∝ e^{−κp²}` there.
fn tail_estimate(ps: &[f64], mags: &[f64]) -> f64 {
    let n = ps.len();
    let end = |a: usize, b: usize| -> f64 {
        let (pa, pb) = (ps[a].abs(), ps[b].abs());
        let (ma, mb) = (mags[a], mags[b]);
        if mb == 0.0 {
            return 0.0;
        }
        let kappa = if ma > 0.0 && pb > pa { (ma / mb).ln() / (pb * pb - pa * pa) } else { 0.0 };
        if kappa > 0.0 && pb > 0.0 {
            mb / (2.0 * kappa * pb)
        } else {
            // no visible decay: the integral does not converge on this window
            mb * pb.max(1.0)
        }
    };
    end(1, 0) + end(n - 2, n - 1)
}

fn integrate_column(s: f64, ps: &[f64], w: &[f64], column: impl Fn(usize) -> Complex64) -> (Complex64, f64) {
    let vals: Vec<Complex64> = ps.iter().enumerate().map(|(j, &p)| column(j) * (-0.5 * s * p * p).exp()).collect();
    let mags: Vec<f64> = vals.iter().map(|v| v.norm()).collect();
    let terms: Vec<Complex64> = vals.iter().zip(w).map(|(v, w)| v * *w).collect();
    (pairwise_sum(&terms), tail_estimate(ps, &mags))
}

fn finish(values: Vec<(Complex64, f64)>, c: f64, interpolated: bool) -> InverseResult {
    let truncation_estimate = values.iter().map(|v| v.1 * c).fold(0.0, f64::max);
    let warning = (truncation_estimate > TRUNCATION_WARNING)
        .then(|| format!("truncation estimate {truncation_estimate:.3e} exceeds {TRUNCATION_WARNING:.0e}; increase R"));
    InverseResult { values: values.into_iter().map(|v| v.0 * c).collect(), truncation_estimate, interpolated, warning }
}

/// Invert a holomorphic-gauge field at the points `xs`, using the field's
/// `p` nodes with `|p| ≤ R`.
pub fn sb_inverse(s: f64, field: &PlaneField, xs: &[f64], r: f64) -> Result<InverseResult> {
    sb_inverse_with(s, field, xs, r, SbNormalization::Heat)
}

pub fn sb_inverse_with(s: f64, field: &PlaneField, xs: &[f64], r: f64, norm: SbNormalization) -> Result<InverseResult> {
    check_heat_time(s)?;
    match field.gauge() {
        Gauge::Holomorphic { s: fs } if fs == s => {}
        other => {
            return Err(Error::GaugeMismatch {
                expected: format!("holomorphic (s = {s})"),
                found: format!("{other:?}"),
            })
        }
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Parameter(format!("truncation radius R = {r} must be positive")));
    }
    let grid = field.grid();
    let tol = 1e-12 * r;
    let js: Vec<usize> = (0..grid.p.len()).filter(|&j| grid.p.node(j).abs() <= r + tol).collect();
    if js.len() < 3 {
        return Err(Error::Grid(format!("fewer than 3 p-nodes inside [−{r}, {r}]")));
    }
    let ps: Vec<f64> = js.iter().map(|&j| grid.p.node(j)).collect();
    let h = grid.p.spacing();
    let mut w = vec![h; ps.len()];
    w[0] *= 0.5;
    *w.last_mut().unwrap() *= 0.5;

    let mut interpolated = false;
    let mut columns = Vec::with_capacity(xs.len());
    for &x in xs {
        let (i, frac) = locate(&grid.x, x)?;
        interpolated |= frac != 0.0;
        columns.push((i, frac));
    }
    let values: Vec<(Complex64, f64)> = columns
        .par_iter()
        .map(|&(i, frac)| {
            integrate_column(s, &ps, &w, |k| {
                let j = js[k];
                if frac == 0.0 {
                    field.at(i, j)
                } else {
                    field.at(i, j) * (1.0 - frac) + field.at(i + 1, j) * frac
                }
            })
        })
        .collect();
    Ok(finish(values, norm.inverse_constant(s), interpolated))
}

fn locate(axis: &LineGrid, x: f64) -> Result<(usize, f64)> {
    let h = axis.spacing();
    let pos = (x - axis.min()) / h;
    if pos < -1e-9 || pos > (axis.len() - 1) as f64 + 1e-9 {
        return Err(Error::Grid(format!("x = {x} outside the field's x range")));
    }
    let nearest = pos.round();
    if (pos - nearest).abs() < 1e-9 {
        return Ok((nearest as usize, 0.0));
    }
    let i = (pos.floor() as usize).min(axis.len() - 2);
    Ok((i, pos - i as f64))
}

/// Invert a function evaluated on demand, with `n` trapezoid nodes on
/// `[−R, R]`.
pub fn sb_inverse_fn<G>(s: f64, g: G, xs: &[f64], r: f64, n: usize) -> Result<InverseResult>
where
    G: Fn(f64, f64) -> Complex64 + Sync,
{
    check_heat_time(s)?;
    let axis = LineGrid::new(-r, r, n)?;
    if n < 3 {
        return Err(Error::Grid("need at least 3 nodes on [−R, R]".into()));
    }
    let ps = axis.nodes();
    let w = axis.trapezoid_weights();
    let values = xs.par_iter().map(|&x| integrate_column(s, &ps, &w, |j| g(x, ps[j]))).collect();
    Ok(finish(values, SbNormalization::Heat.inverse_constant(s), false))
}
