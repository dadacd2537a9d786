//! Phase-space labels, holomorphic coordinates, the Gaussian factor `F_t`,
//! the gauge factor relating the SB and HFrFT pictures, and the plane measure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param::{Regime, TransformParameter};

/// Phase-space point `Y = (P, Q)` labelling a Gaussian coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentLabel {
    pub p: f64,
    pub q: f64,
}

impl CoherentLabel {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(Error::Signal(format!("non-finite coherent label ({p}, {q})")));
        }
        Ok(Self { p, q })
    }

    pub const fn origin() -> Self {
        Self { p: 0.0, q: 0.0 }
    }

    /// `Q_t = cos t·Q + i sin t·P`, the image of the label's position in the
    /// `w_t` coordinate.
    pub fn rotated_position(&self, t: f64) -> Complex64 {
        Complex64::new(t.cos() * self.q, t.sin() * self.p)
    }

    /// Momentum companion of [`rotated_position`](Self::rotated_position),
    /// `P_t = cos t·P + i sin t·Q`. It reduces to `P` at `t = 0`.
    pub fn rotated_momentum(&self, t: f64) -> Complex64 {
        Complex64::new(t.cos() * self.p, t.sin() * self.q)
    }

    /// The swapped momentum combination
    /// `sin t·Q + i cos t·P`, equal to `i·conj(P_t)`.
    pub fn swapped_rotated_momentum(&self, t: f64) -> Complex64 {
        Complex64::new(t.sin() * self.q, t.cos() * self.p)
    }
}

/// Selects `w_t = cos t·x + i sin t·p` or `z_s = x + i s·p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    W,
    Z,
}

pub fn holomorphic_coordinate(param: &TransformParameter, which: Coordinate, x: f64, p: f64) -> Result<Complex64> {
    let (t, s) = param.interior().ok_or(Error::DegenerateCoordinate { t: param.t() })?;
    Ok(match which {
        Coordinate::W => Complex64::new(t.cos() * x, t.sin() * p),
        Coordinate::Z => Complex64::new(x, s * p),
    })
}

pub fn w_coordinate(param: &TransformParameter, x: f64, p: f64) -> Result<Complex64> {
    holomorphic_coordinate(param, Coordinate::W, x, p)
}

pub fn z_coordinate(param: &TransformParameter, x: f64, p: f64) -> Result<Complex64> {
    holomorphic_coordinate(param, Coordinate::Z, x, p)
}

/// `F_t(x, p) = exp(−tan t·p²/2)`.
pub fn ft_factor(param: &TransformParameter, p: f64) -> Result<f64> {
    let s = finite_s(param)?;
    Ok((-0.5 * s * p * p).exp())
}

/// `(1 + s²)^{1/4}·exp(−s p²/2)`: multiplies an SB-picture value into the
/// HFrFT picture at the same point.
pub fn gauge_factor(param: &TransformParameter, p: f64) -> Result<f64> {
    let s = finite_s(param)?;
    Ok(gauge_prefactor(s) * (-0.5 * s * p * p).exp())
}

/// The p-independent part of [`gauge_factor`].
pub fn gauge_prefactor(s: f64) -> f64 {
    (1.0 + s * s).powf(0.25)
}

/// Density of `dμ_t = (√(sin 2t)/2) dx dp`.
pub fn measure_density(param: &TransformParameter) -> Result<f64> {
    match param.regime() {
        Regime::Holomorphic => Ok((2.0 * param.t()).sin().sqrt() / 2.0),
        _ => Err(Error::DegenerateMeasure { t: param.t() }),
    }
}

fn finite_s(param: &TransformParameter) -> Result<f64> {
    param.s().ok_or(Error::Endpoint)
}
