use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{gauge_factor, gauge_prefactor};
use crate::grid::PlaneGrid;
use crate::param::TransformParameter;

/// How the values of a [`PlaneField`] are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gauge {
    /// Samples of a `z_s`-holomorphic function (Segal–Bargmann picture).
    Holomorphic { s: f64 },
    /// Samples of `F_t × (w_t-holomorphic function)` (HFrFT picture). Also
    /// used at the endpoints `t = 0` and `t = π/2`.
    Weighted { t: f64 },
}

impl Gauge {
    pub fn name(&self) -> &'static str {
        match self {
            Gauge::Holomorphic { .. } => "holomorphic",
            Gauge::Weighted { .. } => "weighted",
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Complex values on a [`PlaneGrid`], stored x-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneField {
    grid: PlaneGrid,
    values: Vec<Complex64>,
    gauge: Gauge,
    parameter: TransformParameter,
}

impl PlaneField {
    pub fn new(grid: PlaneGrid, values: Vec<Complex64>, gauge: Gauge, parameter: TransformParameter) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!("{} values for a {}×{} grid", values.len(), grid.x.len(), grid.p.len())));
        }
        let consistent = match gauge {
            Gauge::Holomorphic { s } => parameter.s() == Some(s) && s > 0.0,
            Gauge::Weighted { t } => parameter.t() == t,
        };
        if !consistent {
            return Err(Error::GaugeMismatch { expected: parameter.to_string(), found: format!("{gauge:?}") });
        }
        Ok(Self { grid, values, gauge, parameter })
    }

    pub fn grid(&self) -> &PlaneGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn parameter(&self) -> TransformParameter {
        self.parameter
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.grid.index(i, j)]
    }

    /// Iterate `(x, p, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.values.iter().enumerate().map(|(k, v)| {
            let (x, p) = self.grid.coords(k);
            (x, p, *v)
        })
    }

    /// Multiply by the gauge factor `(1+s²)^{1/4} e^{−s p²/2}`.
    pub fn to_weighted(&self) -> Result<Self> {
        let Gauge::Holomorphic { .. } = self.gauge else {
            return Err(self.mismatch("holomorphic"));
        };
        let factors = self.gauge_factors()?;
        let values = self.scaled_by(&factors, false);
        Self::new(self.grid, values, Gauge::Weighted { t: self.parameter.t() }, self.parameter)
    }

    /// Divide by the gauge factor. Undefined at the endpoints.
    pub fn to_holomorphic(&self) -> Result<Self> {
        let Gauge::Weighted { .. } = self.gauge else {
            return Err(self.mismatch("weighted"));
        };
        let s = match self.parameter.interior() {
            Some((_, s)) => s,
            None if self.parameter.is_fourier() => return Err(Error::Endpoint),
            None => return Err(Error::DegenerateCoordinate { t: self.parameter.t() }),
        };
        let factors = self.gauge_factors()?;
        let values = self.scaled_by(&factors, true);
        Self::new(self.grid, values, Gauge::Holomorphic { s }, self.parameter)
    }

    fn gauge_factors(&self) -> Result<Vec<(f64, f64)>> {
        // split into prefactor and exponent so the division is exact when the
        // Gaussian part underflows
        let s = self.parameter.s().ok_or(Error::Endpoint)?;
        let pre = gauge_prefactor(s);
        (0..self.grid.p.len())
            .map(|j| {
                let p = self.grid.p.node(j);
                gauge_factor(&self.parameter, p).map(|_| (pre, -0.5 * s * p * p))
            })
            .collect()
    }

    fn scaled_by(&self, factors: &[(f64, f64)], invert: bool) -> Vec<Complex64> {
        let np = self.grid.p.len();
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let (pre, expo) = factors[k % np];
                if invert {
                    v * (-expo).exp() / pre
                } else {
                    v * expo.exp() * pre
                }
            })
            .collect()
    }

    fn mismatch(&self, expected: &str) -> Error {
        Error::GaugeMismatch { expected: expected.into(), found: self.gauge.name().into() }
    }

    /// Largest magnitude on the outer ring relative to the largest magnitude.
    pub fn boundary_ratio(&self) -> f64 {
        let mut peak: f64 = 0.0;
        let mut edge: f64 = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            let m = v.norm();
            peak = peak.max(m);
            if self.grid.is_boundary(k) {
                edge = edge.max(m);
            }
        }
        if peak == 0.0 {
            0.0
        } else {
            edge / peak
        }
    }
}
