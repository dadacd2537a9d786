//! The transform parameter, carried both as an angle `t ∈ [0, π/2]` and as the
//! heat time `s = tan t ∈ [0, ∞]`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which branch of the family a parameter selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `t = 0`: the identity on L²(ℝ).
    Identity,
    /// `t ∈ (0, π/2)`: images are holomorphic up to a Gaussian factor.
    Holomorphic,
    /// `t = π/2`: the Fourier endpoint, handled by its own kernel.
    Fourier,
}

/// Heat time `s`; the Fourier endpoint carries an explicit infinite marker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HeatTime {
    Finite(f64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParameter {
    t: f64,
    s: HeatTime,
}

impl TransformParameter {
    pub fn identity() -> Self {
        Self { t: 0.0, s: HeatTime::Finite(0.0) }
    }

    pub fn fourier() -> Self {
        Self { t: FRAC_PI_2, s: HeatTime::Infinite }
    }

    /// Builds the parameter from an angle. Exactly `π/2` (as the f64 constant)
    /// selects the Fourier endpoint; anything above it is rejected.
    pub fn from_t(t: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&t) {
            return Err(Error::Parameter(format!("t = {t} outside [0, π/2]")));
        }
        if t == FRAC_PI_2 {
            return Ok(Self::fourier());
        }
        if t == 0.0 {
            return Ok(Self::identity());
        }
        Ok(Self { t, s: HeatTime::Finite(t.tan()) })
    }

    /// Builds the parameter from a heat time `s ∈ [0, ∞)`; `t = arctan s`.
    pub fn from_s(s: f64) -> Result<Self> {
        if s.is_nan() || s < 0.0 {
            return Err(Error::Parameter(format!("s = {s} outside [0, ∞)")));
        }
        if s == f64::INFINITY {
            return Ok(Self::fourier());
        }
        if s == 0.0 {
            return Ok(Self::identity());
        }
        Ok(Self { t: s.atan(), s: HeatTime::Finite(s) })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn heat_time(&self) -> HeatTime {
        self.s
    }

    /// `s = tan t`, or `None` at the Fourier endpoint.
    pub fn s(&self) -> Option<f64> {
        match self.s {
            HeatTime::Finite(s) => Some(s),
            HeatTime::Infinite => None,
        }
    }

    pub fn regime(&self) -> Regime {
        match self.s {
            HeatTime::Infinite => Regime::Fourier,
            HeatTime::Finite(0.0) => Regime::Identity,
            HeatTime::Finite(_) => Regime::Holomorphic,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.regime() == Regime::Identity
    }

    pub fn is_fourier(&self) -> bool {
        self.regime() == Regime::Fourier
    }

    /// Returns `(t, s)` for interior parameters, failing at either endpoint.
    pub(crate) fn interior(&self) -> Option<(f64, f64)> {
        match (self.regime(), self.s) {
            (Regime::Holomorphic, HeatTime::Finite(s)) => Some((self.t, s)),
            _ => None,
        }
    }
}

impl fmt::Display for TransformParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            HeatTime::Finite(s) => write!(f, "t={:.16e};s={:.16e}", self.t, s),
            HeatTime::Infinite => write!(f, "t={:.16e};s=inf", self.t),
        }
    }
}

impl std::str::FromStr for TransformParameter {
    type Err = Error;

    /// Parses `t=<t>`, `s=<s>`, or the `t=<t>;s=<s>` form written by
    /// [`Display`](fmt::Display). When both are given they must agree to
    /// `1e−12` in `t` and are then stored exactly as written.
    fn from_str(text: &str) -> Result<Self> {
        let mut t = None;
        let mut s = None;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::Parameter(format!("expected key=value, got {part:?}")))?;
            let v: f64 = match value.trim() {
                "inf" | "+inf" | "infinity" => f64::INFINITY,
                other => other.parse().map_err(|_| Error::Parameter(format!("bad number {other:?}")))?,
            };
            match key.trim() {
                "t" => t = Some(v),
                "s" => s = Some(v),
                other => return Err(Error::Parameter(format!("unknown key {other:?}"))),
            }
        }
        match (t, s) {
            (Some(t), None) => Self::from_t(t),
            (None, Some(s)) => Self::from_s(s),
            (Some(t), Some(s)) => {
                let p = Self::from_s(s)?;
                if (p.t - t).abs() > 1e-12 {
                    return Err(Error::Parameter(format!("t = {t} and s = {s} disagree")));
                }
                Ok(match p.regime() {
                    Regime::Holomorphic => Self { t, s: HeatTime::Finite(s) },
                    _ => p,
                })
            }
            (None, None) => Err(Error::Parameter("empty parameter".into())),
        }
    }
}
