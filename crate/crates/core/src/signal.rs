use num_complex::Complex64;

use crate::closedform::coherent_state_at;
use crate::contour::{EntireFunction, GaussianHint};
use crate::error::{Error, Result};
use crate::geometry::CoherentLabel;
use crate::grid::LineGrid;
use crate::hermite::HermiteCoefficients;

/// Complex samples on a uniform 1-D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSamples {
    grid: LineGrid,
    values: Vec<Complex64>,
}

impl LineSamples {
    pub fn new(grid: LineGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Signal(format!("{} values for a grid of {} nodes", values.len(), grid.len())));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Signal(format!("non-finite sample at x = {}", grid.node(i))));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: LineGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().into_iter().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &LineGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Linear interpolation between nodes; zero outside the grid.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let (a, b) = (self.grid.min(), self.grid.max());
        if !(a..=b).contains(&x) {
            return Complex64::new(0.0, 0.0);
        }
        let pos = (x - a) / self.grid.spacing();
        let i = (pos.floor() as usize).min(self.grid.len() - 2);
        let frac = pos - i as f64;
        if frac == 0.0 {
            return self.values[i];
        }
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    /// Largest end-point magnitude relative to the peak magnitude.
    pub fn edge_ratio(&self) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.values.len();
        self.values[0].norm().max(self.values[n - 1].norm()) / peak
    }
}

/// A one-dimensional signal `f ∈ L²(ℝ, dx)`.
#[derive(Debug, Clone, PartialEq)]
pub enum SampledSignal {
    /// `Σ c_k ψ_{Y_k}`.
    CoherentSum(Vec<(Complex64, CoherentLabel)>),
    /// `Σ f_n h_n^s`.
    HermiteRep(HermiteCoefficients),
    Samples(LineSamples),
}

impl SampledSignal {
    pub fn coherent(label: CoherentLabel) -> Self {
        Self::CoherentSum(vec![(Complex64::new(1.0, 0.0), label)])
    }

    pub fn coherent_sum(terms: Vec<(Complex64, CoherentLabel)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Signal("empty coherent superposition".into()));
        }
        if terms.iter().any(|(w, _)| !(w.re.is_finite() && w.im.is_finite())) {
            return Err(Error::Signal("non-finite coherent weight".into()));
        }
        Ok(Self::CoherentSum(terms))
    }

    /// Value at a real point. Samples are interpolated linearly.
    pub fn value(&self, x: f64) -> Complex64 {
        match self {
            Self::Samples(s) => s.interpolate(x),
            _ => self.value_at(Complex64::new(x, 0.0)).expect("entire representation"),
        }
    }

    /// Analytic continuation, available for coherent sums and Hermite
    /// representations.
    pub fn value_at(&self, x: Complex64) -> Option<Complex64> {
        match self {
            Self::Samples(_) => None,
            _ => Some(
                self.entire_terms()
                    .iter()
                    .map(|(w, term)| w * term.eval(x))
                    .fold(Complex64::new(0.0, 0.0), |a, b| a + b),
            ),
        }
    }

    /// The signal as a weighted list of entire pieces with Gaussian envelopes.
    /// Empty for sampled signals.
    pub fn entire_terms(&self) -> Vec<(Complex64, EntireTerm<'_>)> {
        match self {
            Self::CoherentSum(terms) => terms.iter().map(|(w, y)| (*w, EntireTerm::Coherent(*y))).collect(),
            Self::HermiteRep(c) => vec![(Complex64::new(1.0, 0.0), EntireTerm::Hermite(c))],
            Self::Samples(_) => Vec::new(),
        }
    }

    pub fn samples(&self) -> Option<&LineSamples> {
        match self {
            Self::Samples(s) => Some(s),
            _ => None,
        }
    }
}

/// One entire piece of a signal.
#[derive(Debug, Clone, Copy)]
pub enum EntireTerm<'a> {
    Coherent(CoherentLabel),
    Hermite(&'a HermiteCoefficients),
}

impl EntireFunction for EntireTerm<'_> {
    fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            Self::Coherent(y) => coherent_state_at(y, x),
            Self::Hermite(c) => c.value_at(x),
        }
    }

    fn hint(&self) -> GaussianHint {
        match self {
            // −iP(x−Q) − (x−Q)²/2 = −x²/2 + (Q − iP)x + const
            Self::Coherent(y) => GaussianHint::new(0.5, Complex64::new(y.q, -y.p)),
            Self::Hermite(c) => c.hint(),
        }
    }

    fn degree(&self) -> Option<usize> {
        match self {
            Self::Coherent(_) => Some(0),
            Self::Hermite(c) => c.degree(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::coherent_state;

    #[test]
    fn samples_validate_length_and_finiteness() {
        let g = LineGrid::new(0.0, 1.0, 3).unwrap();
        assert!(LineSamples::new(g, vec![Complex64::new(0.0, 0.0); 2]).is_err());
        let bad = vec![Complex64::new(0.0, 0.0), Complex64::new(f64::NAN, 0.0), Complex64::new(0.0, 0.0)];
        assert!(LineSamples::new(g, bad).is_err());
    }

    #[test]
    fn interpolation() {
        let g = LineGrid::new(0.0, 2.0, 3).unwrap();
        let s = LineSamples::new(g, vec![1.0.into(), 3.0.into(), 5.0.into()]).unwrap();
        assert_eq!(s.interpolate(0.5), Complex64::new(2.0, 0.0));
        assert_eq!(s.interpolate(2.0), Complex64::new(5.0, 0.0));
        assert_eq!(s.interpolate(1.0), Complex64::new(3.0, 0.0));
        assert_eq!(s.interpolate(-0.1), Complex64::new(0.0, 0.0));
        assert_eq!(s.edge_ratio(), 1.0);
    }

    #[test]
    fn coherent_sum_values() {
        let y = CoherentLabel::new(0.5, 1.0).unwrap();
        let sig = SampledSignal::coherent_sum(vec![
            (Complex64::new(2.0, 0.0), y),
            (Complex64::new(0.0, 1.0), CoherentLabel::origin()),
        ])
        .unwrap();
        let x = 0.3;
        let expected = 2.0 * coherent_state(&y, x) + Complex64::i() * coherent_state(&CoherentLabel::origin(), x);
        assert!((sig.value(x) - expected).norm() < 1e-15);
        assert!(SampledSignal::coherent_sum(vec![]).is_err());
    }
}
