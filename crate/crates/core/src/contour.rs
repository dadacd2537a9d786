//! Gauss–Hermite integration of entire integrands with Gaussian decay along a
//! horizontal contour through the saddle of their combined envelope.
//!
//! An integrand `g` whose leading behaviour is `exp(−a x² + b x)` (`a > 0`,
//! `b` complex) is integrated over `x = x* + u/√a`, `x* = b/(2a)`. Shifting the
//! real line to pass through the saddle is exact for entire `g` by Cauchy's
//! theorem and removes the oscillation that would otherwise cancel on the
//! real axis, so the Gauss–Hermite rule sees a real Gaussian times a smooth
//! factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{pairwise_sum, QuadratureRule1D, RuleKind};

/// Leading Gaussian behaviour `exp(−rate·x² + linear·x)` of an entire factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianHint {
    pub rate: f64,
    pub linear: Complex64,
}

impl GaussianHint {
    pub fn new(rate: f64, linear: Complex64) -> Self {
        Self { rate, linear }
    }

    /// `exp(−rate·(x − center)²)` up to a constant.
    pub fn around(rate: f64, center: Complex64) -> Self {
        Self { rate, linear: 2.0 * rate * center }
    }

    pub fn centered(rate: f64) -> Self {
        Self { rate, linear: Complex64::new(0.0, 0.0) }
    }

    /// No Gaussian decay (polynomials, plane waves).
    pub fn flat() -> Self {
        Self::centered(0.0)
    }

    /// Envelope of a product.
    pub fn combine(&self, other: &Self) -> Self {
        Self { rate: self.rate + other.rate, linear: self.linear + other.linear }
    }

    /// Envelope of `conj(f(conj x))`, the continuation of `f̄` off the real line.
    pub fn conjugate(&self) -> Self {
        Self { rate: self.rate, linear: self.linear.conj() }
    }

    pub fn saddle(&self) -> Option<Complex64> {
        (self.rate > 0.0).then(|| self.linear / (2.0 * self.rate))
    }
}

/// Entire function of one complex variable with a known Gaussian envelope.
pub trait EntireFunction: Sync {
    fn eval(&self, x: Complex64) -> Complex64;
    fn hint(&self) -> GaussianHint;

    /// `Some(d)` when `f` is a polynomial of degree `d` times exactly the
    /// Gaussian of [`hint`](Self::hint). Gauss–Hermite on the saddle contour is
    /// then exact once the order exceeds half the degree of the full integrand.
    fn degree(&self) -> Option<usize> {
        None
    }

    /// `conj(f(conj x))`.
    fn eval_conj(&self, x: Complex64) -> Complex64 {
        self.eval(x.conj()).conj()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourValue {
    pub value: Complex64,
    /// Largest end-node contribution relative to the largest contribution.
    pub tail: f64,
}

fn unit_rule_check(rule: &QuadratureRule1D) -> Result<()> {
    match rule.kind() {
        RuleKind::GaussHermite { scale: 1.0, .. } => Ok(()),
        other => {
            Err(Error::Parameter(format!("contour integration needs a unit-scale Gauss–Hermite rule, got {other:?}")))
        }
    }
}

fn contour_nodes(rule: &QuadratureRule1D, hint: GaussianHint) -> Result<(Complex64, f64)> {
    unit_rule_check(rule)?;
    let centre = hint
        .saddle()
        .ok_or_else(|| Error::Parameter("integrand has no Gaussian decay; contour rule undefined".into()))?;
    Ok((centre, 1.0 / hint.rate.sqrt()))
}

fn finish(terms: &[Complex64], node_of: impl Fn(usize) -> f64) -> Result<ContourValue> {
    let mut peak: f64 = 0.0;
    for (i, t) in terms.iter().enumerate() {
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::IntegrationDomain { node: node_of(i), value: t.to_string() });
        }
        peak = peak.max(t.norm());
    }
    let ends = terms.first().map_or(0.0, |t| t.norm()).max(terms.last().map_or(0.0, |t| t.norm()));
    let tail = if peak > 0.0 { ends / peak } else { 0.0 };
    Ok(ContourValue { value: pairwise_sum(terms), tail })
}

/// `∫ g(x) dx` over the real line, evaluated on the contour through the saddle
/// of `hint`, which must describe the Gaussian decay of `g` as a whole.
pub fn contour_integral<G>(rule: &QuadratureRule1D, hint: GaussianHint, g: G) -> Result<ContourValue>
where
    G: Fn(Complex64) -> Complex64,
{
    let (centre, width) = contour_nodes(rule, hint)?;
    let terms: Vec<Complex64> =
        rule.nodes().iter().zip(rule.scaled_weights()).map(|(&u, &w)| g(centre + u * width) * (w * width)).collect();
    finish(&terms, |i| rule.nodes()[i])
}

/// Vector-valued variant: `g` returns `len` integrand components per node.
pub fn contour_integral_many<G>(
    rule: &QuadratureRule1D,
    hint: GaussianHint,
    len: usize,
    g: G,
) -> Result<Vec<ContourValue>>
where
    G: Fn(Complex64) -> Vec<Complex64>,
{
    let (centre, width) = contour_nodes(rule, hint)?;
    let mut columns = vec![Vec::with_capacity(rule.len()); len];
    for (&u, &w) in rule.nodes().iter().zip(rule.scaled_weights()) {
        let vals = g(centre + u * width);
        debug_assert_eq!(vals.len(), len);
        for (col, v) in columns.iter_mut().zip(vals) {
            col.push(v * (w * width));
        }
    }
    columns.iter().map(|c| finish(c, |i| rule.nodes()[i])).collect()
}
