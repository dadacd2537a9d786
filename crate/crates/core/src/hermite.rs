//! Scaled Hermite polynomials `H_n^s`, Hermite functions
//! `h_n^s = a_{s,n} H_n^s(x) e^{−x²/4s}`, and projection onto / synthesis from
//! that basis.
//!
//! The functions are orthonormal under `⟨f, g⟩ = √π ∫ f̄ g dx`; under the plain
//! Lebesgue product their squared norm is `π^{−1/2}`.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::{Complex64, ComplexFloat};
use serde::{Deserialize, Serialize};

use crate::contour::{contour_integral_many, EntireFunction, GaussianHint};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_hermite, pairwise_sum};
use crate::signal::SampledSignal;

pub const MAX_HERMITE_ORDER: usize = 200;

/// Contributions at or below this fraction of the largest term count as
/// decayed when checking quadrature support.
pub(crate) const SUPPORT_TAIL: f64 = 1e-10;

fn check_order(n: usize) -> Result<()> {
    if n > MAX_HERMITE_ORDER {
        Err(Error::HermiteOrder { n, max: MAX_HERMITE_ORDER })
    } else {
        Ok(())
    }
}

fn check_scale(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("basis scale s = {s} must be positive")))
    }
}

/// `H_n^s(x)` via `H_{n+1} = (x/s) H_n − (n/s) H_{n−1}`.
pub fn hermite_poly(s: f64, n: usize, x: f64) -> Result<f64> {
    check_scale(s)?;
    check_order(n)?;
    Ok(hermite_poly_at(s, n, x))
}

pub(crate) fn hermite_poly_at<T>(s: f64, n: usize, x: T) -> T
where
    T: ComplexFloat<Real = f64> + Mul<f64, Output = T> + From<f64>,
{
    let mut prev = <T as From<f64>>::from(0.0);
    let mut cur = <T as From<f64>>::from(1.0);
    for k in 0..n {
        let next = cur * x * (1.0 / s) - prev * (k as f64 / s);
        prev = cur;
        cur = next;
    }
    cur
}

/// `a_{s,n} = (2s)^{−1/4} (π n!)^{−1/2} s^{n/2}`, evaluated in the log domain.
pub fn norm_constant(s: f64, n: usize) -> f64 {
    let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    (-0.25 * (2.0 * s).ln() - 0.5 * (PI.ln() + ln_fact) + 0.5 * n as f64 * s.ln()).exp()
}

/// `h_n^s(x)`.
pub fn hermite_function(s: f64, n: usize, x: f64) -> Result<f64> {
    check_scale(s)?;
    check_order(n)?;
    Ok(hermite_functions_at(s, n, x)[n])
}

/// `h_0^s(x), …, h_n^s(x)` through the normalised recurrence
/// `h_{k+1} = x/√(s(k+1))·h_k − √(k/(k+1))·h_{k−1}`, which never forms the
/// factorials or the polynomial separately.
pub fn hermite_functions_at<T>(s: f64, n: usize, x: T) -> Vec<T>
where
    T: ComplexFloat<Real = f64> + Mul<f64, Output = T> + From<f64>,
{
    let mut out = Vec::with_capacity(n + 1);
    let h0 = (x * x * (-0.25 / s)).exp() * ((2.0 * s).powf(-0.25) / PI.sqrt());
    out.push(h0);
    let mut prev = <T as From<f64>>::from(0.0);
    let mut cur = h0;
    for k in 0..n {
        let kf = k as f64;
        let next = cur * x * (1.0 / (s * (kf + 1.0)).sqrt()) - prev * (kf / (kf + 1.0)).sqrt();
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Coefficients `f_0 … f_N` of a signal in the basis `{h_n^s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermiteCoefficients {
    s: f64,
    coeffs: Vec<Complex64>,
    tail: f64,
}

impl HermiteCoefficients {
    pub fn new(s: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        check_scale(s)?;
        if coeffs.is_empty() {
            return Err(Error::Signal("empty Hermite coefficient list".into()));
        }
        check_order(coeffs.len() - 1)?;
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Signal("non-finite Hermite coefficient".into()));
        }
        let start = coeffs.len().saturating_sub(4);
        let tail = coeffs[start..].iter().map(|c| c.norm_sqr()).sum();
        Ok(Self { s, coeffs, tail })
    }

    /// Unit vector `e_n` of length `order + 1`.
    pub fn unit(s: f64, n: usize, order: usize) -> Result<Self> {
        let mut c = vec![Complex64::new(0.0, 0.0); order.max(n) + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self::new(s, c)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ |f_n|²` over the last four retained coefficients.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// `Σ |f_n|²`, the squared norm of the synthesised signal.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Value of the synthesised signal at a (possibly complex) point.
    pub fn value_at(&self, x: Complex64) -> Complex64 {
        let h = hermite_functions_at(self.s, self.order(), x);
        let terms: Vec<Complex64> = self.coeffs.iter().zip(&h).map(|(c, h)| c * h).collect();
        pairwise_sum(&terms)
    }

    fn resized(&self, order: usize) -> Result<Self> {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::new(self.s, c)
    }
}

impl EntireFunction for HermiteCoefficients {
    fn eval(&self, x: Complex64) -> Complex64 {
        self.value_at(x)
    }

    fn hint(&self) -> GaussianHint {
        GaussianHint::centered(0.25 / self.s)
    }

    fn degree(&self) -> Option<usize> {
        Some(self.order())
    }
}

/// A single basis function `h_n^s`.
#[derive(Debug, Clone, Copy)]
pub struct HermiteFunction {
    pub s: f64,
    pub n: usize,
}

impl EntireFunction for HermiteFunction {
    fn eval(&self, x: Complex64) -> Complex64 {
        hermite_functions_at(self.s, self.n, x)[self.n]
    }

    fn hint(&self) -> GaussianHint {
        GaussianHint::centered(0.25 / self.s)
    }

    fn degree(&self) -> Option<usize> {
        Some(self.n)
    }
}

/// The polynomial `H_n^s` as an integrand (no Gaussian decay of its own).
#[derive(Debug, Clone, Copy)]
pub struct HermitePolynomial {
    pub s: f64,
    pub n: usize,
}

impl EntireFunction for HermitePolynomial {
    fn eval(&self, x: Complex64) -> Complex64 {
        hermite_poly_at(self.s, self.n, x)
    }

    fn hint(&self) -> GaussianHint {
        GaussianHint::flat()
    }

    fn degree(&self) -> Option<usize> {
        Some(self.n)
    }
}

/// Shortest local wavelength of `h_n^s` near the origin.
pub fn shortest_wavelength(s: f64, n: usize) -> f64 {
    2.0 * PI * (2.0 * s).sqrt() / (2.0 * n as f64 + 1.0).sqrt()
}

/// Project a signal onto `h_0^s … h_N^s`: `f_n = ⟨h_n^s, f⟩`.
///
/// Coherent sums and Hermite representations are integrated by Gauss–Hermite
/// quadrature along a contour through the saddle of the combined Gaussian
/// envelope. Samples use the trapezoid rule on their own grid and must have at
/// least four samples per shortest wavelength of `h_N^s`.
pub fn analyze(signal: &SampledSignal, s: f64, order: usize) -> Result<HermiteCoefficients> {
    check_scale(s)?;
    check_order(order)?;
    match signal {
        SampledSignal::HermiteRep(c) if c.s() == s => c.resized(order),
        SampledSignal::Samples(samples) => {
            let limit = shortest_wavelength(s, order) / 4.0;
            let h = samples.grid().spacing();
            if h > limit {
                return Err(Error::Resolution {
                    spacing: h,
                    limit,
                    reason: format!("fewer than 4 samples per oscillation of h_{order}"),
                });
            }
            let xs = samples.grid().nodes();
            let w = samples.grid().trapezoid_weights();
            let mut acc = vec![Vec::with_capacity(xs.len()); order + 1];
            for ((&x, &wx), &f) in xs.iter().zip(&w).zip(samples.values()) {
                for (n, hn) in hermite_functions_at(s, order, x).into_iter().enumerate() {
                    acc[n].push(f * (hn * wx));
                }
            }
            let coeffs = acc.iter().map(|terms| PI.sqrt() * pairwise_sum(terms)).collect();
            HermiteCoefficients::new(s, coeffs)
        }
        SampledSignal::CoherentSum(_) | SampledSignal::HermiteRep(_) => {
            let src_order = match signal {
                SampledSignal::HermiteRep(c) => c.order(),
                _ => 0,
            };
            let gh = gauss_hermite((order + src_order + 2).div_ceil(2).max(64), 1.0)?;
            let basis_hint = GaussianHint::centered(0.25 / s);
            let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
            for (weight, term) in signal.entire_terms() {
                let hint = basis_hint.combine(&term.hint());
                let values = contour_integral_many(&gh, hint, order + 1, |x| {
                    let f = term.eval(x);
                    hermite_functions_at(s, order, x).into_iter().map(|h| h * f).collect()
                })?;
                let exact = term.degree().is_some();
                for (c, v) in coeffs.iter_mut().zip(values) {
                    if !exact && v.tail > SUPPORT_TAIL {
                        return Err(Error::Support { tail: v.tail, suggested_order: 2 * gh.len() });
                    }
                    *c += weight * PI.sqrt() * v.value;
                }
            }
            HermiteCoefficients::new(s, coeffs)
        }
    }
}

/// `Σ_{n ≤ N} f_n h_n^s(x)` at each point, summed in order `n = 0..N`.
pub fn synthesize(coeffs: &HermiteCoefficients, xs: &[f64]) -> Vec<Complex64> {
    xs.iter().map(|&x| coeffs.value_at(Complex64::new(x, 0.0))).collect()
}
