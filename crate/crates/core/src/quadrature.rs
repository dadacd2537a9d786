//! Fixed quadrature rules: Gauss–Hermite for Gaussian envelopes, trapezoid
//! for sampled data and truncated improper integrals.
//!
//! All sums are pairwise with a fixed split, so a rule applied to the same
//! integrand always produces the same bits, whether the integrand values were
//! computed serially or in parallel.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::LineGrid;

pub const MAX_GAUSS_HERMITE_ORDER: usize = 512;

const PAIRWISE_BLOCK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RuleKind {
    /// Weight `exp(−x²/scale²)`.
    GaussHermite {
        order: usize,
        scale: f64,
    },
    Trapezoid {
        a: f64,
        b: f64,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `weights[i]·exp(nodes[i]²/scale²)`: the rule for a plain `∫ g dx`.
    /// Identical to `weights` for trapezoid rules.
    scaled_weights: Vec<f64>,
    kind: RuleKind,
}

impl QuadratureRule1D {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights against the rule's weight function. For high Gauss–Hermite
    /// orders the outermost weights underflow to zero; use
    /// [`scaled_weights`](Self::scaled_weights) for unweighted integrands.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same rule for weight `exp(−x²/scale²)`.
    pub fn rescaled(&self, scale: f64) -> Self {
        match self.kind {
            RuleKind::GaussHermite { order, scale: old } => {
                let r = scale / old;
                Self {
                    nodes: self.nodes.iter().map(|x| x * r).collect(),
                    weights: self.weights.iter().map(|w| w * r).collect(),
                    scaled_weights: self.scaled_weights.iter().map(|w| w * r).collect(),
                    kind: RuleKind::GaussHermite { order, scale },
                }
            }
            RuleKind::Trapezoid { .. } => self.clone(),
        }
    }
}

/// Gauss–Hermite nodes and weights for `exp(−x²/scale²)`.
///
/// Nodes come from the eigenvalues of the symmetric Jacobi matrix and are
/// then polished by Newton steps on the orthonormal Hermite functions; the
/// weights use the Christoffel sum over the same functions, which never
/// overflows because the Gaussian is carried inside the recurrence.
pub fn gauss_hermite(order: usize, scale: f64) -> Result<QuadratureRule1D> {
    if order == 0 || order > MAX_GAUSS_HERMITE_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_GAUSS_HERMITE_ORDER });
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Parameter(format!("Gauss–Hermite scale {scale} must be positive")));
    }
    let n = order;
    let jacobi =
        DMatrix::from_fn(n, n, |i, j| if i + 1 == j || j + 1 == i { (i.max(j) as f64 / 2.0).sqrt() } else { 0.0 });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    for x in nodes.iter_mut() {
        for _ in 0..6 {
            let (phi, phi_prev) = hermite_function_pair(n, *x);
            let dphi = (2.0 * n as f64).sqrt() * phi_prev - *x * phi;
            let step = phi / dphi;
            *x -= step;
            if step.abs() < 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
    }
    // enforce exact mirror symmetry
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    let scaled: Vec<f64> = nodes.iter().map(|&x| 1.0 / christoffel_sum(n, x)).collect();
    let weights: Vec<f64> = nodes.iter().zip(&scaled).map(|(x, w)| w * (-x * x).exp()).collect();

    let unit =
        QuadratureRule1D { nodes, weights, scaled_weights: scaled, kind: RuleKind::GaussHermite { order, scale: 1.0 } };
    Ok(if scale == 1.0 { unit } else { unit.rescaled(scale) })
}

/// Composite trapezoid rule on `[a, b]` with `n ≥ 2` nodes.
pub fn trapezoid(a: f64, b: f64, n: usize) -> Result<QuadratureRule1D> {
    let grid = LineGrid::new(a, b, n)?;
    Ok(trapezoid_on(&grid))
}

pub fn trapezoid_on(grid: &LineGrid) -> QuadratureRule1D {
    let weights = grid.trapezoid_weights();
    QuadratureRule1D {
        nodes: grid.nodes(),
        scaled_weights: weights.clone(),
        weights,
        kind: RuleKind::Trapezoid { a: grid.min(), b: grid.max(), n: grid.len() },
    }
}

/// Orthonormal Hermite functions `(φ_n(x), φ_{n−1}(x))`.
fn hermite_function_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let next = (2.0 / (k + 1) as f64).sqrt() * x * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

fn christoffel_sum(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut acc = cur * cur;
    for k in 0..n - 1 {
        let next = (2.0 / (k + 1) as f64).sqrt() * x * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
        acc += cur * cur;
    }
    acc
}

/// Sum with a fixed binary split; the result depends only on the slice.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= PAIRWISE_BLOCK {
        values.iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

pub fn pairwise_sum_real(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum_real(&values[..mid]) + pairwise_sum_real(&values[mid..])
    }
}

fn check_finite(node: f64, v: Complex64) -> Result<()> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(())
    } else {
        Err(Error::IntegrationDomain { node, value: v.to_string() })
    }
}

/// `Σ wᵢ f(xᵢ)`: the integral of `f` against the rule's weight function.
pub fn integrate_1d<F>(rule: &QuadratureRule1D, f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    weighted_sum(&rule.nodes, &rule.weights, f)
}

/// `∫ g dx` for an integrand that already contains its Gaussian decay.
pub fn integrate_1d_unweighted<F>(rule: &QuadratureRule1D, g: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    weighted_sum(&rule.nodes, &rule.scaled_weights, g)
}

fn weighted_sum<F>(nodes: &[f64], weights: &[f64], f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut terms = Vec::with_capacity(nodes.len());
    for (&x, &w) in nodes.iter().zip(weights) {
        let v = f(x);
        check_finite(x, v)?;
        terms.push(v * w);
    }
    Ok(pairwise_sum(&terms))
}

/// Tensor product of two 1-D rules; node `(i, j)` has weight `wᵢ·wⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule2D {
    pub x: QuadratureRule1D,
    pub p: QuadratureRule1D,
}

impl QuadratureRule2D {
    pub fn new(x: QuadratureRule1D, p: QuadratureRule1D) -> Self {
        Self { x, p }
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.x.weights[i] * self.p.weights[j]
    }
}

/// Tensor-product integral, x-major. Integrand values may be computed in
/// parallel; the reduction order is fixed.
pub fn integrate_2d<F>(rule: &QuadratureRule2D, f: F) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let np = rule.p.len();
    let terms: Vec<Result<Complex64>> = (0..rule.x.len() * np)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / np, k % np);
            let (x, p) = (rule.x.nodes[i], rule.p.nodes[j]);
            let v = f(x, p);
            check_finite(if x.abs() >= p.abs() { x } else { p }, v)?;
            Ok(v * rule.weight(i, j))
        })
        .collect();
    let terms: Vec<Complex64> = terms.into_iter().collect::<Result<_>>()?;
    Ok(pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(gauss_hermite(0, 1.0), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(gauss_hermite(513, 1.0), Err(Error::OrderOutOfRange { .. })));
        assert!(gauss_hermite(4, 0.0).is_err());
    }

    #[test]
    fn one_point_rule() {
        let r = gauss_hermite(1, 1.0).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert!((r.weights()[0] - PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule_solves_moments() {
        // w + w = √π and 2 w a² = √π/2 give a² = 1/2
        let r = gauss_hermite(2, 1.0).unwrap();
        assert!((r.nodes()[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.nodes()[0], -r.nodes()[1]);
        assert!((r.weights()[0] - PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(r.weights()[0], r.weights()[1]);
    }

    #[test]
    fn sixth_moment() {
        let r = gauss_hermite(8, 1.0).unwrap();
        let v = integrate_1d(&r, |x| c(x.powi(6))).unwrap();
        // Γ(7/2) = (5/2)(3/2)(1/2)√π
        assert!((v.re - 15.0 * PI.sqrt() / 8.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_normalisation() {
        for order in [1, 2, 3, 16, 64, 200, 512] {
            for scale in [0.3, 1.0, 2.5] {
                let r = gauss_hermite(order, scale).unwrap();
                let total = pairwise_sum_real(r.weights());
                let expected = scale * PI.sqrt();
                assert!(((total - expected) / expected).abs() < 1e-12, "order {order} scale {scale}");
                assert!(r.scaled_weights().iter().all(|w| *w > 0.0));
            }
        }
    }

    #[test]
    fn symmetric_nodes_odd_integrand() {
        let r = gauss_hermite(33, 1.0).unwrap();
        let v = integrate_1d(&r, c).unwrap();
        assert!(v.norm() < 1e-14);
        assert_eq!(r.nodes()[16], 0.0);
    }

    #[test]
    fn characteristic_function() {
        // ∫ e^{ix} e^{−x²} dx = √π e^{−1/4}
        let r = gauss_hermite(32, 1.0).unwrap();
        let v = integrate_1d(&r, |x| Complex64::new(0.0, x).exp()).unwrap();
        assert!((v - c(PI.sqrt() * (-0.25f64).exp())).norm() < 1e-10);
    }

    #[test]
    fn unweighted_gaussian() {
        let r = gauss_hermite(16, 1.0).unwrap();
        let v = integrate_1d(&r, |_| c(1.0)).unwrap();
        assert!((v.re - PI.sqrt()).abs() < 1e-12);
        let r = gauss_hermite(40, 2.0).unwrap();
        let v = integrate_1d_unweighted(&r, |x| c((-x * x / 3.0).exp())).unwrap();
        assert!((v.re - (3.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_finite_integrand_names_node() {
        let r = gauss_hermite(3, 1.0).unwrap();
        let err = integrate_1d(&r, |x| c(1.0 / x)).unwrap_err();
        assert!(matches!(err, Error::IntegrationDomain { node, .. } if node == 0.0));
    }

    #[test]
    fn two_dimensional_rules() {
        let g = gauss_hermite(20, 1.0).unwrap();
        let rule = QuadratureRule2D::new(g.clone(), g);
        let v = integrate_2d(&rule, |_, _| c(1.0)).unwrap();
        assert!((v.re - PI).abs() < 1e-12);
        let v = integrate_2d(&rule, |x, p| c(x * p)).unwrap();
        assert!(v.norm() < 1e-14);
        assert_eq!(rule.weight(3, 5), rule.x.weights()[3] * rule.p.weights()[5]);
    }

    #[test]
    fn deterministic() {
        let g = trapezoid(-8.0, 8.0, 129).unwrap();
        let rule = QuadratureRule2D::new(g.clone(), g);
        let f = |x: f64, p: f64| Complex64::new(0.0, x * p).exp() * (-(x * x + p * p) / 2.0).exp();
        let a = integrate_2d(&rule, f).unwrap();
        let b = integrate_2d(&rule, f).unwrap();
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
