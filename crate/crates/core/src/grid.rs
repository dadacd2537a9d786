use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid on a closed interval, including both end points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineGrid {
    min: f64,
    max: f64,
    n: usize,
}

impl LineGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::Grid(format!("non-finite bounds [{min}, {max}]")));
        }
        if max <= min {
            return Err(Error::Grid(format!("max {max} must exceed min {min}")));
        }
        if n < 2 {
            return Err(Error::Grid(format!("need at least 2 nodes, got {n}")));
        }
        Ok(Self { min, max, n })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        if i + 1 == self.n {
            self.max
        } else {
            self.min + (self.max - self.min) * (i as f64) / ((self.n - 1) as f64)
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Trapezoid weights for the nodes.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.n];
        w[0] = 0.5 * h;
        w[self.n - 1] = 0.5 * h;
        w
    }
}

/// Uniform rectangular grid on the (x, p) plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneGrid {
    pub x: LineGrid,
    pub p: LineGrid,
}

impl PlaneGrid {
    pub fn new((x_min, x_max, n_x): (f64, f64, usize), (p_min, p_max, n_p): (f64, f64, usize)) -> Result<Self> {
        Ok(Self { x: LineGrid::new(x_min, x_max, n_x)?, p: LineGrid::new(p_min, p_max, n_p)? })
    }

    /// Square grid `[-half, half]²` with `n` nodes per axis.
    pub fn square(half: f64, n: usize) -> Result<Self> {
        Self::new((-half, half, n), (-half, half, n))
    }

    /// `[−8, 8]²` with 257 × 257 nodes.
    pub fn default_verification() -> Self {
        Self::square(8.0, 257).expect("static grid")
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index of node `(i, j)`; x-major, p inner.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.p.len() + j
    }

    pub fn coords(&self, k: usize) -> (f64, f64) {
        let np = self.p.len();
        (self.x.node(k / np), self.p.node(k % np))
    }

    /// All node coordinates in storage order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        (0..self.len()).map(|k| self.coords(k)).collect()
    }

    pub fn is_boundary(&self, k: usize) -> bool {
        let np = self.p.len();
        let (i, j) = (k / np, k % np);
        i == 0 || j == 0 || i + 1 == self.x.len() || j + 1 == np
    }
}
