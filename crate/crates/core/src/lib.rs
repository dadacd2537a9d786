//! Holomorphic fractional Fourier transforms `A_t` and the Segal–Bargmann
//! family `SB_s` of one-dimensional signals.
//!
//! `A_t` maps `L²(ℝ)` onto functions on the `(x, p)` plane that are
//! holomorphic in `w_t = cos t·x + i sin t·p` up to the Gaussian factor
//! `F_t = e^{−tan t·p²/2}`. It interpolates between the signal itself
//! (`t = 0`) and, up to the phase `e^{−ipx}`, its Fourier transform
//! (`t = π/2`). With `s = tan t` it equals `SB_s` times
//! `(1 + s²)^{1/4} e^{−s p²/2}`, which is how the engine computes it.
//!
//! Signals live in `L²(ℝ, dx)` with `⟨f, g⟩ = √π ∫ f̄ g dx`.

pub mod closedform;
pub mod contour;
pub mod engine;
pub mod error;
pub mod field;
pub mod geometry;
pub mod grid;
pub mod hermite;
pub mod param;
pub mod quadrature;
pub mod signal;

pub use closedform::CoherentImageForm;
pub use error::{Error, Result};
pub use field::{Gauge, PlaneField};
pub use geometry::CoherentLabel;
pub use grid::{LineGrid, PlaneGrid};
pub use hermite::HermiteCoefficients;
pub use param::{Regime, TransformParameter};
pub use signal::{LineSamples, SampledSignal};
