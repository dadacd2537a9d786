//! Numerical transforms of arbitrary signals.
//!
//! [`kernel`] and [`spectral`] compute `SB_s f` at complex points; [`transform`]
//! turns those into plane fields of `SB_s f` and `A_t f` and handles the
//! endpoints; [`inverse`] inverts `SB_s`; [`norms`] measures the results.

pub mod inverse;
pub mod kernel;
pub mod norms;
pub mod spectral;
pub mod transform;

pub use inverse::{sb_inverse, sb_inverse_fn, InverseResult};
pub use kernel::{sb_kernel_apply, sb_kernel_apply_entire, sb_kernel_apply_with, KernelOptions, SbNormalization};
pub use norms::{
    inner_hs, inner_ht, inner_l2, norm_hs, norm_ht, norm_l2, second_moments, unitarity_report, SecondMoments,
    UnitarityReport, UnitaritySummary,
};
pub use spectral::{basis_image_audit, build_basis_images, sb_spectral_apply, BasisImageCache, Provenance};
pub use transform::{
    endpoint_apply, fourier_transform, hfrft_apply, hfrft_apply_with, sb_apply, EngineOptions, Method,
};
