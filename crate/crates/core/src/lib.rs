//! Pseudo-spectral solver for the anisotropic surface quasi-geostrophic
//! equation on the periodic box
//!
//! ```text
//! ∂ₜθ + u·∇θ + μ|∂₁|^{2α}θ + ν|∂₂|^{2β}θ = 0,   u = R^⊥θ = (−R₂θ, R₁θ),
//! ```
//!
//! together with numerical checks of the functional inequalities and
//! energy estimates that control its solutions.
//!
//! Fourier coefficients follow `c(k) = (1/(n₁n₂)) Σ_x f(x) e^{−ik·x}`, so
//! `cos(x₁)` has `c(±1, 0) = 1/2`, and physical wavenumbers are
//! `ξ = (2π/L)k`.

// Range checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod init;
pub mod io;
pub mod norms;
pub mod params;
pub mod spectral;

pub use error::{Error, Result};
pub use params::{AqgParams, Regime};
pub use spectral::{GridSpec, SpectralField};
