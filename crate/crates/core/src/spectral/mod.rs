//! Discrete Fourier representation of real fields on the periodic box and
//! the exact multiplier operators acting on it.

mod fft;
mod field;
mod grid;
mod ops;

pub use field::{forward_transform, inverse_transform, SpectralField};
pub use grid::{Axis, CutoffShape, GridSpec};
pub use ops::{
    abs_grad_pow, dealiased_product, exact_product, frac_deriv, gradient, riesz, riesz_perp, spectral_cutoff,
};

pub(crate) use fft::fft2;
pub(crate) use field::inverse_transform_pair;
pub(crate) use ops::{dealiased_sum_of_products, in_cutoff};
