//! Initial data: closed-form presets and seeded random band-limited fields.
//!
//! Random fields are drawn on the integer lattice in a fixed order that
//! does not depend on the grid, so the same seed yields the same
//! trigonometric polynomial at every resolution that can represent it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::norms::{sobolev_norm, Flavor};
use crate::spectral::{Axis, GridSpec, SpectralField};

/// `amplitude · cos(k x_axis)` with integer `k`.
pub fn cosine(grid: GridSpec, axis: Axis, k: i64, amplitude: f64) -> SpectralField {
    let mut f = SpectralField::zeros(grid);
    let half = Complex64::new(amplitude / 2.0, 0.0);
    match axis {
        Axis::X1 => f.set_mode(k, 0, half),
        Axis::X2 => f.set_mode(0, k, half),
    }
    if k == 0 {
        f.coeffs_mut()[(0, 0)] = Complex64::new(amplitude, 0.0);
    }
    f
}

pub fn constant(grid: GridSpec, value: f64) -> SpectralField {
    let mut f = SpectralField::zeros(grid);
    f.coeffs_mut()[(0, 0)] = Complex64::new(value, 0.0);
    f
}

/// How coefficient amplitudes fall off with `|k|` (integer wavenumbers).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spectrum {
    /// Uniform random amplitudes for `0 < |k| ≤ band`.
    Flat,
    /// Amplitudes scaled by `(1 + |k|²)^{-p/2}`.
    Algebraic(f64),
    /// Amplitudes scaled by `exp(-|k|/e_fold)`.
    Exponential(f64),
}

/// Mean-zero random real field with modes `0 < |k| ≤ band` (integer lattice).
///
/// Each canonical half-plane mode gets `re, im ~ U(-1, 1)` times the
/// spectrum weight; its mirror receives the conjugate.
pub fn random_band_limited(grid: GridSpec, seed: u64, band: f64, spectrum: Spectrum) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(grid);
    let b = band.floor() as i64;
    for k1 in 0..=b {
        for k2 in -b..=b {
            if k1 == 0 && k2 <= 0 {
                continue;
            }
            let r2 = (k1 * k1 + k2 * k2) as f64;
            if r2 > band * band {
                continue;
            }
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = rng.random_range(-1.0..1.0);
            let r = r2.sqrt();
            let w = match spectrum {
                Spectrum::Flat => 1.0,
                Spectrum::Algebraic(p) => (1.0 + r2).powf(-p / 2.0),
                Spectrum::Exponential(e) => (-r / e).exp(),
            };
            let (n1, n2) = grid.shape();
            if 2 * k1.unsigned_abs() as usize >= n1 || 2 * k2.unsigned_abs() as usize >= n2 {
                continue;
            }
            f.set_mode(k1, k2, Complex64::new(re * w, im * w));
        }
    }
    f
}

/// [`random_band_limited`] rescaled to a prescribed inhomogeneous `H^s` norm.
pub fn normalized(f: SpectralField, s: f64, target: f64) -> SpectralField {
    let n = sobolev_norm(&f, s, Flavor::Inhomogeneous, None);
    if n == 0.0 {
        f
    } else {
        f.scaled(target / n)
    }
}

/// Smooth random data with modes `0 < |k| ≤ band` and unit-free amplitudes
/// normalized to `‖θ⁰‖_{H^s} = target`.
pub fn random_smooth(grid: GridSpec, seed: u64, band: f64, s: f64, target: f64) -> SpectralField {
    normalized(random_band_limited(grid, seed, band, Spectrum::Flat), s, target)
}
