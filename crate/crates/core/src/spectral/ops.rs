//! Fourier multipliers and products on [`SpectralField`]s.

use ndarray::{Array2, Zip};
use num_complex::Complex64;

use super::field::{forward_transform, inverse_transform, SpectralField};
use super::grid::{Axis, CutoffShape, GridSpec};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
fn component(axis: Axis, xi1: f64, xi2: f64) -> f64 {
    match axis {
        Axis::X1 => xi1,
        Axis::X2 => xi2,
    }
}

/// `|∂_axis|^γ f`: multiplies `c(k)` by `|ξ_axis|^γ`.
pub fn frac_deriv(f: &SpectralField, axis: Axis, gamma: f64) -> Result<SpectralField> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!(
            "fractional derivative order must be positive (got {gamma})"
        )));
    }
    Ok(f.apply_multiplier(|x1, x2| {
        let x = component(axis, x1, x2).abs();
        Complex64::new(if x == 0.0 { 0.0 } else { x.powf(gamma) }, 0.0)
    }))
}

/// `|∇|^s f`: multiplies `c(k)` by `|ξ|^s`, zero at the origin.
pub fn abs_grad_pow(f: &SpectralField, s: f64) -> SpectralField {
    f.apply_multiplier(|x1, x2| {
        let r = x1.hypot(x2);
        Complex64::new(if r == 0.0 { 0.0 } else { r.powf(s) }, 0.0)
    })
}

/// `∂_axis f`.
pub fn gradient(f: &SpectralField, axis: Axis) -> SpectralField {
    f.apply_multiplier(|x1, x2| I * component(axis, x1, x2))
}

/// Riesz transform `R_axis = ∂_axis (-Δ)^{-1/2}`, symbol `i ξ_axis / |ξ|`,
/// zero at the origin.
pub fn riesz(f: &SpectralField, axis: Axis) -> SpectralField {
    f.apply_multiplier(|x1, x2| {
        let r = x1.hypot(x2);
        if r == 0.0 {
            Complex64::default()
        } else {
            I * (component(axis, x1, x2) / r)
        }
    })
}

/// Velocity `u = R^⊥θ = (-R₂θ, R₁θ)`.
pub fn riesz_perp(theta: &SpectralField) -> (SpectralField, SpectralField) {
    let u1 = theta.apply_multiplier(|x1, x2| {
        let r = x1.hypot(x2);
        if r == 0.0 {
            Complex64::default()
        } else {
            -I * (x2 / r)
        }
    });
    let u2 = riesz(theta, Axis::X1);
    (u1, u2)
}

/// Projection `J_n` onto `|ξ| ≤ n` (ball) or `max |ξ_i| ≤ n` (square),
/// following the grid's cutoff shape.
pub fn spectral_cutoff(f: &SpectralField, radius: f64) -> Result<SpectralField> {
    if !(radius > 0.0) {
        return Err(Error::invalid(format!(
            "cutoff radius must be positive (got {radius})"
        )));
    }
    let grid = *f.grid();
    let unit = grid.k_unit();
    let shape = grid.cutoff_shape();
    Ok(f.masked(|k1, k2| in_cutoff(shape, k1 as f64 * unit, k2 as f64 * unit, radius)))
}

#[inline]
pub(crate) fn in_cutoff(shape: CutoffShape, xi1: f64, xi2: f64, radius: f64) -> bool {
    match shape {
        CutoffShape::Ball => xi1 * xi1 + xi2 * xi2 <= radius * radius,
        CutoffShape::Square => xi1.abs() <= radius && xi2.abs() <= radius,
    }
}

/// Product of two fields projected onto the dealias mask.
///
/// Both inputs are first restricted to the mask; the result is the exact
/// convolution of those trigonometric polynomials on every retained mode.
pub fn dealiased_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.ensure_same_grid(g)?;
    Ok(dealiased_sum_of_products(&[(f, g)]))
}

/// `Σ_j f_j g_j` with one forward transform, projected onto the dealias mask.
pub(crate) fn dealiased_sum_of_products(pairs: &[(&SpectralField, &SpectralField)]) -> SpectralField {
    let grid = *pairs[0].0.grid();
    let work = product_grid(&grid);
    let mut acc = Array2::<f64>::zeros(work.shape());
    for (f, g) in pairs {
        let pf = inverse_transform(&f.dealiased().resampled(work));
        let pg = inverse_transform(&g.dealiased().resampled(work));
        Zip::from(&mut acc)
            .and(&pf)
            .and(&pg)
            .for_each(|a, &x, &y| *a += x * y);
    }
    let out = forward_transform(work, &acc).expect("work grid shape");
    let out = if work == grid { out } else { out.resampled(grid) };
    out.dealiased()
}

/// Grid on which products of masked fields are alias-free on retained modes.
fn product_grid(grid: &GridSpec) -> GridSpec {
    if grid.mask_product_is_exact() {
        return *grid;
    }
    let (l1, l2) = grid.dealias_limits();
    let size = |l: i64, n: usize| {
        let m = (3 * l + 1) as usize;
        (m + m % 2).max(n)
    };
    grid.resized(size(l1, grid.n1()), size(l2, grid.n2()))
        .expect("enlarged grid stays valid")
}

/// Full product `f g` on the doubled grid, with no truncation.
///
/// Exact whenever the inputs carry no Nyquist content; the returned field
/// lives on `(2 n1, 2 n2)`.
pub fn exact_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.ensure_same_grid(g)?;
    let grid = f.grid();
    let big = grid.resized(2 * grid.n1(), 2 * grid.n2())?;
    let pf = inverse_transform(&f.resampled(big));
    let pg = inverse_transform(&g.resampled(big));
    forward_transform(big, &(&pf * &pg))
}
