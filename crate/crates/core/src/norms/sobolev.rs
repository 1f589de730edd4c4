use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{Axis, GridSpec, SpectralField};

/// Sobolev weight family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `(1 + |ξ|²)^s`
    Inhomogeneous,
    /// `|ξ|^{2s}`, skipping `k = 0`
    Homogeneous,
}

/// `‖f‖_{L^p}` by the rectangle rule on the collocation grid; `p = ∞` is
/// the grid maximum of `|f|`.
pub fn lebesgue_norm(f: &SpectralField, p: f64) -> Result<f64> {
    if !(p >= 2.0) {
        return Err(Error::invalid(format!("L^p exponent must lie in [2, ∞] (got {p})")));
    }
    Ok(lp_of_samples(f.grid(), &f.to_physical(), p))
}

/// Collocation `L^p` norm of physical samples, any `p ≥ 1` or `∞`.
pub(crate) fn lp_of_samples(grid: &GridSpec, values: &Array2<f64>, p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    let sum: f64 = if p == 2.0 {
        values.iter().map(|v| v * v).sum()
    } else if p == 4.0 {
        values.iter().map(|v| (v * v) * (v * v)).sum()
    } else {
        values.iter().map(|v| v.abs().powf(p)).sum()
    };
    (grid.cell_area() * sum).powf(1.0 / p)
}

/// Squared Sobolev norm by Parseval, with an optional directional
/// pre-multiplier `|ξ_axis|^γ`.
///
/// The directional multiplier annihilates modes with `ξ_axis = 0` for every
/// `γ`, so compound norms like `‖|∂₁|^α θ‖_{H^s}` never see those modes.
pub fn sobolev_norm_sq(f: &SpectralField, s: f64, flavor: Flavor, pre_op: Option<(Axis, f64)>) -> f64 {
    let grid = f.grid();
    let mut sum = 0.0;
    for ((i1, i2), c) in f.coeffs().indexed_iter() {
        let a = c.norm_sqr();
        if a == 0.0 {
            continue;
        }
        let (x1, x2) = grid.xi(i1, i2);
        let mut w = 1.0;
        if let Some((axis, gamma)) = pre_op {
            let x = match axis {
                Axis::X1 => x1,
                Axis::X2 => x2,
            }
            .abs();
            if x == 0.0 {
                continue;
            }
            w *= (x * x).powf(gamma);
        }
        let r2 = x1 * x1 + x2 * x2;
        match flavor {
            Flavor::Inhomogeneous => {
                if s != 0.0 {
                    w *= (1.0 + r2).powf(s);
                }
            }
            Flavor::Homogeneous => {
                if r2 == 0.0 {
                    continue;
                }
                if s != 0.0 {
                    w *= r2.powf(s);
                }
            }
        }
        sum += w * a;
    }
    grid.area() * sum
}

pub fn sobolev_norm(f: &SpectralField, s: f64, flavor: Flavor, pre_op: Option<(Axis, f64)>) -> f64 {
    sobolev_norm_sq(f, s, flavor, pre_op).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::{constant, cosine};
    use std::f64::consts::PI;

    #[test]
    fn cosine_lebesgue_norms() {
        let g = GridSpec::square(32).unwrap();
        let c = cosine(g, Axis::X1, 1, 1.0);
        assert!((lebesgue_norm(&c, 2.0).unwrap() - 2f64.sqrt() * PI).abs() < 1e-13);
        assert!((lebesgue_norm(&c, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        // ∫cos⁴ over the box = (3/8)(2π)²
        let l4 = lebesgue_norm(&c, 4.0).unwrap();
        assert!((l4.powi(4) - 0.375 * 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn constant_lebesgue_norm() {
        let g = GridSpec::new(16, 8, 3.0, 2.0 / 3.0, crate::spectral::CutoffShape::Ball).unwrap();
        let f = constant(g, -2.5);
        for p in [2.0, 3.0, 4.0, 7.5] {
            let expected = 2.5 * 3f64.powf(2.0 / p);
            assert!((lebesgue_norm(&f, p).unwrap() - expected).abs() < 1e-13 * expected);
        }
    }

    #[test]
    fn lebesgue_rejects_small_exponent() {
        let g = GridSpec::square(8).unwrap();
        assert!(lebesgue_norm(&SpectralField::zeros(g), 1.5).is_err());
    }

    #[test]
    fn sobolev_closed_forms() {
        let g = GridSpec::square(32).unwrap();
        let c1 = cosine(g, Axis::X1, 1, 1.0);
        let l2 = 2f64.sqrt() * PI;
        assert!((sobolev_norm(&c1, 0.0, Flavor::Inhomogeneous, None) - l2).abs() < 1e-13);
        for s in [-1.0, 0.3, 2.5] {
            assert!((sobolev_norm(&c1, s, Flavor::Homogeneous, None) - l2).abs() < 1e-13);
        }
        let c2 = cosine(g, Axis::X1, 2, 1.0);
        assert!((sobolev_norm(&c2, 1.0, Flavor::Homogeneous, None) - 2.0 * l2).abs() < 1e-13);
        // |∂₂|^γ kills a pure x₁ mode
        assert_eq!(sobolev_norm(&c2, 1.0, Flavor::Inhomogeneous, Some((Axis::X2, 0.5))), 0.0);
    }
}
