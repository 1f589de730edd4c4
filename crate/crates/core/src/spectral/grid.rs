use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of a spectral truncation region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutoffShape {
    Ball,
    Square,
}

impl fmt::Display for CutoffShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutoffShape::Ball => f.write_str("ball"),
            CutoffShape::Square => f.write_str("square"),
        }
    }
}

impl FromStr for CutoffShape {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ball" => Ok(CutoffShape::Ball),
            "square" => Ok(CutoffShape::Square),
            other => Err(format!("unknown cutoff shape '{other}' (expected ball|square)")),
        }
    }
}

/// Coordinate direction on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X1,
    X2,
}

impl Axis {
    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            1 => Some(Axis::X1),
            2 => Some(Axis::X2),
            _ => None,
        }
    }
}

/// Periodic box `[0, L)²` sampled on an `n1 × n2` collocation grid.
///
/// Array index `j` along an axis of length `n` carries the integer
/// wavenumber `j` for `j < n/2` and `j - n` otherwise, so wavenumbers lie
/// in `[-n/2, n/2)`. Physical wavenumbers are the integer ones scaled by
/// `2π/L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    n1: usize,
    n2: usize,
    box_size: f64,
    dealias_fraction: f64,
    cutoff_shape: CutoffShape,
}

impl GridSpec {
    pub const DEFAULT_DEALIAS: f64 = 2.0 / 3.0;

    pub fn new(
        n1: usize,
        n2: usize,
        box_size: f64,
        dealias_fraction: f64,
        cutoff_shape: CutoffShape,
    ) -> Result<Self> {
        let mut problems = Vec::new();
        for (name, n) in [("n1", n1), ("n2", n2)] {
            if n < 4 || n % 2 != 0 {
                problems.push(format!("{name} must be an even integer >= 4 (got {n})"));
            }
        }
        if !(box_size.is_finite() && box_size > 0.0) {
            problems.push(format!("box_size must be positive (got {box_size})"));
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            problems.push(format!("dealias_fraction outside (0,1] (got {dealias_fraction})"));
        }
        if !problems.is_empty() {
            return Err(Error::InvalidParameter(problems.join("; ")));
        }
        Ok(Self {
            n1,
            n2,
            box_size,
            dealias_fraction,
            cutoff_shape,
        })
    }

    /// `n × n` grid on the `2π` box with the 2/3 rule and a ball mask.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n, 2.0 * PI, Self::DEFAULT_DEALIAS, CutoffShape::Ball)
    }

    pub fn with_dealias_fraction(self, fraction: f64) -> Result<Self> {
        Self::new(self.n1, self.n2, self.box_size, fraction, self.cutoff_shape)
    }

    pub fn with_cutoff_shape(mut self, shape: CutoffShape) -> Self {
        self.cutoff_shape = shape;
        self
    }

    /// Same box and dealias policy, different resolution.
    pub fn resized(&self, n1: usize, n2: usize) -> Result<Self> {
        Self::new(n1, n2, self.box_size, self.dealias_fraction, self.cutoff_shape)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn box_size(&self) -> f64 {
        self.box_size
    }

    pub fn dealias_fraction(&self) -> f64 {
        self.dealias_fraction
    }

    pub fn cutoff_shape(&self) -> CutoffShape {
        self.cutoff_shape
    }

    /// `2π/L`, the physical size of one integer wavenumber.
    pub fn k_unit(&self) -> f64 {
        2.0 * PI / self.box_size
    }

    pub fn area(&self) -> f64 {
        self.box_size * self.box_size
    }

    pub fn cell_area(&self) -> f64 {
        self.area() / (self.n1 * self.n2) as f64
    }

    /// Smallest grid spacing, used by CFL control.
    pub fn min_spacing(&self) -> f64 {
        self.box_size / self.n1.max(self.n2) as f64
    }

    pub fn coordinate(&self, axis: Axis, j: usize) -> f64 {
        let n = match axis {
            Axis::X1 => self.n1,
            Axis::X2 => self.n2,
        };
        self.box_size * j as f64 / n as f64
    }

    /// Integer wavenumber pair at array position `(i1, i2)`.
    #[inline]
    pub fn wavenumber(&self, i1: usize, i2: usize) -> (i64, i64) {
        (signed_index(i1, self.n1), signed_index(i2, self.n2))
    }

    /// Physical wavenumber `ξ` at array position `(i1, i2)`.
    #[inline]
    pub fn xi(&self, i1: usize, i2: usize) -> (f64, f64) {
        let (k1, k2) = self.wavenumber(i1, i2);
        let unit = self.k_unit();
        (k1 as f64 * unit, k2 as f64 * unit)
    }

    /// Array position of integer wavenumber `(k1, k2)`, if it is on the grid.
    pub fn index_of(&self, k1: i64, k2: i64) -> Option<(usize, usize)> {
        Some((unsigned_index(k1, self.n1)?, unsigned_index(k2, self.n2)?))
    }

    /// Largest retained |k_i| per axis: the biggest integer strictly below
    /// `dealias_fraction · n_i / 2`.
    pub fn dealias_limits(&self) -> (i64, i64) {
        let lim = |n: usize| {
            let r = self.dealias_fraction * n as f64 / 2.0;
            (r.ceil() as i64 - 1).max(0)
        };
        (lim(self.n1), lim(self.n2))
    }

    pub fn in_dealias_mask(&self, k1: i64, k2: i64) -> bool {
        let r1 = self.dealias_fraction * self.n1 as f64 / 2.0;
        let r2 = self.dealias_fraction * self.n2 as f64 / 2.0;
        let (k1f, k2f) = (k1 as f64, k2 as f64);
        match self.cutoff_shape {
            CutoffShape::Square => k1f.abs() < r1 && k2f.abs() < r2,
            CutoffShape::Ball => {
                let (l1, l2) = self.dealias_limits();
                k1.abs() <= l1
                    && k2.abs() <= l2
                    && (k1f / r1).powi(2) + (k2f / r2).powi(2) < 1.0
            }
        }
    }

    pub fn dealias_mask(&self) -> Array2<bool> {
        Array2::from_shape_fn(self.shape(), |(i1, i2)| {
            let (k1, k2) = self.wavenumber(i1, i2);
            self.in_dealias_mask(k1, k2)
        })
    }

    /// True when pointwise products of masked fields alias only onto
    /// discarded modes (the `3K < n` condition on both axes).
    pub fn mask_product_is_exact(&self) -> bool {
        let (l1, l2) = self.dealias_limits();
        3 * l1 < self.n1 as i64 && 3 * l2 < self.n2 as i64
    }

    pub(crate) fn same_discretization(&self, other: &GridSpec) -> bool {
        self == other
    }
}

#[inline]
fn signed_index(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

#[inline]
fn unsigned_index(k: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if k < -half || k >= half {
        None
    } else if k >= 0 {
        Some(k as usize)
    } else {
        Some((k + n as i64) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_tiny_grids() {
        assert!(GridSpec::new(6, 5, 1.0, 0.5, CutoffShape::Ball).is_err());
        assert!(GridSpec::new(2, 8, 1.0, 0.5, CutoffShape::Ball).is_err());
        assert!(GridSpec::new(8, 8, 1.0, 0.0, CutoffShape::Ball).is_err());
        assert!(GridSpec::new(8, 8, -1.0, 0.5, CutoffShape::Ball).is_err());
        assert!(GridSpec::new(8, 8, 1.0, 1.0, CutoffShape::Square).is_ok());
    }

    #[test]
    fn wavenumber_layout() {
        let g = GridSpec::square(8).unwrap();
        let ks: Vec<i64> = (0..8).map(|j| g.wavenumber(j, 0).0).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for k in -4..4 {
            let (i, _) = g.index_of(k, 0).unwrap();
            assert_eq!(g.wavenumber(i, 0).0, k);
        }
        assert!(g.index_of(4, 0).is_none());
    }

    #[test]
    fn two_thirds_limits() {
        assert_eq!(GridSpec::square(64).unwrap().dealias_limits(), (21, 21));
        assert_eq!(GridSpec::square(48).unwrap().dealias_limits(), (15, 15));
        let full = GridSpec::square(64).unwrap().with_dealias_fraction(1.0).unwrap();
        assert_eq!(full.dealias_limits(), (31, 31));
        assert!(GridSpec::square(64).unwrap().mask_product_is_exact());
        assert!(!full.mask_product_is_exact());
    }
}
