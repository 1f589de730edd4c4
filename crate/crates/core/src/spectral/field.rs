use ndarray::{Array2, Zip};
use num_complex::Complex64;
use rustfft::FftDirection;

use super::fft::fft2;
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Fourier coefficients of a real scalar field on a periodic grid.
///
/// Coefficients use the trigonometric-polynomial normalization
/// `f(x) = Σ_k c(k) e^{i k·x}`, so `cos(x₁)` has `c(±1, 0) = 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Array2<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            coeffs: Array2::zeros(grid.shape()),
        }
    }

    pub fn from_coeffs(grid: GridSpec, coeffs: Array2<Complex64>) -> Result<Self> {
        check_shape(&grid, coeffs.dim())?;
        Ok(Self {
            grid,
            coeffs: coeffs.as_standard_layout().into_owned(),
        })
    }

    /// Builds a field from a closure over integer wavenumbers.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let coeffs = Array2::from_shape_fn(grid.shape(), |(i1, i2)| {
            let (k1, k2) = grid.wavenumber(i1, i2);
            f(k1, k2)
        });
        Self { grid, coeffs }
    }

    pub fn from_physical(grid: GridSpec, physical: &Array2<f64>) -> Result<Self> {
        forward_transform(grid, physical)
    }

    pub fn to_physical(&self) -> Array2<f64> {
        inverse_transform(self)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Array2<Complex64> {
        self.coeffs
    }

    /// Coefficient at integer wavenumber `(k1, k2)`; zero off the grid.
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        self.grid
            .index_of(k1, k2)
            .map(|ix| self.coeffs[ix])
            .unwrap_or_default()
    }

    /// Sets `c(k) = value` and `c(-k) = conj(value)`.
    pub fn set_mode(&mut self, k1: i64, k2: i64, value: Complex64) {
        if let Some(ix) = self.grid.index_of(k1, k2) {
            self.coeffs[ix] = value;
        }
        if let Some(ix) = self.grid.index_of(-k1, -k2) {
            self.coeffs[ix] = value.conj();
        }
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[(0, 0)]
    }

    /// `max_k |c(-k) - conj(c(k))|` over modes whose mirror is on the grid.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for ((i1, i2), c) in self.coeffs.indexed_iter() {
            let (k1, k2) = self.grid.wavenumber(i1, i2);
            if let Some(ix) = self.grid.index_of(-k1, -k2) {
                worst = worst.max((self.coeffs[ix] - c.conj()).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// `‖f‖²_{L²}` by Parseval: `L² Σ |c(k)|²`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.grid.area() * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// Real `L²` inner product `(f, g)`.
    pub fn inner(&self, other: &SpectralField) -> Result<f64> {
        self.ensure_same_grid(other)?;
        let s: f64 = Zip::from(&self.coeffs)
            .and(&other.coeffs)
            .fold(0.0, |acc, a, b| acc + (a * b.conj()).re);
        Ok(self.grid.area() * s)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: &self.coeffs * Complex64::new(factor, 0.0),
        }
    }

    pub fn add(&self, other: &SpectralField) -> Result<Self> {
        self.ensure_same_grid(other)?;
        Ok(Self {
            grid: self.grid,
            coeffs: &self.coeffs + &other.coeffs,
        })
    }

    pub fn sub(&self, other: &SpectralField) -> Result<Self> {
        self.ensure_same_grid(other)?;
        Ok(Self {
            grid: self.grid,
            coeffs: &self.coeffs - &other.coeffs,
        })
    }

    /// Multiplies every coefficient by `symbol(ξ₁, ξ₂)` (physical wavenumbers).
    pub fn apply_multiplier(&self, symbol: impl Fn(f64, f64) -> Complex64) -> Self {
        let grid = self.grid;
        let mut coeffs = self.coeffs.clone();
        for ((i1, i2), c) in coeffs.indexed_iter_mut() {
            let (x1, x2) = grid.xi(i1, i2);
            *c *= symbol(x1, x2);
        }
        Self { grid, coeffs }
    }

    /// Zeroes every coefficient where `keep(k1, k2)` is false.
    pub fn masked(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        let grid = self.grid;
        let mut coeffs = self.coeffs.clone();
        for ((i1, i2), c) in coeffs.indexed_iter_mut() {
            let (k1, k2) = grid.wavenumber(i1, i2);
            if !keep(k1, k2) {
                *c = Complex64::default();
            }
        }
        Self { grid, coeffs }
    }

    pub fn dealiased(&self) -> Self {
        let grid = self.grid;
        self.masked(|k1, k2| grid.in_dealias_mask(k1, k2))
    }

    /// The same trigonometric polynomial on another grid of the same box.
    ///
    /// Enlarging is exact: a Nyquist coefficient is split evenly between
    /// `±n/2`. Shrinking drops every mode with `|k_i| ≥ m_i/2`.
    pub fn resampled(&self, target: GridSpec) -> Self {
        let mut out = Array2::<Complex64>::zeros(target.shape());
        let (n1, n2) = self.grid.shape();
        let (m1, m2) = target.shape();
        let split = |k: i64, n: usize, m: usize| -> Vec<(i64, f64)> {
            let half = (n / 2) as i64;
            if k == -half && m > n {
                vec![(-half, 0.5), (half, 0.5)]
            } else if k.abs() < (m / 2) as i64 {
                vec![(k, 1.0)]
            } else {
                Vec::new()
            }
        };
        for ((i1, i2), c) in self.coeffs.indexed_iter() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let (k1, k2) = self.grid.wavenumber(i1, i2);
            for (q1, w1) in split(k1, n1, m1) {
                for &(q2, w2) in &split(k2, n2, m2) {
                    if let Some(ix) = target.index_of(q1, q2) {
                        out[ix] += c * (w1 * w2);
                    }
                }
            }
        }
        Self {
            grid: target,
            coeffs: out,
        }
    }

    pub(crate) fn ensure_same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid.same_discretization(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Forces exact Hermitian symmetry by averaging each mode with its mirror.
    pub(crate) fn symmetrize(&mut self) {
        let (n1, n2) = self.grid.shape();
        let c = &mut self.coeffs;
        // Nyquist rows have no mirror on the grid and are left alone.
        for i1 in 0..n1 {
            if 2 * i1 == n1 {
                continue;
            }
            let j1 = (n1 - i1) % n1;
            for i2 in 0..n2 {
                if 2 * i2 == n2 {
                    continue;
                }
                let j2 = (n2 - i2) % n2;
                if (j1, j2) < (i1, i2) {
                    continue;
                }
                let avg = (c[(i1, i2)] + c[(j1, j2)].conj()) * 0.5;
                c[(i1, i2)] = avg;
                c[(j1, j2)] = avg.conj();
            }
        }
    }
}

fn check_shape(grid: &GridSpec, found: (usize, usize)) -> Result<()> {
    if grid.shape() != found {
        return Err(Error::DimensionMismatch {
            expected: grid.shape(),
            found,
        });
    }
    Ok(())
}

/// Physical samples → normalized Fourier coefficients.
pub fn forward_transform(grid: GridSpec, physical: &Array2<f64>) -> Result<SpectralField> {
    check_shape(&grid, physical.dim())?;
    let mut data = physical.mapv(|v| Complex64::new(v, 0.0));
    fft2(&mut data, FftDirection::Forward);
    let scale = 1.0 / (grid.n1() * grid.n2()) as f64;
    data.mapv_inplace(|c| c * scale);
    let mut field = SpectralField { grid, coeffs: data };
    field.symmetrize();
    Ok(field)
}

/// Two real fields from one complex transform: the samples of `a` and `b`
/// are the real and imaginary parts of the inverse transform of `a + i b`.
/// Both coefficient arrays must be Hermitian with no Nyquist content.
pub(crate) fn inverse_transform_pair(a: &Array2<Complex64>, b: &Array2<Complex64>) -> (Array2<f64>, Array2<f64>) {
    let i = Complex64::new(0.0, 1.0);
    let mut data = Array2::zeros(a.dim());
    Zip::from(&mut data).and(a).and(b).for_each(|z, &x, &y| *z = x + i * y);
    fft2(&mut data, FftDirection::Inverse);
    (data.mapv(|c| c.re), data.mapv(|c| c.im))
}

/// Normalized Fourier coefficients → physical samples (real part).
pub fn inverse_transform(f: &SpectralField) -> Array2<f64> {
    let mut data = f.coeffs.as_standard_layout().into_owned();
    fft2(&mut data, FftDirection::Inverse);
    data.mapv(|c| c.re)
}
