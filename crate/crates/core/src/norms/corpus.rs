//! Seeded random corpora for the inequality checkers and the
//! grid-refinement studies of their empirical constants.

use rayon::prelude::*;
use serde::Serialize;

use super::estimates::NormReport;
use super::sobolev::{sobolev_norm, Flavor};
use crate::error::Result;
use crate::init::{random_band_limited, Spectrum};
use crate::spectral::{GridSpec, SpectralField};

/// A reproducible family of mean-zero band-limited test fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Corpus {
    pub seed: u64,
    pub size: usize,
    pub band: f64,
}

impl Corpus {
    pub fn new(seed: u64, size: usize, band: f64) -> Self {
        Self { seed, size, band }
    }

    /// Field `index` of the corpus, normalized to unit `L²`. Depends only on
    /// `(seed, index, band)`, not on the grid.
    pub fn field(&self, grid: GridSpec, index: usize) -> SpectralField {
        let seed = self
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(index as u64);
        let f = random_band_limited(grid, seed, self.band, Spectrum::Algebraic(1.0));
        let n = sobolev_norm(&f, 0.0, Flavor::Inhomogeneous, None);
        if n > 0.0 {
            f.scaled(1.0 / n)
        } else {
            f
        }
    }

    /// Runs `check` on every corpus field, in corpus order.
    pub fn map<T, F>(&self, grid: GridSpec, check: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&SpectralField) -> Result<T> + Sync,
    {
        (0..self.size)
            .into_par_iter()
            .map(|i| check(&self.field(grid, i)))
            .collect()
    }

    /// Runs `check` on consecutive field pairs `(2i, 2i+1)`; `size` pairs.
    pub fn map_pairs<T, F>(&self, grid: GridSpec, check: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&SpectralField, &SpectralField) -> Result<T> + Sync,
    {
        (0..self.size)
            .into_par_iter()
            .map(|i| check(&self.field(grid, 2 * i), &self.field(grid, 2 * i + 1)))
            .collect()
    }
}

pub fn max_ratio(reports: &[NormReport]) -> f64 {
    reports.iter().fold(0.0, |m, r| m.max(r.ratio))
}

/// Maximum empirical constant over a corpus at two resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefinementStudy {
    pub coarse_n: usize,
    pub fine_n: usize,
    pub coarse_max: f64,
    pub fine_max: f64,
}

impl RefinementStudy {
    /// `|fine − coarse| / fine`.
    pub fn relative_change(&self) -> f64 {
        if self.fine_max == 0.0 {
            if self.coarse_max == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.fine_max - self.coarse_max).abs() / self.fine_max
        }
    }

    pub fn is_stable(&self, tolerance: f64) -> bool {
        self.coarse_max.is_finite() && self.fine_max.is_finite() && self.relative_change() <= tolerance
    }
}

/// Max ratio of a pairwise check on square grids `n_coarse` and `n_fine`.
pub fn refine_pairs<F>(corpus: &Corpus, base: GridSpec, n_coarse: usize, n_fine: usize, check: F) -> Result<RefinementStudy>
where
    F: Fn(&SpectralField, &SpectralField) -> Result<NormReport> + Sync,
{
    let coarse = corpus.map_pairs(base.resized(n_coarse, n_coarse)?, &check)?;
    let fine = corpus.map_pairs(base.resized(n_fine, n_fine)?, &check)?;
    Ok(RefinementStudy {
        coarse_n: n_coarse,
        fine_n: n_fine,
        coarse_max: max_ratio(&coarse),
        fine_max: max_ratio(&fine),
    })
}

/// Max ratio of a single-field check on square grids `n_coarse` and `n_fine`.
pub fn refine_single<F>(corpus: &Corpus, base: GridSpec, n_coarse: usize, n_fine: usize, check: F) -> Result<RefinementStudy>
where
    F: Fn(&SpectralField) -> Result<NormReport> + Sync,
{
    let coarse = corpus.map(base.resized(n_coarse, n_coarse)?, &check)?;
    let fine = corpus.map(base.resized(n_fine, n_fine)?, &check)?;
    Ok(RefinementStudy {
        coarse_n: n_coarse,
        fine_n: n_fine,
        coarse_max: max_ratio(&coarse),
        fine_max: max_ratio(&fine),
    })
}
