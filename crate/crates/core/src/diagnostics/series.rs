use serde::Serialize;

use crate::dynamics::SimState;
use crate::error::{Error, Result};
use crate::norms::{lp_of_samples, sobolev_norm, Flavor};
use crate::params::AqgParams;
use crate::spectral::Axis;

/// Norms of one trajectory at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSample {
    pub t: f64,
    pub l2: f64,
    pub l4: f64,
    pub linf: f64,
    pub h1: f64,
    /// `‖θ‖_{H^s}` for each tracked `s`, in the series' order.
    pub hs: Vec<f64>,
    /// `‖|∂₁|^α θ‖_{H^s}` at the primary `s`.
    pub d1a_hs: f64,
    /// `‖|∂₂|^β θ‖_{H^s}` at the primary `s`.
    pub d2b_hs: f64,
    pub d1a_h1: f64,
    pub d2b_h1: f64,
    pub diss1_int: f64,
    pub diss2_int: f64,
    pub h1_diss1_int: f64,
    pub h1_diss2_int: f64,
}

/// What produced a series; the monitors need the equation parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesMeta {
    pub params: AqgParams,
    /// Tracked `H^s` exponents; the first is the primary one.
    pub s_list: Vec<f64>,
}

/// Time-indexed record of the monitored norms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSeries {
    pub meta: SeriesMeta,
    pub samples: Vec<NormSample>,
}

impl NormSeries {
    pub fn new(meta: SeriesMeta) -> Self {
        Self {
            meta,
            samples: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn push(&mut self, sample: NormSample) {
        self.samples.push(sample);
    }

    pub fn times(&self) -> Vec<f64> {
        self.column(|s| s.t)
    }

    pub fn column(&self, f: impl Fn(&NormSample) -> f64) -> Vec<f64> {
        self.samples.iter().map(f).collect()
    }

    /// Index of `s` in the tracked exponents.
    pub fn hs_index(&self, s: f64) -> Option<usize> {
        self.meta.s_list.iter().position(|&x| (x - s).abs() <= 1e-12 * s.abs().max(1.0))
    }

    pub fn hs_column(&self, s: f64) -> Option<Vec<f64>> {
        let i = self.hs_index(s)?;
        Some(self.column(|x| x.hs[i]))
    }

    pub fn last(&self) -> Option<&NormSample> {
        self.samples.last()
    }

    /// Equal lengths, strictly increasing times, finite nonnegative values.
    pub fn validate(&self) -> Result<()> {
        let ns = self.meta.s_list.len();
        for (i, s) in self.samples.iter().enumerate() {
            if s.hs.len() != ns {
                return Err(Error::invalid(format!("sample {i}: {} H^s values for {ns} exponents", s.hs.len())));
            }
            if i > 0 && !(s.t > self.samples[i - 1].t) {
                return Err(Error::invalid(format!("sample {i}: times not strictly increasing")));
            }
            let values = [
                s.l2, s.l4, s.linf, s.h1, s.d1a_hs, s.d2b_hs, s.d1a_h1, s.d2b_h1, s.diss1_int,
                s.diss2_int, s.h1_diss1_int, s.h1_diss2_int,
            ];
            if values.iter().chain(&s.hs).any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(Error::invalid(format!("sample {i}: negative or non-finite value")));
            }
        }
        Ok(())
    }
}

/// Computes [`NormSample`]s for a fixed parameter set.
#[derive(Debug, Clone)]
pub struct NormSampler {
    pub meta: SeriesMeta,
}

impl NormSampler {
    pub fn new(params: AqgParams, s_list: Vec<f64>) -> Self {
        Self {
            meta: SeriesMeta { params, s_list },
        }
    }

    pub fn sample(&self, state: &SimState) -> NormSample {
        let theta = &state.theta;
        let grid = theta.grid();
        let phys = theta.to_physical();
        let inh = Flavor::Inhomogeneous;
        let AqgParams { alpha, beta, .. } = self.meta.params;
        let s0 = self.meta.s_list.first().copied().unwrap_or(1.0);
        NormSample {
            t: state.t,
            l2: theta.l2_norm(),
            l4: lp_of_samples(grid, &phys, 4.0),
            linf: lp_of_samples(grid, &phys, f64::INFINITY),
            h1: sobolev_norm(theta, 1.0, inh, None),
            hs: self.meta.s_list.iter().map(|&s| sobolev_norm(theta, s, inh, None)).collect(),
            d1a_hs: sobolev_norm(theta, s0, inh, Some((Axis::X1, alpha))),
            d2b_hs: sobolev_norm(theta, s0, inh, Some((Axis::X2, beta))),
            d1a_h1: sobolev_norm(theta, 1.0, inh, Some((Axis::X1, alpha))),
            d2b_h1: sobolev_norm(theta, 1.0, inh, Some((Axis::X2, beta))),
            diss1_int: state.diss1_integral,
            diss2_int: state.diss2_integral,
            h1_diss1_int: state.h1_diss1_integral,
            h1_diss2_int: state.h1_diss2_integral,
        }
    }
}
