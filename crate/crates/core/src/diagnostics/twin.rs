use serde::Serialize;

use crate::dynamics::{run_many, AqgSystem, SimulateOptions, TimeStepper, Trajectory};
use crate::error::{Error, Result};
use crate::init::{normalized, random_band_limited, Spectrum};
use crate::params::AqgParams;
use crate::spectral::SpectralField;

/// Allowed band for `‖ω_δ(T)‖ / ‖ω_{δ/10}(T)‖`.
pub const SCALING_BAND: (f64, f64) = (9.0, 11.0);

/// Seeded mean-zero perturbation direction with unit `L²` norm.
pub fn perturbation(theta0: &SpectralField, seed: u64, band: f64) -> SpectralField {
    normalized(random_band_limited(*theta0.grid(), seed, band, Spectrum::Algebraic(1.0)), 0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationSample {
    pub t: f64,
    /// `‖θ̃(t) − θ(t)‖_{L²}`.
    pub omega: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwinReport {
    pub delta: f64,
    pub separation: Vec<SeparationSample>,
    /// `sup_t (‖θ̃‖_{H^s} + ‖|∂₁|^α θ̃‖_{H^s} + ‖|∂₂|^β θ̃‖_{H^s})`, the rate
    /// driving the Gronwall bound on `‖ω‖²`.
    pub model_rate: f64,
    /// `sup_t ln(‖ω(t)‖/‖ω(0)‖)/t`.
    pub observed_rate: f64,
    /// `‖ω(t)‖ ≤ ‖ω(0)‖·exp(model_rate·t)` at every sample.
    pub bound_holds: bool,
    /// All trajectories compared sample-by-sample bit for bit.
    pub identical: bool,
}

impl TwinReport {
    pub fn final_separation(&self) -> f64 {
        self.separation.last().map_or(0.0, |s| s.omega)
    }
}

fn separation(base: &Trajectory, twin: &Trajectory) -> Vec<SeparationSample> {
    base.snapshots
        .iter()
        .zip(&twin.snapshots)
        .map(|(a, b)| SeparationSample {
            t: a.t,
            omega: b.theta.sub(&a.theta).expect("same grid").l2_norm(),
        })
        .collect()
}

fn report(delta: f64, base: &Trajectory, twin: &Trajectory) -> TwinReport {
    let sep = separation(base, twin);
    let model_rate = twin
        .series
        .samples
        .iter()
        .map(|s| s.hs[0] + s.d1a_hs + s.d2b_hs)
        .fold(0.0, f64::max);
    let w0 = sep.first().map_or(0.0, |s| s.omega);
    let mut observed_rate = f64::NEG_INFINITY;
    let mut bound_holds = true;
    for s in sep.iter().filter(|s| s.t > 0.0) {
        if w0 > 0.0 {
            observed_rate = observed_rate.max((s.omega / w0).ln() / s.t);
        }
        let allowed = w0 * (model_rate * s.t).exp();
        if s.omega > allowed * (1.0 + 1e-12) {
            bound_holds = false;
        }
    }
    if !observed_rate.is_finite() {
        observed_rate = 0.0;
    }
    let identical = base.series == twin.series
        && base
            .snapshots
            .iter()
            .zip(&twin.snapshots)
            .all(|(a, b)| a.theta.coeffs() == b.theta.coeffs());
    TwinReport {
        delta,
        separation: sep,
        model_rate,
        observed_rate,
        bound_holds,
        identical,
    }
}

fn with_sample_snapshots(options: &SimulateOptions) -> SimulateOptions {
    let mut times = Vec::new();
    let mut j = 0u64;
    loop {
        let t = j as f64 * options.sample_every;
        if t >= options.horizon {
            break;
        }
        times.push(t);
        j += 1;
    }
    times.push(options.horizon);
    options.clone().with_snapshots(times)
}

fn twin_initial(theta0: &SpectralField, direction: &SpectralField, delta: f64) -> Result<SpectralField> {
    if delta == 0.0 {
        Ok(theta0.clone())
    } else {
        theta0.add(&direction.scaled(delta * theta0.l2_norm()))
    }
}

/// Runs `θ⁰` and `θ⁰ + δ‖θ⁰‖·p` in lockstep and records their separation.
pub fn twin_experiment(
    theta0: &SpectralField,
    direction: &SpectralField,
    delta: f64,
    params: AqgParams,
    stepper: &TimeStepper,
    options: &SimulateOptions,
) -> Result<TwinReport> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::invalid(format!("delta must be nonnegative (got {delta})")));
    }
    let sys = AqgSystem::new(*theta0.grid(), params);
    let init = vec![theta0.clone(), twin_initial(theta0, direction, delta)?];
    let runs = run_many(&[&sys, &sys], init, stepper, &with_sample_snapshots(options))?;
    Ok(report(delta, &runs[0], &runs[1]))
}

#[derive(Debug, Clone, Serialize)]
pub struct TwinScaling {
    pub large: TwinReport,
    pub small: TwinReport,
    /// `‖ω_δ(T)‖ / ‖ω_{δ/10}(T)‖`.
    pub ratio: f64,
}

impl TwinScaling {
    pub fn is_linear(&self) -> bool {
        self.ratio >= SCALING_BAND.0 && self.ratio <= SCALING_BAND.1
    }
}

/// Twin runs at `δ` and `δ/10` sharing one base trajectory.
pub fn twin_scaling(
    theta0: &SpectralField,
    direction: &SpectralField,
    delta: f64,
    params: AqgParams,
    stepper: &TimeStepper,
    options: &SimulateOptions,
) -> Result<TwinScaling> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid(format!("delta must be positive (got {delta})")));
    }
    let sys = AqgSystem::new(*theta0.grid(), params);
    let init = vec![
        theta0.clone(),
        twin_initial(theta0, direction, delta)?,
        twin_initial(theta0, direction, delta / 10.0)?,
    ];
    let runs = run_many(&[&sys, &sys, &sys], init, stepper, &with_sample_snapshots(options))?;
    let large = report(delta, &runs[0], &runs[1]);
    let small = report(delta / 10.0, &runs[0], &runs[2]);
    let ratio = large.final_separation() / small.final_separation();
    Ok(TwinScaling { large, small, ratio })
}
