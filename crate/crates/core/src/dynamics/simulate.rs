use serde::Serialize;

use super::stepper::{BlowUpReport, SimState, StepSize, TimeStepper};
use super::system::AqgSystem;
use crate::diagnostics::{NormSampler, NormSeries};
use crate::error::{Error, Result};
use crate::params::AqgParams;
use crate::spectral::SpectralField;

/// Horizon, sampling and snapshot schedule of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateOptions {
    pub horizon: f64,
    pub sample_every: f64,
    /// `H^s` exponents to track; the first drives the directional `H^s` columns.
    pub s_list: Vec<f64>,
    pub snapshot_times: Vec<f64>,
}

impl SimulateOptions {
    pub fn new(horizon: f64, sample_every: f64) -> Self {
        Self {
            horizon,
            sample_every,
            s_list: vec![1.5],
            snapshot_times: Vec::new(),
        }
    }

    pub fn with_s_list(mut self, s_list: Vec<f64>) -> Self {
        self.s_list = s_list;
        self
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    pub(crate) fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            out.push(format!("T must be positive (got {})", self.horizon));
        }
        if !(self.sample_every > 0.0 && self.sample_every.is_finite()) {
            out.push(format!("sample_every must be positive (got {})", self.sample_every));
        }
        if self.s_list.is_empty() {
            out.push("s_list must not be empty".into());
        }
        if let Some(s) = self.s_list.iter().find(|s| !(**s >= 0.0 && s.is_finite())) {
            out.push(format!("s_list entries must be nonnegative (got {s})"));
        }
        if let Some(t) = self
            .snapshot_times
            .iter()
            .find(|t| !(**t >= 0.0 && **t <= self.horizon))
        {
            out.push(format!("snapshot time {t} outside [0, T]"));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(v.join("; ")))
        }
    }

    pub(crate) fn schedule(&self) -> Schedule {
        Schedule::new(self.horizon, self.sample_every, &self.snapshot_times)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub theta: SpectralField,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub series: NormSeries,
    pub snapshots: Vec<Snapshot>,
    pub final_state: SimState,
}

/// One point where every trajectory of a run is brought to rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Stop {
    pub t: f64,
    pub sample: bool,
    pub snapshot: bool,
}

/// Sorted stops, the first one at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Schedule {
    pub stops: Vec<Stop>,
}

impl Schedule {
    fn new(horizon: f64, every: f64, snapshots: &[f64]) -> Self {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * every.min(horizon);
        let mut stops = vec![Stop {
            t: 0.0,
            sample: true,
            snapshot: false,
        }];
        let mut j = 1u64;
        loop {
            let t = j as f64 * every;
            if t > horizon || close(t, horizon) {
                break;
            }
            stops.push(Stop {
                t,
                sample: true,
                snapshot: false,
            });
            j += 1;
        }
        stops.push(Stop {
            t: horizon,
            sample: true,
            snapshot: false,
        });
        for &ts in snapshots {
            match stops.iter_mut().find(|s| close(s.t, ts)) {
                Some(s) => s.snapshot = true,
                None => stops.push(Stop {
                    t: ts,
                    sample: false,
                    snapshot: true,
                }),
            }
        }
        stops.sort_by(|a, b| a.t.total_cmp(&b.t));
        Self { stops }
    }
}

/// Number of equal substeps of size at most `dt` covering `interval`.
fn substeps(interval: f64, dt: f64) -> u64 {
    let r = interval / dt;
    let n = r.round();
    if n >= 1.0 && (r - n).abs() <= 1e-9 * n {
        n as u64
    } else {
        r.ceil().max(1.0) as u64
    }
}

/// Advances several systems through `schedule` with a shared step sequence
/// decided by the first one, calling `observe` at every stop (including
/// `t = 0`). On failure returns the index of the offending trajectory.
pub(crate) fn lockstep(
    systems: &[&AqgSystem],
    mut states: Vec<SimState>,
    stepper: &TimeStepper,
    schedule: &Schedule,
    mut observe: impl FnMut(&Stop, &[SimState]) -> Result<()>,
) -> std::result::Result<Vec<SimState>, (usize, Error)> {
    debug_assert_eq!(systems.len(), states.len());
    stepper.validate().map_err(|e| (0, e))?;
    observe(&schedule.stops[0], &states).map_err(|e| (0, e))?;

    for w in schedule.stops.windows(2) {
        let (from, to) = (w[0].t, w[1].t);
        let interval = to - from;
        match stepper.step {
            StepSize::Fixed(dt) => {
                let n = substeps(interval, dt);
                let h = interval / n as f64;
                for _ in 0..n {
                    states = advance(systems, &states, stepper, |_| h)?;
                }
            }
            StepSize::Auto => {
                let floor = 1e-13 * to.max(1.0);
                while to - states[0].t > floor {
                    let remaining = to - states[0].t;
                    states = advance(systems, &states, stepper, |speed| {
                        systems[0].auto_dt(speed, stepper).min(remaining)
                    })?;
                }
            }
        }
        for s in states.iter_mut() {
            s.t = to;
        }
        observe(&w[1], &states).map_err(|e| (0, e))?;
    }
    Ok(states)
}

fn advance(
    systems: &[&AqgSystem],
    states: &[SimState],
    stepper: &TimeStepper,
    dt_from_speed: impl Fn(f64) -> f64,
) -> std::result::Result<Vec<SimState>, (usize, Error)> {
    let preps: Vec<_> = systems
        .iter()
        .zip(states)
        .map(|(sys, st)| sys.prepare(&st.theta))
        .collect();
    let dt = dt_from_speed(preps[0].max_speed);
    let mut out = Vec::with_capacity(states.len());
    for (i, ((sys, st), prep)) in systems.iter().zip(states).zip(preps).enumerate() {
        out.push(sys.step_prepared(st, prep, stepper.scheme, dt).map_err(|e| (i, e))?);
    }
    Ok(out)
}

/// Attaches the last recorded sample to a blow-up error.
pub(crate) fn with_last_sample(err: Error, series: &NormSeries) -> Error {
    match err {
        Error::BlowUp(mut report) => {
            report.last_sample = series.last().cloned();
            Error::BlowUp(report)
        }
        other => other,
    }
}

/// Runs the full dealiased system from `theta0` to `options.horizon`.
pub fn simulate(
    theta0: &SpectralField,
    params: AqgParams,
    stepper: &TimeStepper,
    options: &SimulateOptions,
) -> Result<Trajectory> {
    simulate_system(&AqgSystem::new(*theta0.grid(), params), theta0, stepper, options)
}

/// Runs an already configured system (cutoff, linear-only, ...).
pub fn simulate_system(
    system: &AqgSystem,
    theta0: &SpectralField,
    stepper: &TimeStepper,
    options: &SimulateOptions,
) -> Result<Trajectory> {
    let mut runs = run_many(&[system], vec![theta0.clone()], stepper, options)?;
    Ok(runs.pop().expect("one trajectory"))
}

/// Runs several systems in lockstep, one trajectory each.
pub(crate) fn run_many(
    systems: &[&AqgSystem],
    initial: Vec<SpectralField>,
    stepper: &TimeStepper,
    options: &SimulateOptions,
) -> Result<Vec<Trajectory>> {
    options.validate()?;
    for (sys, th) in systems.iter().zip(&initial) {
        th.ensure_same_grid(&SpectralField::zeros(*sys.grid()))?;
    }
    let sampler = NormSampler::new(*systems[0].params(), options.s_list.clone());
    let mut series: Vec<NormSeries> = (0..systems.len())
        .map(|_| NormSeries::new(sampler.meta.clone()))
        .collect();
    let mut snapshots: Vec<Vec<Snapshot>> = vec![Vec::new(); systems.len()];
    let states = initial.into_iter().map(SimState::new).collect();

    let result = lockstep(systems, states, stepper, &options.schedule(), |stop, states| {
        for (i, st) in states.iter().enumerate() {
            if stop.sample {
                series[i].push(sampler.sample(st));
            }
            if stop.snapshot {
                snapshots[i].push(Snapshot {
                    t: stop.t,
                    theta: st.theta.clone(),
                });
            }
        }
        Ok(())
    });
    let finals = result.map_err(|(i, e)| with_last_sample(e, &series[i]))?;
    Ok(series
        .into_iter()
        .zip(snapshots)
        .zip(finals)
        .map(|((series, snapshots), final_state)| Trajectory {
            series,
            snapshots,
            final_state,
        })
        .collect())
}

impl BlowUpReport {
    /// Plain-JSON form written next to the outputs of an aborted run.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::cosine;
    use crate::spectral::{Axis, GridSpec};

    fn params() -> AqgParams {
        AqgParams::new(0.5, 0.75, 1.0, 1.0).unwrap()
    }

    #[test]
    fn schedule_includes_horizon_and_snapshots() {
        let s = Schedule::new(1.0, 0.3, &[0.5, 0.6]);
        let t: Vec<f64> = s.stops.iter().map(|s| s.t).collect();
        assert_eq!(t.len(), 6);
        assert_eq!(t[0], 0.0);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert!(s.stops.iter().filter(|s| s.snapshot).count() == 2);
        assert!(s.stops.iter().any(|s| s.snapshot && s.sample));
        let s = Schedule::new(1.0, 0.1, &[]);
        assert_eq!(s.stops.len(), 11);
    }

    #[test]
    fn substep_counts() {
        assert_eq!(substeps(0.1, 1e-3), 100);
        assert_eq!(substeps(0.1, 0.03), 4);
        assert_eq!(substeps(1e-4, 1e-3), 1);
    }

    #[test]
    fn zero_data_stays_zero() {
        let g = GridSpec::square(16).unwrap();
        let tr = simulate(
            &SpectralField::zeros(g),
            params(),
            &TimeStepper::auto(0.5),
            &SimulateOptions::new(0.5, 0.25),
        )
        .unwrap();
        assert_eq!(tr.series.len(), 3);
        assert_eq!(tr.final_state.theta.max_abs_coeff(), 0.0);
        assert!(tr.series.samples.iter().all(|s| s.l2 == 0.0 && s.h1 == 0.0));
    }

    #[test]
    fn cosine_decays_exactly() {
        let g = GridSpec::square(32).unwrap();
        let opts = SimulateOptions::new(1.0, 0.5).with_snapshots(vec![0.5]);
        let tr = simulate(&cosine(g, Axis::X1, 1, 1.0), params(), &TimeStepper::fixed(1e-2), &opts).unwrap();
        let exact = 2f64.sqrt() * std::f64::consts::PI * (-1f64).exp();
        let l2 = tr.series.last().unwrap().l2;
        assert!((l2 - exact).abs() / exact < 1e-10);
        assert_eq!(tr.snapshots.len(), 1);
        assert_eq!(tr.snapshots[0].t, 0.5);
        assert_eq!(tr.final_state.t, 1.0);
    }

    #[test]
    fn blow_up_carries_last_sample() {
        let g = GridSpec::square(8).unwrap();
        let mut f = cosine(g, Axis::X1, 1, 1.0);
        f.set_mode(1, 1, num_complex::Complex64::new(f64::INFINITY, 0.0));
        let err = simulate(&f, params(), &TimeStepper::fixed(0.01), &SimulateOptions::new(0.1, 0.05)).unwrap_err();
        match err {
            Error::BlowUp(r) => assert_eq!(r.last_sample.unwrap().t, 0.0),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn invalid_options_rejected() {
        let g = GridSpec::square(8).unwrap();
        let f = SpectralField::zeros(g);
        let opts = SimulateOptions::new(-1.0, 0.0);
        let err = simulate(&f, params(), &TimeStepper::fixed(0.1), &opts).unwrap_err();
        assert!(err.to_string().contains("T must be positive"));
        assert!(err.to_string().contains("sample_every"));
    }
}
