//! Runtime monitors built from the a-priori estimates, plus the twin
//! (uniqueness) experiment and `(α, β)` regime sweeps.
//!
//! "Bounded for all time" cannot be decided from a finite run. The `H¹` and
//! `H^s` monitors use a stabilized-running-maximum proxy and say so.

mod monitors;
mod series;
mod sweep;
mod twin;

pub use monitors::{
    energy_ledger, envelope_constant, envelope_stability, h1_bound, hs_bound, hs_envelope,
    maximum_principle, running_max_growth, LpNorm, MonitorVerdict, VerdictStatus,
    ENVELOPE_FLOOR, ENVELOPE_STABILITY_TOL, LEDGER_SLACK, LEDGER_TOL, MAX_PRINCIPLE_TOL,
    RUNNING_MAX_TOL,
};
pub use series::{NormSample, NormSampler, NormSeries, SeriesMeta};
pub use sweep::{regime_sweep, SweepRow};
pub use twin::{
    perturbation, twin_experiment, twin_scaling, SeparationSample, TwinReport, TwinScaling,
    SCALING_BAND,
};
