use rayon::prelude::*;
use serde::Serialize;

use super::monitors::{energy_ledger, h1_bound, maximum_principle, LpNorm, MonitorVerdict, VerdictStatus};
use crate::dynamics::{simulate, SimulateOptions, TimeStepper};
use crate::error::{Error, Result};
use crate::params::{classify, AqgParams, Regime};
use crate::spectral::SpectralField;

/// One `(α, β)` cell of a regime sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub regime: Regime,
    /// `max_t ‖θ(t)‖_{H^s} / ‖θ⁰‖_{H^s}` for the primary `s`; NaN after a blow-up.
    pub hs_growth: f64,
    pub verdicts: Vec<MonitorVerdict>,
    pub blow_up: Option<String>,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "alpha,beta,regime,hs_growth,energy_ledger,maximum_principle,h1_bound,blow_up";

    pub fn csv_row(&self) -> String {
        let status = |name: &str| {
            self.verdicts
                .iter()
                .find(|v| v.name == name)
                .map_or("skipped".to_string(), |v| v.status.to_string())
        };
        format!(
            "{},{},{},{:e},{},{},{},{}",
            self.alpha,
            self.beta,
            self.regime,
            self.hs_growth,
            status("energy_ledger"),
            status("maximum_principle"),
            status("h1_bound"),
            self.blow_up.is_some()
        )
    }

    pub fn all_pass(&self) -> bool {
        self.blow_up.is_none() && self.verdicts.iter().all(|v| v.status != VerdictStatus::Fail)
    }
}

/// Simulates every `(α, β)` cell from the same data and applies the
/// monitors. Cells run in parallel; rows come back in grid order (α outer).
pub fn regime_sweep(
    alphas: &[f64],
    betas: &[f64],
    mu: f64,
    nu: f64,
    theta0: &SpectralField,
    stepper: &TimeStepper,
    options: &SimulateOptions,
) -> Result<Vec<SweepRow>> {
    let mut cells = Vec::with_capacity(alphas.len() * betas.len());
    let mut problems = Vec::new();
    for &a in alphas {
        for &b in betas {
            match AqgParams::new(a, b, mu, nu) {
                Ok(p) => cells.push(p),
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParameter(problems.join("; ")));
    }
    options.validate()?;
    cells.into_par_iter().map(|p| sweep_cell(p, theta0, stepper, options)).collect()
}

fn sweep_cell(params: AqgParams, theta0: &SpectralField, stepper: &TimeStepper, options: &SimulateOptions) -> Result<SweepRow> {
    let regime = classify(params.alpha, params.beta);
    let row = |hs_growth, verdicts, blow_up| SweepRow {
        alpha: params.alpha,
        beta: params.beta,
        regime,
        hs_growth,
        verdicts,
        blow_up,
    };
    match simulate(theta0, params, stepper, options) {
        Ok(tr) => {
            let s = &tr.series;
            let hs = s.column(|x| x.hs[0]);
            let h0 = hs[0];
            let growth = if h0 > 0.0 {
                hs.iter().fold(0.0f64, |m, &v| m.max(v)) / h0
            } else {
                1.0
            };
            let verdicts = vec![
                energy_ledger(s),
                maximum_principle(s, &LpNorm::ALL),
                h1_bound(s, &params),
            ];
            Ok(row(growth, verdicts, None))
        }
        Err(Error::BlowUp(report)) => Ok(row(f64::NAN, Vec::new(), Some(report.to_string()))),
        Err(e) => Err(e),
    }
}
