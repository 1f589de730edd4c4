use std::fmt;

use serde::Serialize;

use super::series::NormSeries;
use crate::error::{Error, Result};
use crate::params::{classify, AqgParams, Regime};

/// Tolerance of the energy ledger: time-integration error.
pub const LEDGER_TOL: f64 = 1e-6;
/// Relative slack on `‖θ(t)‖² ≤ ‖θ⁰‖²`: roundoff only.
pub const LEDGER_SLACK: f64 = 1e-10;
/// Per-interval relative slack of the maximum principle.
pub const MAX_PRINCIPLE_TOL: f64 = 1e-8;
/// Allowed relative growth of a running maximum over the last quarter.
pub const RUNNING_MAX_TOL: f64 = 1e-3;
/// Allowed relative spread of the Gronwall constant under refinement.
pub const ENVELOPE_STABILITY_TOL: f64 = 0.2;
/// Floor on the dissipation integral in `G/D`.
pub const ENVELOPE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "fail",
            VerdictStatus::NotApplicable => "not-applicable",
        })
    }
}

/// Outcome of one monitor. For applicable monitors the status is `Pass`
/// exactly when `worst_violation ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitorVerdict {
    pub name: String,
    pub status: VerdictStatus,
    pub worst_violation: f64,
    pub tolerance: f64,
    /// Time at which the worst violation occurred.
    pub t: f64,
    /// Empirical constant recorded by the monitor, if any.
    pub empirical: Option<f64>,
}

impl MonitorVerdict {
    pub const CSV_HEADER: &'static str = "monitor,status,worst_violation,tolerance,t,empirical";

    fn judged(name: &str, worst_violation: f64, tolerance: f64, t: f64) -> Self {
        let status = if worst_violation <= tolerance {
            VerdictStatus::Pass
        } else {
            VerdictStatus::Fail
        };
        Self {
            name: name.to_string(),
            status,
            worst_violation,
            tolerance,
            t,
            empirical: None,
        }
    }

    fn not_applicable(name: &str) -> Self {
        Self {
            name: name.to_string(),
            status: VerdictStatus::NotApplicable,
            worst_violation: 0.0,
            tolerance: 0.0,
            t: 0.0,
            empirical: None,
        }
    }

    fn with_empirical(mut self, c: f64) -> Self {
        self.empirical = Some(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == VerdictStatus::Pass
    }

    /// Not-applicable verdicts do not count as failures.
    pub fn is_failure(&self) -> bool {
        self.status == VerdictStatus::Fail
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:e},{:e},{},{}",
            self.name,
            self.status,
            self.worst_violation,
            self.tolerance,
            self.t,
            self.empirical.map(|c| format!("{c:e}")).unwrap_or_default()
        )
    }
}

/// Worst `(value, t)` over the samples, ignoring NaN-free ties by first occurrence.
fn worst(pairs: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    pairs.fold((0.0, 0.0), |(w, wt), (v, t)| if v > w || v.is_nan() { (v, t) } else { (w, wt) })
}

/// `‖θ(t)‖² + 2μ∫‖|∂₁|^α θ‖² + 2ν∫‖|∂₂|^β θ‖² = ‖θ⁰‖²` to [`LEDGER_TOL`]
/// relative, and `‖θ(t)‖² ≤ ‖θ⁰‖²` to [`LEDGER_SLACK`].
///
/// The second check is folded into the reported violation after rescaling
/// by `LEDGER_TOL / LEDGER_SLACK`, so one number decides the verdict.
pub fn energy_ledger(series: &NormSeries) -> MonitorVerdict {
    const NAME: &str = "energy_ledger";
    let Some(first) = series.samples.first() else {
        return MonitorVerdict::judged(NAME, f64::INFINITY, LEDGER_TOL, 0.0);
    };
    let AqgParams { mu, nu, .. } = series.meta.params;
    let e0 = first.l2 * first.l2;
    let scale = if e0 > 0.0 { e0 } else { 1.0 };
    let (w, t) = worst(series.samples.iter().map(|s| {
        let e = s.l2 * s.l2;
        let ledger = (e + 2.0 * mu * s.diss1_int + 2.0 * nu * s.diss2_int - e0).abs() / scale;
        let excess = ((e - e0) / scale - LEDGER_SLACK).max(0.0);
        let excess = if excess > 0.0 {
            LEDGER_TOL + excess * (LEDGER_TOL / LEDGER_SLACK)
        } else {
            0.0
        };
        (ledger.max(excess), s.t)
    }));
    MonitorVerdict::judged(NAME, w, LEDGER_TOL, t)
}

/// Which `L^p` norms the maximum principle is checked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpNorm {
    L2,
    L4,
    LInf,
}

impl LpNorm {
    pub const ALL: [LpNorm; 3] = [LpNorm::L2, LpNorm::L4, LpNorm::LInf];

    /// Accepts `2`, `4` and `inf`.
    pub fn from_exponent(p: f64) -> Result<Self> {
        if p == 2.0 {
            Ok(LpNorm::L2)
        } else if p == 4.0 {
            Ok(LpNorm::L4)
        } else if p == f64::INFINITY {
            Ok(LpNorm::LInf)
        } else {
            Err(Error::invalid(format!("maximum principle is tracked for p in {{2, 4, inf}} only (got {p})")))
        }
    }

    fn value(&self, s: &super::series::NormSample) -> f64 {
        match self {
            LpNorm::L2 => s.l2,
            LpNorm::L4 => s.l4,
            LpNorm::LInf => s.linf,
        }
    }
}

/// Each `‖θ(t)‖_{L^p}` nonincreasing between consecutive samples up to
/// [`MAX_PRINCIPLE_TOL`] relative.
pub fn maximum_principle(series: &NormSeries, norms: &[LpNorm]) -> MonitorVerdict {
    let (w, t) = worst(norms.iter().flat_map(|p| {
        series.samples.windows(2).map(move |pair| {
            let (a, b) = (p.value(&pair[0]), p.value(&pair[1]));
            let growth = if a > 0.0 {
                (b - a) / a
            } else if b > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            (growth.max(0.0), pair[1].t)
        })
    }));
    MonitorVerdict::judged("maximum_principle", w, MAX_PRINCIPLE_TOL, t)
}

/// Relative growth of the running maximum of `values` over the last
/// quarter of the run, or zero when the maximum is attained in the first
/// half. Returns `(growth, t_of_max, max)`.
pub fn running_max_growth(times: &[f64], values: &[f64]) -> (f64, f64, f64) {
    let Some((&t0, &t_end)) = times.first().zip(times.last()) else {
        return (0.0, 0.0, 0.0);
    };
    let (mut imax, mut vmax) = (0, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v > vmax || v.is_nan() {
            imax = i;
            vmax = v;
        }
    }
    let t_max = times[imax];
    if t_max <= t0 + 0.5 * (t_end - t0) {
        return (0.0, t_max, vmax);
    }
    let cut = t0 + 0.75 * (t_end - t0);
    let before = times
        .iter()
        .zip(values)
        .filter(|(t, _)| **t <= cut)
        .fold(f64::NEG_INFINITY, |m, (_, v)| m.max(*v));
    let growth = if before > 0.0 {
        (vmax - before) / before
    } else if vmax > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    (growth, t_max, vmax)
}

/// Bounded-horizon proxy for a uniform `H¹` bound, gated on the regime.
/// Records `sup_t (‖θ‖²_{H¹} + ∫‖|∂₁|^α θ‖²_{H¹} + ∫‖|∂₂|^β θ‖²_{H¹})`.
pub fn h1_bound(series: &NormSeries, params: &AqgParams) -> MonitorVerdict {
    const NAME: &str = "h1_bound";
    if classify(params.alpha, params.beta) == Regime::Other {
        return MonitorVerdict::not_applicable(NAME);
    }
    let (growth, t, _) = running_max_growth(&series.times(), &series.column(|s| s.h1));
    let c = series
        .samples
        .iter()
        .map(|s| s.h1 * s.h1 + s.h1_diss1_int + s.h1_diss2_int)
        .fold(0.0, f64::max);
    MonitorVerdict::judged(NAME, growth, RUNNING_MAX_TOL, t).with_empirical(c)
}

/// Same proxy for `‖θ‖_{H^s}`, without a regime gate. Records the running max.
pub fn hs_bound(series: &NormSeries, s: f64) -> Result<MonitorVerdict> {
    let hs = series
        .hs_column(s)
        .ok_or_else(|| Error::invalid(format!("H^{s} is not tracked by this series")))?;
    let (growth, t, vmax) = running_max_growth(&series.times(), &hs);
    Ok(MonitorVerdict::judged(&format!("hs_bound_{s}"), growth, RUNNING_MAX_TOL, t).with_empirical(vmax.max(0.0)))
}

/// Empirical Gronwall constant of the `H^s` envelope:
/// `C = max(0, sup_t G(t) / max(D(t), ε))` with `G = ln(‖θ‖²_{H^s}/‖θ⁰‖²_{H^s})`
/// and `D` the time-integrated `H¹` dissipation.
pub fn envelope_constant(series: &NormSeries, s: f64) -> Result<(f64, f64)> {
    if !(s > 1.0) {
        return Err(Error::invalid(format!("envelope needs s > 1 (got {s})")));
    }
    let hs = series
        .hs_column(s)
        .ok_or_else(|| Error::invalid(format!("H^{s} is not tracked by this series")))?;
    let h0 = hs.first().copied().unwrap_or(0.0);
    if h0 == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (c, t) = worst(series.samples.iter().zip(&hs).map(|(smp, &h)| {
        let g = (h * h / (h0 * h0)).ln();
        let d = (smp.h1_diss1_int + smp.h1_diss2_int).max(ENVELOPE_FLOOR);
        (g / d, smp.t)
    }));
    Ok((c.max(0.0), t))
}

/// Passes when the envelope constant is finite; the constant is recorded.
pub fn hs_envelope(series: &NormSeries, s: f64) -> Result<MonitorVerdict> {
    let (c, t) = envelope_constant(series, s)?;
    let violation = if c.is_finite() { 0.0 } else { f64::INFINITY };
    Ok(MonitorVerdict::judged("hs_envelope", violation, 0.0, t).with_empirical(c))
}

/// Compares envelope constants from two resolutions. Constants below
/// `1e-12` on both grids count as equal (pure decay).
pub fn envelope_stability(coarse: f64, fine: f64) -> MonitorVerdict {
    let scale = coarse.abs().max(fine.abs());
    let spread = if scale <= 1e-12 {
        0.0
    } else {
        (coarse - fine).abs() / scale
    };
    MonitorVerdict::judged("hs_envelope_stability", spread, ENVELOPE_STABILITY_TOL, 0.0).with_empirical(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::series::{NormSample, SeriesMeta};

    fn sample(t: f64, l2: f64) -> NormSample {
        NormSample {
            t,
            l2,
            l4: l2,
            linf: l2,
            h1: l2,
            hs: vec![l2],
            d1a_hs: 0.0,
            d2b_hs: 0.0,
            d1a_h1: 0.0,
            d2b_h1: 0.0,
            diss1_int: 0.0,
            diss2_int: 0.0,
            h1_diss1_int: 0.0,
            h1_diss2_int: 0.0,
        }
    }

    fn series(values: &[f64], mu: f64) -> NormSeries {
        let meta = SeriesMeta {
            params: AqgParams::new(0.5, 0.75, mu, mu).unwrap(),
            s_list: vec![1.5],
        };
        NormSeries {
            meta,
            samples: values.iter().enumerate().map(|(i, &v)| sample(i as f64, v)).collect(),
        }
    }

    #[test]
    fn zero_solution_passes_everything() {
        let s = series(&[0.0, 0.0, 0.0], 1.0);
        assert!(energy_ledger(&s).passed());
        assert!(maximum_principle(&s, &LpNorm::ALL).passed());
        assert!(h1_bound(&s, &s.meta.params).passed());
        let env = hs_envelope(&s, 1.5).unwrap();
        assert!(env.passed());
        assert_eq!(env.empirical, Some(0.0));
    }

    #[test]
    fn inviscid_conserved_series_closes_the_ledger() {
        let s = series(&[1.0, 1.0, 1.0], 0.0);
        assert_eq!(energy_ledger(&s).worst_violation, 0.0);
    }

    #[test]
    fn growth_breaks_ledger_and_maximum_principle() {
        let s = series(&[1.0, 1.0 + 1e-9, 1.0], 0.0);
        let v = energy_ledger(&s);
        assert!(v.is_failure());
        assert_eq!(v.t, 1.0);
        let m = maximum_principle(&s, &[LpNorm::L2]);
        assert!(m.passed());
        let s = series(&[1.0, 1.0 + 1e-7], 0.0);
        assert!(maximum_principle(&s, &[LpNorm::L4]).is_failure());
    }

    #[test]
    fn regime_gate() {
        let s = series(&[1.0, 0.5], 1.0);
        let p = AqgParams::new(0.25, 0.25, 1.0, 1.0).unwrap();
        assert_eq!(h1_bound(&s, &p).status, VerdictStatus::NotApplicable);
        assert!(!h1_bound(&s, &p).is_failure());
    }

    #[test]
    fn running_max_proxy() {
        let t = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(running_max_growth(&t, &[5.0, 4.0, 3.0, 2.0, 1.0]).0, 0.0);
        let (g, tm, _) = running_max_growth(&t, &[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!((g - 0.25).abs() < 1e-15);
        assert_eq!(tm, 4.0);
    }

    #[test]
    fn decaying_envelope_has_zero_constant() {
        let s = series(&[1.0, 0.5, 0.25], 1.0);
        assert_eq!(envelope_constant(&s, 1.5).unwrap().0, 0.0);
        assert!(envelope_constant(&s, 1.0).is_err());
        assert!(envelope_stability(0.0, 0.0).passed());
        assert!(envelope_stability(1.0, 1.1).passed());
        assert!(envelope_stability(1.0, 1.5).is_failure());
    }

    #[test]
    fn lp_exponents() {
        assert_eq!(LpNorm::from_exponent(f64::INFINITY).unwrap(), LpNorm::LInf);
        assert!(LpNorm::from_exponent(3.0).is_err());
    }

    #[test]
    fn verdict_csv() {
        let v = MonitorVerdict::judged("x", 0.5, 1.0, 2.0);
        assert_eq!(v.csv_row(), "x,pass,5e-1,1e0,2,");
    }
}
