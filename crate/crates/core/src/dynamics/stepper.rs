use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagnostics::NormSample;
use crate::error::{Error, Result};
use crate::spectral::SpectralField;

/// Time-integration scheme for the nonlinear part. Both treat the
/// dissipation with its exact exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Integrating-factor classical RK4.
    IfRk4,
    /// Integrating-factor forward Euler (diagnostic only).
    IfEuler,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::IfRk4 => "ifrk4",
            Scheme::IfEuler => "ifeuler",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ifrk4" => Ok(Scheme::IfRk4),
            "ifeuler" => Ok(Scheme::IfEuler),
            other => Err(format!("unknown scheme '{other}' (expected ifrk4|ifeuler)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StepSize {
    Fixed(f64),
    /// `dt = cfl · Δx / max(max|u|, ε)` every step.
    Auto,
}

impl fmt::Display for StepSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepSize::Fixed(dt) => write!(f, "{dt}"),
            StepSize::Auto => f.write_str("auto"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeStepper {
    pub scheme: Scheme,
    pub step: StepSize,
    pub cfl_number: f64,
    /// Upper bound on automatic steps; keeps the dissipation quadrature
    /// accurate when the flow is slow.
    pub dt_max: f64,
}

impl TimeStepper {
    pub const DEFAULT_CFL: f64 = 0.5;
    /// Floor on `max|u|` in the CFL formula.
    pub const SPEED_FLOOR: f64 = 1e-12;
    pub const DEFAULT_DT_MAX: f64 = 1e-2;

    pub fn fixed(dt: f64) -> Self {
        Self {
            scheme: Scheme::IfRk4,
            step: StepSize::Fixed(dt),
            cfl_number: Self::DEFAULT_CFL,
            dt_max: Self::DEFAULT_DT_MAX,
        }
    }

    pub fn auto(cfl_number: f64) -> Self {
        Self {
            scheme: Scheme::IfRk4,
            step: StepSize::Auto,
            cfl_number,
            dt_max: Self::DEFAULT_DT_MAX,
        }
    }

    pub fn with_dt_max(mut self, dt_max: f64) -> Self {
        self.dt_max = dt_max;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub(crate) fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let StepSize::Fixed(dt) = self.step {
            if !(dt > 0.0 && dt.is_finite()) {
                out.push(format!("dt must be positive (got {dt})"));
            }
        }
        if !(self.cfl_number > 0.0 && self.cfl_number <= 1.0) {
            out.push(format!("cfl outside (0,1] (got {})", self.cfl_number));
        }
        if !(self.dt_max > 0.0) {
            out.push(format!("dt_max must be positive (got {})", self.dt_max));
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
}

/// Time, field, and the running dissipation integrals of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub theta: SpectralField,
    /// `∫₀ᵗ ‖|∂₁|^α θ‖²_{L²}`
    pub diss1_integral: f64,
    /// `∫₀ᵗ ‖|∂₂|^β θ‖²_{L²}`
    pub diss2_integral: f64,
    /// `∫₀ᵗ ‖|∂₁|^α θ‖²_{H¹}`
    pub h1_diss1_integral: f64,
    /// `∫₀ᵗ ‖|∂₂|^β θ‖²_{H¹}`
    pub h1_diss2_integral: f64,
    pub step_count: u64,
}

impl SimState {
    pub fn new(theta: SpectralField) -> Self {
        Self {
            t: 0.0,
            theta,
            diss1_integral: 0.0,
            diss2_integral: 0.0,
            h1_diss1_integral: 0.0,
            h1_diss2_integral: 0.0,
            step_count: 0,
        }
    }
}

/// Written when a step produces non-finite coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowUpReport {
    pub t: f64,
    pub step_count: u64,
    pub last_sample: Option<NormSample>,
}

impl fmt::Display for BlowUpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "non-finite coefficients after step {} at t = {}",
            self.step_count, self.t
        )?;
        if let Some(s) = &self.last_sample {
            write!(f, " (last sample t = {}, L² = {:e}, H¹ = {:e})", s.t, s.l2, s.h1)?;
        }
        Ok(())
    }
}
