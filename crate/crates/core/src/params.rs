use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where an `(α, β)` pair sits relative to the known regularity results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `min{α,β} = 1/2` and `max{α,β} ∈ (1/2, 1)`.
    SemiCritical,
    /// Ye's condition on `β` holds (see [`satisfies_ye_condition`]).
    YeRegion,
    Other,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SemiCritical => "SEMI_CRITICAL",
            Regime::YeRegion => "YE_REGION",
            Regime::Other => "OTHER",
        })
    }
}

/// `β > 1/(2α+1)` for `0 < α ≤ 1/2`, `β > (1-α)/(2α)` for `1/2 < α < 1`.
pub fn satisfies_ye_condition(alpha: f64, beta: f64) -> bool {
    if alpha > 0.0 && alpha <= 0.5 {
        beta > 1.0 / (2.0 * alpha + 1.0)
    } else if alpha > 0.5 && alpha < 1.0 {
        beta > (1.0 - alpha) / (2.0 * alpha)
    } else {
        false
    }
}

pub fn is_semi_critical(alpha: f64, beta: f64) -> bool {
    let (lo, hi) = (alpha.min(beta), alpha.max(beta));
    lo == 0.5 && hi > 0.5 && hi < 1.0
}

pub fn classify(alpha: f64, beta: f64) -> Regime {
    if is_semi_critical(alpha, beta) {
        Regime::SemiCritical
    } else if satisfies_ye_condition(alpha, beta) {
        Regime::YeRegion
    } else {
        Regime::Other
    }
}

/// Dissipation orders `α, β ∈ (0,1]` and strengths `μ, ν ≥ 0` of
/// `∂ₜθ + u·∇θ + μ|∂₁|^{2α}θ + ν|∂₂|^{2β}θ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AqgParams {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub nu: f64,
}

impl AqgParams {
    pub fn new(alpha: f64, beta: f64, mu: f64, nu: f64) -> Result<Self> {
        let problems = Self::violations(alpha, beta, mu, nu);
        if problems.is_empty() {
            Ok(Self { alpha, beta, mu, nu })
        } else {
            Err(Error::InvalidParameter(problems.join("; ")))
        }
    }

    pub fn violations(alpha: f64, beta: f64, mu: f64, nu: f64) -> Vec<String> {
        let mut out = Vec::new();
        if !(alpha > 0.0 && alpha <= 1.0) {
            out.push(format!("alpha outside (0,1] (got {alpha})"));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            out.push(format!("beta outside (0,1] (got {beta})"));
        }
        if !(mu >= 0.0 && mu.is_finite()) {
            out.push(format!("mu must be a nonnegative real (got {mu})"));
        }
        if !(nu >= 0.0 && nu.is_finite()) {
            out.push(format!("nu must be a nonnegative real (got {nu})"));
        }
        out
    }

    pub fn regime(&self) -> Regime {
        classify(self.alpha, self.beta)
    }

    pub fn is_inviscid(&self) -> bool {
        self.mu == 0.0 && self.nu == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_cells() {
        assert_eq!(classify(0.5, 0.75), Regime::SemiCritical);
        assert!(satisfies_ye_condition(0.5, 0.75));
        assert_eq!(classify(0.75, 0.5), Regime::SemiCritical);
        // 1/2 > 1/(2·1/2 + 1) is false, and max must exceed 1/2
        assert!(!satisfies_ye_condition(0.5, 0.5));
        assert_eq!(classify(0.5, 0.5), Regime::Other);
        // 3/4 > (1 - 3/4)/(2·3/4) = 1/6
        assert_eq!(classify(0.75, 0.75), Regime::YeRegion);
        // 1/4 > 1/(1/2 + 1) = 2/3 is false
        assert_eq!(classify(0.25, 0.25), Regime::Other);
        assert_eq!(classify(0.25, 0.7), Regime::YeRegion);
    }

    #[test]
    fn parameter_ranges() {
        assert!(AqgParams::new(1.5, 0.5, 1.0, 1.0).is_err());
        assert!(AqgParams::new(0.5, 0.0, 1.0, 1.0).is_err());
        assert!(AqgParams::new(0.5, 0.5, -1.0, 1.0).is_err());
        assert!(AqgParams::new(1.0, 1.0, 0.0, 0.0).is_ok());
        let e = AqgParams::new(1.5, 0.5, 1.0, 1.0).unwrap_err().to_string();
        assert!(e.contains("alpha outside (0,1]"), "{e}");
    }
}
