//! Numerical checkers for the product, embedding, interpolation,
//! commutator and Riesz inequalities used by the energy estimates.
//!
//! Each checker evaluates both sides on a concrete band-limited input and
//! returns a [`NormReport`]. Where the inequality carries an unspecified
//! constant the reported ratio is that constant's empirical lower bound
//! for the given input.

use serde::Serialize;

use super::sobolev::{lp_of_samples, sobolev_norm, Flavor};
use crate::error::{Error, Result};
use crate::spectral::{abs_grad_pow, exact_product, riesz, Axis, SpectralField};

/// Relative slack for `holds_with_constant_one`.
pub const CONSTANT_ONE_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, `0` when both vanish, `∞` when only `rhs` does.
    pub ratio: f64,
    pub holds_with_constant_one: bool,
}

impl NormReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            lhs,
            rhs,
            ratio,
            holds_with_constant_one: lhs <= rhs * (1.0 + CONSTANT_ONE_SLACK),
        }
    }
}

/// One CSV row: `test,params,lhs,rhs,ratio`.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaRecord {
    pub test: String,
    pub params: String,
    pub report: NormReport,
}

impl LemmaRecord {
    pub const CSV_HEADER: &'static str = "test,params,lhs,rhs,ratio";

    pub fn new(test: impl Into<String>, params: impl Into<String>, report: NormReport) -> Self {
        Self {
            test: test.into(),
            params: params.into(),
            report,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.16e},{:.16e},{:.16e}",
            self.test, self.params, self.report.lhs, self.report.rhs, self.report.ratio
        )
    }
}

/// `‖|∂_i|^{z s₁+(1-z) s₂} f‖ ≤ ‖|∂_i|^{s₁} f‖^z ‖|∂_i|^{s₂} f‖^{1-z}`, all
/// norms in the same `H^s` (or `Ḣ^s`). Hölder's inequality gives constant 1.
pub fn check_interpolation(
    f: &SpectralField,
    axis: Axis,
    s: f64,
    s1: f64,
    s2: f64,
    z: f64,
    flavor: Flavor,
) -> Result<NormReport> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::invalid(format!("interpolation weight z outside [0,1] (got {z})")));
    }
    if s1 == s2 && z != 0.0 && z != 1.0 {
        return Err(Error::invalid("s1 and s2 must differ for interior z"));
    }
    let order = z * s1 + (1.0 - z) * s2;
    let lhs = sobolev_norm(f, s, flavor, Some((axis, order)));
    let a = sobolev_norm(f, s, flavor, Some((axis, s1)));
    let b = sobolev_norm(f, s, flavor, Some((axis, s2)));
    Ok(NormReport::new(lhs, a.powf(z) * b.powf(1.0 - z)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductVariant {
    /// `‖fg‖ ≤ C(‖f‖_{s₁}‖g‖_{s₂} + ‖f‖_{s₂}‖g‖_{s₁})`
    Symmetric,
    /// `‖fg‖ ≤ C‖f‖_{s₁}‖g‖_{s₂}`, needs `s₂ < 1`
    Asymmetric,
}

/// `‖fg‖_{Ḣ^{s₁+s₂-1}}` against the homogeneous product-rule bound.
pub fn check_product(
    f: &SpectralField,
    g: &SpectralField,
    s1: f64,
    s2: f64,
    variant: ProductVariant,
) -> Result<NormReport> {
    let mut problems = Vec::new();
    if !(s1 < 1.0) {
        problems.push(format!("product rule needs s1 < 1 (got {s1})"));
    }
    if !(s1 + s2 > 0.0) {
        problems.push(format!("product rule needs s1 + s2 > 0 (got {})", s1 + s2));
    }
    if variant == ProductVariant::Asymmetric && !(s2 < 1.0) {
        problems.push(format!("asymmetric product rule needs s2 < 1 (got {s2})"));
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParameter(problems.join("; ")));
    }
    let fg = exact_product(f, g)?;
    let h = |x: &SpectralField, s: f64| sobolev_norm(x, s, Flavor::Homogeneous, None);
    let lhs = h(&fg, s1 + s2 - 1.0);
    let rhs = match variant {
        ProductVariant::Symmetric => h(f, s1) * h(g, s2) + h(f, s2) * h(g, s1),
        ProductVariant::Asymmetric => h(f, s1) * h(g, s2),
    };
    Ok(NormReport::new(lhs, rhs))
}

/// `‖f‖_{L^p} ≤ C ‖|∇|^σ f‖_{L²}` with `1/p + σ/2 = 1/2`, mean-zero `f`.
pub fn check_embedding(f: &SpectralField, sigma: f64, p: f64) -> Result<NormReport> {
    if !(0.0..1.0).contains(&sigma) {
        return Err(Error::invalid(format!("sigma outside [0,1) (got {sigma})")));
    }
    let expected = 2.0 / (1.0 - sigma);
    if (p - expected).abs() > 1e-12 * expected {
        return Err(Error::invalid(format!(
            "embedding exponent must be p = 2/(1-sigma) = {expected} (got {p})"
        )));
    }
    let mean = f.mean().norm();
    if mean > 1e-14 * f.max_abs_coeff().max(1.0) {
        return Err(Error::NonMeanZero(mean));
    }
    let lhs = lp_of_samples(f.grid(), &f.to_physical(), p);
    let rhs = sobolev_norm(f, sigma, Flavor::Homogeneous, None);
    Ok(NormReport::new(lhs, rhs))
}

/// Result of [`check_commutator`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorCheck {
    pub report: NormReport,
    /// Pointwise kernel scan over the grid's lattice, run on grids of at
    /// most 17 × 17 modes.
    pub kernel: Option<KernelScan>,
}

/// `‖|∇|^s(fg) − f|∇|^s g‖_{L²}` against
/// `s 2^s (‖|∇|^{s+α}f‖ ‖|∇|^{1−α}g‖ + ‖|∇|^{s−1+α}g‖ ‖|∇|^{2−α}f‖)`.
pub fn check_commutator(f: &SpectralField, g: &SpectralField, s: f64, alpha: f64) -> Result<CommutatorCheck> {
    if !(s > 1.0) {
        return Err(Error::invalid(format!("commutator estimate needs s > 1 (got {s})")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha outside (0,1) (got {alpha})")));
    }
    let full = abs_grad_pow(&exact_product(f, g)?, s);
    let split = exact_product(f, &abs_grad_pow(g, s))?;
    let lhs = full.sub(&split)?.l2_norm();

    let h = |x: &SpectralField, t: f64| sobolev_norm(x, t, Flavor::Homogeneous, None);
    let rhs = s
        * 2f64.powf(s)
        * (h(f, s + alpha) * h(g, 1.0 - alpha) + h(g, s - 1.0 + alpha) * h(f, 2.0 - alpha));

    let grid = f.grid();
    let kernel = (grid.n1() <= 16 && grid.n2() <= 16).then(|| {
        let r1 = (grid.n1() / 2) as i64;
        let r2 = (grid.n2() / 2) as i64;
        let unit = grid.k_unit();
        let lattice: Vec<(f64, f64)> = (-r1..=r1)
            .flat_map(|a| (-r2..=r2).map(move |b| (a as f64 * unit, b as f64 * unit)))
            .collect();
        scan_pairs(&lattice, s)
    });
    Ok(CommutatorCheck {
        report: NormReport::new(lhs, rhs),
        kernel,
    })
}

/// `max(‖R₁f‖_{L^p}, ‖R₂f‖_{L^p})` against `‖f‖_{L^p}`.
pub fn check_riesz_bound(f: &SpectralField, p: f64) -> Result<NormReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::invalid(format!("Riesz bound needs 1 < p < ∞ (got {p})")));
    }
    let grid = f.grid();
    let lp = |x: &SpectralField| lp_of_samples(grid, &x.to_physical(), p);
    let lhs = lp(&riesz(f, Axis::X1)).max(lp(&riesz(f, Axis::X2)));
    Ok(NormReport::new(lhs, lp(f)))
}

/// Outcome of checking `||ξ|^s − |η|^s| ≤ s 2^{s−1}(|ξ−η|^s + |η|^{s−1}|ξ−η|)`
/// over every ordered pair of a point set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelScan {
    pub s: f64,
    pub pairs: usize,
    pub violations: usize,
    /// Largest `lhs / rhs` over pairs with `rhs > 0`.
    pub worst_ratio: f64,
}

impl KernelScan {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Both sides of the kernel inequality at `(ξ, η)`.
pub fn commutator_kernel(xi: (f64, f64), eta: (f64, f64), s: f64) -> (f64, f64) {
    let nxi = xi.0.hypot(xi.1);
    let neta = eta.0.hypot(eta.1);
    let d = (xi.0 - eta.0).hypot(xi.1 - eta.1);
    let lhs = (nxi.powf(s) - neta.powf(s)).abs();
    let eta_term = if neta == 0.0 { 0.0 } else { neta.powf(s - 1.0) * d };
    let rhs = s * 2f64.powf(s - 1.0) * (d.powf(s) + eta_term);
    (lhs, rhs)
}

/// Exhaustive scan over the integer lattice `{-r..=r}²` (both `ξ` and `η`).
pub fn commutator_kernel_scan(radius: i64, s: f64) -> KernelScan {
    let lattice: Vec<(f64, f64)> = (-radius..=radius)
        .flat_map(|a| (-radius..=radius).map(move |b| (a as f64, b as f64)))
        .collect();
    scan_pairs(&lattice, s)
}

fn scan_pairs(points: &[(f64, f64)], s: f64) -> KernelScan {
    let mut scan = KernelScan {
        s,
        pairs: 0,
        violations: 0,
        worst_ratio: 0.0,
    };
    for &xi in points {
        for &eta in points {
            let (lhs, rhs) = commutator_kernel(xi, eta, s);
            scan.pairs += 1;
            // 1e-12 relative covers roundoff in the powers on exact ties.
            if lhs > rhs * (1.0 + 1e-12) {
                scan.violations += 1;
            }
            if rhs > 0.0 {
                scan.worst_ratio = scan.worst_ratio.max(lhs / rhs);
            }
        }
    }
    scan
}
