use std::sync::{Arc, Mutex};

use ndarray::{Array2, Zip};
use num_complex::Complex64;
use rustfft::FftDirection;

use super::stepper::{BlowUpReport, Scheme, SimState, StepSize, TimeStepper};
use crate::error::{Error, Result};
use crate::params::AqgParams;
use crate::spectral::{
    dealiased_sum_of_products, fft2, forward_transform, in_cutoff, inverse_transform,
    inverse_transform_pair, GridSpec, SpectralField,
};

/// Symbol `μ|ξ₁|^{2α} + ν|ξ₂|^{2β}` of the anisotropic dissipation.
pub fn dissipation_symbol(params: &AqgParams, grid: &GridSpec) -> Array2<f64> {
    Array2::from_shape_fn(grid.shape(), |(i1, i2)| {
        let (x1, x2) = grid.xi(i1, i2);
        params.mu * abs_pow(x1, 2.0 * params.alpha) + params.nu * abs_pow(x2, 2.0 * params.beta)
    })
}

#[inline]
fn abs_pow(x: f64, p: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        0.0
    } else {
        a.powf(p)
    }
}

/// Dealiased advection term `u·∇θ` with `u = R^⊥θ`, on `θ`'s own grid.
pub fn nonlinear_term(theta: &SpectralField) -> SpectralField {
    let params = AqgParams {
        alpha: 1.0,
        beta: 1.0,
        mu: 0.0,
        nu: 0.0,
    };
    AqgSystem::new(*theta.grid(), params).nonlinear_term(theta)
}

/// Instantaneous dissipation integrands, in the order of the
/// [`SimState`] integrals.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DissipationRates {
    pub l2_1: f64,
    pub l2_2: f64,
    pub h1_1: f64,
    pub h1_2: f64,
}

impl DissipationRates {
    fn combine(terms: &[(f64, DissipationRates)]) -> Self {
        let mut out = Self::default();
        for (w, r) in terms {
            out.l2_1 += w * r.l2_1;
            out.l2_2 += w * r.l2_2;
            out.h1_1 += w * r.h1_1;
            out.h1_2 += w * r.h1_2;
        }
        out
    }
}

/// First stage `−P(u·∇θ)`, computed before the step size is fixed.
pub(crate) struct Prepared {
    pub nonlinear: Option<SpectralField>,
    pub max_speed: f64,
}

/// `(dt, e^{−dt·L}, e^{−dt·L/2})` of the last step size used.
type Factors = Arc<(f64, Array2<f64>, Array2<f64>)>;

/// The semi-discrete Galerkin system on one grid:
/// `∂ₜθ + P(u·∇θ) + μ|∂₁|^{2α}θ + ν|∂₂|^{2β}θ = 0`, where `P` keeps the
/// dealias mask, optionally intersected with a cutoff `J_n`.
#[derive(Debug)]
pub struct AqgSystem {
    grid: GridSpec,
    params: AqgParams,
    cutoff: Option<f64>,
    nonlinear: bool,
    symbol: Array2<f64>,
    keep: Array2<bool>,
    velocity: [Array2<Complex64>; 2],
    gradient: [Array2<Complex64>; 2],
    rate_weights: [Array2<f64>; 4],
    factors: Mutex<Option<Factors>>,
}

impl Clone for AqgSystem {
    fn clone(&self) -> Self {
        Self {
            grid: self.grid,
            params: self.params,
            cutoff: self.cutoff,
            nonlinear: self.nonlinear,
            symbol: self.symbol.clone(),
            keep: self.keep.clone(),
            velocity: self.velocity.clone(),
            gradient: self.gradient.clone(),
            rate_weights: self.rate_weights.clone(),
            factors: Mutex::new(None),
        }
    }
}

impl AqgSystem {
    pub fn new(grid: GridSpec, params: AqgParams) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let symbol = dissipation_symbol(&params, &grid);
        let keep = grid.dealias_mask();
        let mk = |f: &dyn Fn(f64, f64) -> Complex64| {
            Array2::from_shape_fn(grid.shape(), |(i1, i2)| {
                let (x1, x2) = grid.xi(i1, i2);
                f(x1, x2)
            })
        };
        let over_r = |x: f64, r: f64| if r == 0.0 { 0.0 } else { x / r };
        let velocity = [
            mk(&|x1, x2| -i * over_r(x2, x1.hypot(x2))),
            mk(&|x1, x2| i * over_r(x1, x1.hypot(x2))),
        ];
        let gradient = [mk(&|x1, _| i * x1), mk(&|_, x2| i * x2)];
        let area = grid.area();
        let w = |axis_first: bool, h1: bool| {
            Array2::from_shape_fn(grid.shape(), |(i1, i2)| {
                let (x1, x2) = grid.xi(i1, i2);
                let base = if axis_first {
                    abs_pow(x1, 2.0 * params.alpha)
                } else {
                    abs_pow(x2, 2.0 * params.beta)
                };
                let sob = if h1 { 1.0 + x1 * x1 + x2 * x2 } else { 1.0 };
                area * base * sob
            })
        };
        let rate_weights = [w(true, false), w(false, false), w(true, true), w(false, true)];
        Self {
            grid,
            params,
            cutoff: None,
            nonlinear: true,
            symbol,
            keep,
            velocity,
            gradient,
            rate_weights,
            factors: Mutex::new(None),
        }
    }

    fn factors(&self, dt: f64) -> Factors {
        let mut cache = self.factors.lock().unwrap_or_else(|e| e.into_inner());
        match cache.as_ref() {
            Some(f) if f.0 == dt => f.clone(),
            _ => {
                let f = Arc::new((
                    dt,
                    self.symbol.mapv(|s| (-dt * s).exp()),
                    self.symbol.mapv(|s| (-0.5 * dt * s).exp()),
                ));
                *cache = Some(f.clone());
                f
            }
        }
    }

    /// Restricts the system to `J_n`: modes inside the cutoff and the dealias mask.
    pub fn with_cutoff(mut self, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::invalid(format!("cutoff radius must be positive (got {radius})")));
        }
        let grid = self.grid;
        let shape = grid.cutoff_shape();
        for ((i1, i2), k) in self.keep.indexed_iter_mut() {
            let (x1, x2) = grid.xi(i1, i2);
            *k = *k && in_cutoff(shape, x1, x2, radius);
        }
        self.cutoff = Some(radius);
        Ok(self)
    }

    /// Drops the advection term, leaving pure anisotropic dissipation.
    pub fn without_nonlinearity(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn params(&self) -> &AqgParams {
        &self.params
    }

    pub fn cutoff(&self) -> Option<f64> {
        self.cutoff
    }

    pub fn is_nonlinear(&self) -> bool {
        self.nonlinear
    }

    pub fn symbol(&self) -> &Array2<f64> {
        &self.symbol
    }

    /// Projection onto the retained modes.
    pub fn project(&self, f: &SpectralField) -> SpectralField {
        let mut out = f.clone();
        Zip::from(out.coeffs_mut())
            .and(&self.keep)
            .for_each(|c, &k| {
                if !k {
                    *c = Complex64::default();
                }
            });
        out
    }

    pub fn nonlinear_term(&self, theta: &SpectralField) -> SpectralField {
        self.advection(theta, 1.0).0
    }

    /// Nonlinear right-hand side `−P(u·∇θ)`.
    fn rhs(&self, theta: &SpectralField) -> SpectralField {
        self.advection(theta, -1.0).0
    }

    /// `P(u·∇θ)` and `max |u|` on the collocation grid, scaled by `sign`.
    fn advection(&self, theta: &SpectralField, sign: f64) -> (SpectralField, f64) {
        let i = Complex64::new(0.0, 1.0);
        let c = theta.coeffs();
        let (mut out, max_speed) = if self.grid.mask_product_is_exact() {
            // u_j + i ∂_jθ in one array per component; the keep mask is the projection.
            let pack = |j: usize| {
                let mut z = Array2::<Complex64>::zeros(self.grid.shape());
                Zip::from(&mut z)
                    .and(c)
                    .and(&self.keep)
                    .and(&self.velocity[j])
                    .and(&self.gradient[j])
                    .for_each(|z, &c, &k, &v, &g| {
                        if k {
                            *z = c * (v + i * g);
                        }
                    });
                fft2(&mut z, FftDirection::Inverse);
                z
            };
            let (z1, z2) = (pack(0), pack(1));
            let mut acc = Array2::<f64>::zeros(self.grid.shape());
            let mut max_speed = 0.0f64;
            Zip::from(&mut acc).and(&z1).and(&z2).for_each(|a, p, q| {
                *a = sign * (p.re * p.im + q.re * q.im);
                max_speed = max_speed.max(p.re.hypot(q.re));
            });
            (forward_transform(self.grid, &acc).expect("shape"), max_speed)
        } else {
            let theta = self.project(theta);
            let times = |m: &Array2<Complex64>| {
                let mut c = theta.coeffs().clone();
                Zip::from(&mut c).and(m).for_each(|a, &b| *a *= b);
                SpectralField::from_coeffs(self.grid, c).expect("shape")
            };
            let (u1, u2) = (times(&self.velocity[0]), times(&self.velocity[1]));
            let (d1, d2) = (times(&self.gradient[0]), times(&self.gradient[1]));
            let (p1, p2) = inverse_transform_pair(u1.coeffs(), u2.coeffs());
            let max_speed = Zip::from(&p1).and(&p2).fold(0.0f64, |m, &a, &b| m.max(a.hypot(b)));
            let n = dealiased_sum_of_products(&[(&u1, &d1), (&u2, &d2)]);
            (if sign == 1.0 { n } else { n.scaled(sign) }, max_speed)
        };
        Zip::from(out.coeffs_mut()).and(&self.keep).for_each(|c, &k| {
            if !k {
                *c = Complex64::default();
            }
        });
        // u·∇θ = ∇·(uθ) has no mean.
        out.coeffs_mut()[(0, 0)] = Complex64::default();
        (out, max_speed)
    }

    pub fn dissipation_rates(&self, theta: &SpectralField) -> DissipationRates {
        let mut r = [0.0; 4];
        for (acc, w) in r.iter_mut().zip(&self.rate_weights) {
            *acc = Zip::from(theta.coeffs())
                .and(w)
                .fold(0.0, |s, c, &w| s + w * c.norm_sqr());
        }
        DissipationRates {
            l2_1: r[0],
            l2_2: r[1],
            h1_1: r[2],
            h1_2: r[3],
        }
    }

    pub(crate) fn prepare(&self, theta: &SpectralField) -> Prepared {
        if self.nonlinear {
            let (n, speed) = self.advection(theta, -1.0);
            Prepared {
                nonlinear: Some(n),
                max_speed: speed,
            }
        } else {
            let (u1, u2) = crate::spectral::riesz_perp(theta);
            let (p1, p2) = (inverse_transform(&u1), inverse_transform(&u2));
            let speed = Zip::from(&p1)
                .and(&p2)
                .fold(0.0f64, |m, &a, &b| m.max(a.hypot(b)));
            Prepared {
                nonlinear: None,
                max_speed: speed,
            }
        }
    }

    /// CFL step from a measured maximum speed.
    pub fn cfl_dt(&self, max_speed: f64, cfl_number: f64) -> f64 {
        cfl_number * self.grid.min_spacing() / max_speed.max(TimeStepper::SPEED_FLOOR)
    }

    /// CFL step capped by the stepper's `dt_max`.
    pub fn auto_dt(&self, max_speed: f64, stepper: &TimeStepper) -> f64 {
        self.cfl_dt(max_speed, stepper.cfl_number).min(stepper.dt_max)
    }

    /// One step, resolving `Auto` step sizes from the current state.
    pub fn step(&self, state: &SimState, stepper: &TimeStepper) -> Result<SimState> {
        stepper.validate()?;
        let prep = self.prepare(&state.theta);
        let dt = match stepper.step {
            StepSize::Fixed(dt) => dt,
            StepSize::Auto => self.auto_dt(prep.max_speed, stepper),
        };
        self.step_prepared(state, prep, stepper.scheme, dt)
    }

    /// One step of size `dt`.
    pub fn step_by(&self, state: &SimState, scheme: Scheme, dt: f64) -> Result<SimState> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid(format!("dt must be positive (got {dt})")));
        }
        let prep = self.prepare(&state.theta);
        self.step_prepared(state, prep, scheme, dt)
    }

    pub(crate) fn step_prepared(&self, state: &SimState, prep: Prepared, scheme: Scheme, dt: f64) -> Result<SimState> {
        let factors = self.factors(dt);
        let (e_full, e_half) = (&factors.1, &factors.2);
        let theta = &state.theta;

        let (next, rates) = match (scheme, prep.nonlinear) {
            (Scheme::IfRk4, None) => {
                let a = scale(theta, e_half);
                let c = scale(theta, e_full);
                let g0 = self.dissipation_rates(theta);
                let ga = self.dissipation_rates(&a);
                let gc = self.dissipation_rates(&c);
                let rates = DissipationRates::combine(&[(1.0 / 6.0, g0), (4.0 / 6.0, ga), (1.0 / 6.0, gc)]);
                (c, rates)
            }
            (Scheme::IfEuler, None) => (scale(theta, e_full), self.dissipation_rates(theta)),
            (Scheme::IfRk4, Some(n0)) => {
                let a = combine(&[(1.0, theta), (0.5 * dt, &n0)], Some(e_half));
                let na = self.rhs(&a);
                let b = add_scaled(&scale(theta, e_half), 0.5 * dt, &na);
                let nb = self.rhs(&b);
                let c = add_scaled(&scale(theta, e_full), dt, &scale(&nb, e_half));
                let nc = self.rhs(&c);

                let mut next = scale(theta, e_full);
                let mid = combine(&[(2.0, &na), (2.0, &nb)], Some(e_half));
                let incr = combine(&[(1.0, &scale(&n0, e_full)), (1.0, &mid), (1.0, &nc)], None);
                Zip::from(next.coeffs_mut())
                    .and(incr.coeffs())
                    .for_each(|x, &y| *x += y * (dt / 6.0));

                let rates = DissipationRates::combine(&[
                    (1.0 / 6.0, self.dissipation_rates(theta)),
                    (2.0 / 6.0, self.dissipation_rates(&a)),
                    (2.0 / 6.0, self.dissipation_rates(&b)),
                    (1.0 / 6.0, self.dissipation_rates(&c)),
                ]);
                (next, rates)
            }
            (Scheme::IfEuler, Some(n0)) => {
                let next = combine(&[(1.0, theta), (dt, &n0)], Some(e_full));
                (next, self.dissipation_rates(theta))
            }
        };

        if !next.is_finite() {
            return Err(Error::BlowUp(Box::new(BlowUpReport {
                t: state.t + dt,
                step_count: state.step_count + 1,
                last_sample: None,
            })));
        }

        Ok(SimState {
            t: state.t + dt,
            theta: next,
            diss1_integral: state.diss1_integral + dt * rates.l2_1,
            diss2_integral: state.diss2_integral + dt * rates.l2_2,
            h1_diss1_integral: state.h1_diss1_integral + dt * rates.h1_1,
            h1_diss2_integral: state.h1_diss2_integral + dt * rates.h1_2,
            step_count: state.step_count + 1,
        })
    }
}

fn scale(f: &SpectralField, factor: &Array2<f64>) -> SpectralField {
    let mut out = f.clone();
    Zip::from(out.coeffs_mut()).and(factor).for_each(|c, &e| *c *= e);
    out
}

fn add_scaled(f: &SpectralField, w: f64, g: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    Zip::from(out.coeffs_mut()).and(g.coeffs()).for_each(|a, &b| *a += b * w);
    out
}

/// `factor ∘ Σ w_j f_j`.
fn combine(terms: &[(f64, &SpectralField)], factor: Option<&Array2<f64>>) -> SpectralField {
    let mut out = terms[0].1.scaled(terms[0].0);
    for (w, f) in &terms[1..] {
        Zip::from(out.coeffs_mut()).and(f.coeffs()).for_each(|a, &b| *a += b * *w);
    }
    if let Some(e) = factor {
        out = scale(&out, e);
    }
    out
}
