//! Time integration against closed forms and self-consistency checks.

use std::f64::consts::PI;

use aqg::diagnostics::{energy_ledger, maximum_principle, twin_experiment, perturbation, LpNorm};
use aqg::dynamics::{galerkin_pair, simulate, simulate_system, AqgSystem, Scheme, SimulateOptions, TimeStepper};
use aqg::init::{cosine, random_smooth};
use aqg::params::{classify, Regime};
use aqg::spectral::{Axis, GridSpec, SpectralField};
use aqg::AqgParams;
use num_complex::Complex64;

fn params(alpha: f64, beta: f64) -> AqgParams {
    AqgParams::new(alpha, beta, 1.0, 1.0).unwrap()
}

#[test]
fn linear_modes_decay_at_their_symbol() {
    // Without advection each mode decays at μ|ξ₁|^{2α} + ν|ξ₂|^{2β}.
    let g = GridSpec::square(32).unwrap();
    let p = params(0.3, 0.8);
    let mut f = SpectralField::zeros(g);
    f.set_mode(2, 3, Complex64::new(0.4, -0.1));
    f.set_mode(-1, 5, Complex64::new(0.2, 0.3));
    let sys = AqgSystem::new(g, p).without_nonlinearity();
    let tr = simulate_system(&sys, &f, &TimeStepper::fixed(0.01), &SimulateOptions::new(0.5, 0.5)).unwrap();
    let th = &tr.final_state.theta;
    for (k1, k2) in [(2i64, 3i64), (-1, 5)] {
        let rate = (k1.abs() as f64).powf(0.6) + (k2.abs() as f64).powf(1.6);
        let want = f.coeff(k1, k2) * (-rate * 0.5).exp();
        assert!((th.coeff(k1, k2) - want).norm() < 1e-14, "{k1},{k2}");
    }
}

#[test]
fn shear_modes_are_steady_solutions_of_advection() {
    // A function of x₂ alone has u parallel to x₁ and u·∇θ = 0.
    let g = GridSpec::square(32).unwrap();
    let f = cosine(g, Axis::X2, 3, 2.0);
    let tr = simulate(&f, AqgParams::new(0.5, 0.5, 0.0, 0.0).unwrap(), &TimeStepper::fixed(0.05), &SimulateOptions::new(1.0, 0.5))
        .unwrap();
    assert!(tr.final_state.theta.sub(&f).unwrap().max_abs_coeff() < 1e-15);
}

#[test]
fn energy_ledger_and_maximum_principle_hold_on_random_data() {
    let g = GridSpec::square(64).unwrap();
    let f = random_smooth(g, 3, 4.0, 1.5, 1.0);
    let tr = simulate(&f, params(0.5, 0.75), &TimeStepper::fixed(2.5e-3), &SimulateOptions::new(1.0, 0.1)).unwrap();
    let ledger = energy_ledger(&tr.series);
    assert!(ledger.passed(), "{ledger:?}");
    let mp = maximum_principle(&tr.series, &LpNorm::ALL);
    assert!(mp.passed(), "{mp:?}");
}

#[test]
fn euler_is_first_order() {
    let g = GridSpec::square(32).unwrap();
    let f = random_smooth(g, 8, 4.0, 1.5, 3.0);
    let p = params(0.5, 0.75);
    let opts = SimulateOptions::new(0.2, 0.2);
    let run = |dt: f64| {
        simulate(&f, p, &TimeStepper::fixed(dt).with_scheme(Scheme::IfEuler), &opts)
            .unwrap()
            .final_state
            .theta
    };
    let reference = simulate(&f, p, &TimeStepper::fixed(1e-4), &opts).unwrap().final_state.theta;
    let e1 = run(4e-3).sub(&reference).unwrap().l2_norm();
    let e2 = run(2e-3).sub(&reference).unwrap().l2_norm();
    let order = (e1 / e2).log2();
    assert!((order - 1.0).abs() < 0.15, "order {order}");
}

#[test]
fn auto_step_reaches_the_horizon_exactly() {
    let g = GridSpec::square(32).unwrap();
    let f = random_smooth(g, 1, 4.0, 1.5, 1.0);
    let tr = simulate(&f, params(0.5, 0.75), &TimeStepper::auto(0.5), &SimulateOptions::new(0.37, 0.1)).unwrap();
    assert_eq!(tr.final_state.t, 0.37);
    let t = tr.series.times();
    assert_eq!(t, vec![0.0, 0.1, 0.2, 0.30000000000000004, 0.37]);
}

#[test]
fn galerkin_difference_shrinks_with_the_cutoff() {
    let g = GridSpec::square(64).unwrap();
    let f = random_smooth(g, 4, 12.0, 1.5, 1.0);
    let opts = SimulateOptions::new(0.2, 0.1);
    let d: Vec<f64> = [2.0, 4.0, 8.0]
        .iter()
        .map(|&n| {
            galerkin_pair(&f, params(0.5, 0.75), &TimeStepper::fixed(5e-3), &opts, n, 0.0)
                .unwrap()
                .final_difference()
        })
        .collect();
    assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
}

#[test]
fn twin_at_zero_offset_is_bit_identical() {
    let g = GridSpec::square(32).unwrap();
    let f = random_smooth(g, 6, 4.0, 1.5, 1.0);
    let dir = perturbation(&f, 1, 4.0);
    let r = twin_experiment(&f, &dir, 0.0, params(0.5, 0.75), &TimeStepper::auto(0.5), &SimulateOptions::new(0.3, 0.1))
        .unwrap();
    assert!(r.identical);
    assert!(r.separation.iter().all(|s| s.omega == 0.0));
}

#[test]
fn regimes_match_their_definitions() {
    assert_eq!(classify(0.5, 0.75), Regime::SemiCritical);
    assert_eq!(classify(0.75, 0.5), Regime::SemiCritical);
    assert_eq!(classify(0.25, 0.75), Regime::YeRegion); // 0.75 > 1/1.5
    assert_eq!(classify(0.25, 0.5), Regime::Other);
    assert_eq!(classify(0.75, 0.25), Regime::YeRegion); // 0.25 > (1-α)/(2α) = 1/6
    assert_eq!(classify(1.0, 1.0), Regime::Other);
}

#[test]
fn cosine_closed_form_on_a_stretched_box() {
    // L = 4π: cos(x₁/2) is mode k₁ = 1 with ξ₁ = 1/2; decay (1/2)^{2α}.
    let g = GridSpec::new(32, 32, 4.0 * PI, 2.0 / 3.0, aqg::spectral::CutoffShape::Ball).unwrap();
    let f = cosine(g, Axis::X1, 1, 1.0);
    let p = params(0.5, 0.75);
    let tr = simulate(&f, p, &TimeStepper::fixed(1e-2), &SimulateOptions::new(1.0, 1.0)).unwrap();
    let want = 0.5 * (-0.5f64).exp();
    assert!((tr.final_state.theta.coeff(1, 0).re - want).abs() < 1e-13);
}
