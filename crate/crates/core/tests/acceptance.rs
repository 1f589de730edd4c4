//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test --release --test acceptance` (the test profile is
//! already optimized, so plain `cargo test` works too).

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::time::Instant;

use aqg::diagnostics::{
    envelope_constant, envelope_stability, h1_bound, hs_bound, maximum_principle, perturbation, twin_experiment,
    twin_scaling, LpNorm, NormSeries, SeriesMeta, SCALING_BAND,
};
use aqg::dynamics::{galerkin_pair, nonlinear_term, simulate, SimulateOptions, TimeStepper};
use aqg::init::{cosine, normalized, random_band_limited, random_smooth, Spectrum};
use aqg::io::csv::read_norm_series;
use aqg::io::runner::{execute, Command};
use aqg::io::{parse_config, RunConfig};
use aqg::norms::{check_interpolation, commutator_kernel_scan, Corpus, Flavor};
use aqg::spectral::{riesz_perp, Axis, GridSpec};
use aqg::AqgParams;

// Tolerances, pinned.
const C1_REL: f64 = 1e-8;
const C1_SECONDS: f64 = 5.0;
const C2_LEDGER: f64 = 1e-6;
const C2_SHRINK: f64 = 8.0;
const C3_SLACK: f64 = 1e-8;
const C4_REL: f64 = 1e-8;
const C5_SKEW: f64 = 1e-11;
const C6_DIV: f64 = 1e-13;
const C9_GROWTH: f64 = 1e-3;
const C9_ENVELOPE: f64 = 0.2;
const C11_ORDER: (f64, f64) = (3.7, 4.3);

// Desk configuration shared by criteria 2, 3, 4, 9, 10 and 13.
const SEED: u64 = 7;
const BAND: f64 = 4.0;
const S: f64 = 1.5;

struct Report {
    passed: usize,
    total: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
        println!("[{}] {id:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn params() -> AqgParams {
    AqgParams::new(0.5, 0.75, 1.0, 1.0).unwrap()
}

fn desk_data(n: usize) -> aqg::SpectralField {
    random_smooth(GridSpec::square(n).unwrap(), SEED, BAND, S, 1.0)
}

fn ledger_residual(series: &NormSeries) -> f64 {
    let e0 = series.samples[0].l2.powi(2);
    let AqgParams { mu, nu, .. } = series.meta.params;
    series
        .samples
        .iter()
        .map(|s| (s.l2 * s.l2 + 2.0 * mu * s.diss1_int + 2.0 * nu * s.diss2_int - e0).abs() / e0)
        .fold(0.0, f64::max)
}

fn c1(r: &mut Report) {
    let g = GridSpec::square(64).unwrap();
    let start = Instant::now();
    let tr = simulate(
        &cosine(g, Axis::X1, 1, 1.0),
        params(),
        &TimeStepper::fixed(1e-3),
        &SimulateOptions::new(1.0, 0.1),
    )
    .unwrap();
    let secs = start.elapsed().as_secs_f64();
    let exact = 2f64.sqrt() * PI * (-1f64).exp();
    let err = (tr.final_state.theta.l2_norm() - exact).abs() / exact;
    r.line(
        1,
        "exact linear decay",
        err <= C1_REL && secs < C1_SECONDS,
        format!("rel err {err:.2e} (tol {C1_REL:e}), {secs:.2} s (limit {C1_SECONDS} s)"),
    );
}

fn c2_c3(r: &mut Report) {
    let f = desk_data(128);
    let opts = SimulateOptions::new(5.0, 0.1);
    let coarse = simulate(&f, params(), &TimeStepper::fixed(5e-3), &opts).unwrap();
    let fine = simulate(&f, params(), &TimeStepper::fixed(2.5e-3), &opts).unwrap();
    let (rc, rf) = (ledger_residual(&coarse.series), ledger_residual(&fine.series));
    let shrink = rc / rf;
    r.line(
        2,
        "energy ledger",
        rf <= C2_LEDGER && rc <= C2_LEDGER && shrink >= C2_SHRINK,
        format!(
            "residual {rc:.2e} at dt=5e-3, {rf:.2e} at dt=2.5e-3 (tol {C2_LEDGER:e}); shrink {shrink:.1}x (min {C2_SHRINK}x)"
        ),
    );
    let mp = maximum_principle(&fine.series, &LpNorm::ALL);
    r.line(
        3,
        "maximum principle",
        mp.passed() && mp.worst_violation <= C3_SLACK,
        format!("worst relative growth of L2/L4/Linf {:.2e} (tol {C3_SLACK:e})", mp.worst_violation),
    );
}

fn c4(r: &mut Report) {
    let f = desk_data(64);
    let p = AqgParams::new(0.5, 0.75, 0.0, 0.0).unwrap();
    let tr = simulate(&f, p, &TimeStepper::fixed(1e-3), &SimulateOptions::new(1.0, 0.5)).unwrap();
    let l0 = f.l2_norm();
    let err = (tr.final_state.theta.l2_norm() - l0).abs() / l0;
    r.line(4, "inviscid conservation", err <= C4_REL, format!("rel L2 drift {err:.2e} (tol {C4_REL:e})"));
}

fn c5_c6(r: &mut Report) {
    let g = GridSpec::square(64).unwrap();
    let (mut skew, mut div) = (0.0f64, 0.0f64);
    for seed in 0..100u64 {
        let th = random_band_limited(g, 1000 + seed, 12.0, Spectrum::Algebraic(1.0));
        let n = nonlinear_term(&th);
        skew = skew.max(n.inner(&th).unwrap().abs() / th.l2_norm_sq());

        let (u1, u2) = riesz_perp(&th);
        let mut worst = 0.0f64;
        let mut top = 0.0f64;
        for ((i1, i2), a) in u1.coeffs().indexed_iter() {
            let (k1, k2) = g.wavenumber(i1, i2);
            let b = u2.coeffs()[(i1, i2)];
            worst = worst.max((a * k1 as f64 + b * k2 as f64).norm());
            top = top.max(a.norm()).max(b.norm());
        }
        div = div.max(worst / top);
    }
    r.line(
        5,
        "skew-symmetry",
        skew <= C5_SKEW,
        format!("max |(N(θ),θ)|/‖θ‖² over 100 fields {skew:.2e} (tol {C5_SKEW:e})"),
    );
    r.line(
        6,
        "divergence-free velocity",
        div <= C6_DIV,
        format!("max |k·û|/max|û| over 100 fields {div:.2e} (tol {C6_DIV:e})"),
    );
}

fn c7(r: &mut Report) {
    let g = GridSpec::square(32).unwrap();
    let corpus = Corpus::new(2024, 1000, 8.0);
    let p = params();
    let mut cases = 0usize;
    let mut holds = 0usize;
    let mut worst = 0.0f64;
    for axis in [Axis::X1, Axis::X2] {
        let gamma = if axis == Axis::X1 { p.alpha } else { p.beta };
        for z in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let reports = corpus
                .map(g, |f| check_interpolation(f, axis, S, gamma, 1.0 + gamma, z, Flavor::Inhomogeneous))
                .unwrap();
            for rep in reports {
                cases += 1;
                holds += rep.holds_with_constant_one as usize;
                worst = worst.max(rep.ratio);
            }
        }
    }
    r.line(
        7,
        "interpolation, constant 1",
        holds == cases && cases == 10_000,
        format!("{holds}/{cases} cases hold; max ratio {worst:.15}"),
    );
}

fn c8(r: &mut Report) {
    let scans: Vec<_> = [1.25, 1.5, 2.0].iter().map(|&s| commutator_kernel_scan(8, s)).collect();
    let ok = scans.iter().all(|s| s.holds());
    let detail = scans
        .iter()
        .map(|s| format!("s={}: {} violations in {} pairs, worst {:.3}", s.s, s.violations, s.pairs, s.worst_ratio))
        .collect::<Vec<_>>()
        .join("; ");
    r.line(8, "commutator kernel", ok, detail);
}

fn desk_config(n: usize, out: &Path) -> RunConfig {
    parse_config(&format!(
        "[grid]\nn1 = {n}\nn2 = {n}\n[params]\nalpha = 0.5\nbeta = 0.75\n[run]\nhorizon = 10\nsample_every = 0.1\ns_list = {S}\n\
         [initial]\ninitial = random\nseed = {SEED}\nband = {BAND}\ntarget_hs = 1\n[output]\noutput_dir = {}\ncharts = false\n",
        out.display()
    ))
    .unwrap()
}

fn read_series(cfg: &RunConfig, dir: &Path) -> NormSeries {
    let meta = SeriesMeta {
        params: cfg.params,
        s_list: cfg.s_list.clone(),
    };
    let norms = fs::read_to_string(dir.join("norms.csv")).unwrap();
    let h1 = fs::read_to_string(dir.join("h1_dissipation.csv")).unwrap();
    read_norm_series(&norms, Some(&h1), meta).unwrap()
}

fn c9(r: &mut Report, root: &Path) -> std::path::PathBuf {
    let fine_dir = root.join("desk256");
    let cfg = desk_config(256, &fine_dir);
    let start = Instant::now();
    let outcome = execute(Command::Run, &cfg).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let fine = read_series(&cfg, &fine_dir);

    let coarse_dir = root.join("desk128");
    let coarse_cfg = desk_config(128, &coarse_dir);
    execute(Command::Run, &coarse_cfg).unwrap();
    let coarse = read_series(&coarse_cfg, &coarse_dir);

    let h1 = h1_bound(&fine, &cfg.params);
    let hs = hs_bound(&fine, S).unwrap();
    let (c_fine, _) = envelope_constant(&fine, S).unwrap();
    let (c_coarse, _) = envelope_constant(&coarse, S).unwrap();
    let stab = envelope_stability(c_coarse, c_fine);
    let completed = fine.last().is_some_and(|s| s.t == 10.0) && outcome.code != 2;
    let ok = completed
        && h1.worst_violation <= C9_GROWTH
        && hs.worst_violation <= C9_GROWTH
        && stab.worst_violation <= C9_ENVELOPE;
    r.line(
        9,
        "H1/H^s boundedness",
        ok,
        format!(
            "N=256 T=10 in {secs:.1} s; running-max growth H1 {:.1e}, H^{S} {:.1e} (tol {C9_GROWTH:e}); \
             Gronwall constant {c_coarse:.3e} (N=128) vs {c_fine:.3e} (N=256), spread {:.2} (tol {C9_ENVELOPE})",
            h1.worst_violation, hs.worst_violation, stab.worst_violation
        ),
    );

    fine_dir
}

fn c13(r: &mut Report, root: &Path, fine_dir: &Path) {
    let again = root.join("desk256_again");
    execute(Command::Run, &desk_config(256, &again)).unwrap();
    let a = fs::read(fine_dir.join("norms.csv")).unwrap();
    let b = fs::read(again.join("norms.csv")).unwrap();
    r.line(
        13,
        "determinism",
        a == b,
        format!("norms.csv {} vs {} bytes, identical: {}", a.len(), b.len(), a == b),
    );
}

fn c10(r: &mut Report) {
    let f = desk_data(128);
    let dir = perturbation(&f, 1, BAND);
    let opts = SimulateOptions::new(2.0, 0.1);
    let stepper = TimeStepper::auto(0.5);
    let sc = twin_scaling(&f, &dir, 1e-6, params(), &stepper, &opts).unwrap();
    let zero = twin_experiment(&f, &dir, 0.0, params(), &stepper, &opts).unwrap();
    let ok = sc.is_linear() && zero.identical && zero.final_separation() == 0.0;
    r.line(
        10,
        "uniqueness contraction",
        ok,
        format!(
            "‖ω‖(T) ratio {:.6} for δ=1e-6/1e-7 (band [{}, {}]); δ=0 bit-identical: {}",
            sc.ratio, SCALING_BAND.0, SCALING_BAND.1, zero.identical
        ),
    );
}

fn c11(r: &mut Report) {
    let g = GridSpec::square(64).unwrap();
    let f = random_smooth(g, SEED, BAND, S, 10.0);
    let opts = SimulateOptions::new(1.0, 1.0);
    let run = |dt: f64| simulate(&f, params(), &TimeStepper::fixed(dt), &opts).unwrap().final_state.theta;
    let dts = [1e-2, 5e-3, 2.5e-3];
    let reference = run(dts[2] / 8.0);
    let errs: Vec<f64> = dts.iter().map(|&dt| run(dt).sub(&reference).unwrap().l2_norm()).collect();
    let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let ok = orders.iter().all(|o| (C11_ORDER.0..=C11_ORDER.1).contains(o));
    r.line(
        11,
        "IF-RK4 order",
        ok,
        format!(
            "errors {:.2e}, {:.2e}, {:.2e}; orders {:.3}, {:.3} (band [{}, {}])",
            errs[0], errs[1], errs[2], orders[0], orders[1], C11_ORDER.0, C11_ORDER.1
        ),
    );
}

fn c12(r: &mut Report) {
    let g = GridSpec::square(256).unwrap();
    let f = normalized(random_band_limited(g, 3, 80.0, Spectrum::Exponential(4.0)), S, 1.0);
    let opts = SimulateOptions::new(1.0, 0.5);
    let d: Vec<f64> = [8.0, 16.0, 32.0]
        .iter()
        .map(|&n| {
            galerkin_pair(&f, params(), &TimeStepper::auto(0.5), &opts, n, 0.0)
                .unwrap()
                .final_difference()
        })
        .collect();
    let ok = d[0] > d[1] && d[1] > d[2];
    r.line(
        12,
        "Galerkin refinement",
        ok,
        format!("‖θ_n − θ_2n‖(1) = {:.2e}, {:.2e}, {:.2e} for n = 8, 16, 32", d[0], d[1], d[2]),
    );
}

fn main() {
    let root = tempfile::tempdir().unwrap();
    let mut r = Report { passed: 0, total: 0 };
    let start = Instant::now();
    c1(&mut r);
    c2_c3(&mut r);
    c4(&mut r);
    c5_c6(&mut r);
    c7(&mut r);
    c8(&mut r);
    let desk = c9(&mut r, root.path());
    c10(&mut r);
    c11(&mut r);
    c12(&mut r);
    c13(&mut r, root.path(), &desk);
    println!(
        "acceptance: {}/{} criteria passed in {:.1} s",
        r.passed,
        r.total,
        start.elapsed().as_secs_f64()
    );
    if r.passed != r.total {
        std::process::exit(1);
    }
}
