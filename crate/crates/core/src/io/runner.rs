//! Orchestration behind the CLI subcommands. Every command validates the
//! config and builds the initial field before touching the filesystem, so
//! an invalid run leaves no partial output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{parse_config, InitialCondition, MonitorKind, RunConfig};
use super::csv::{h1_dissipation_csv, norms_csv, sweep_csv, verdicts_csv};
use super::snapshot::{snapshot_read_onto, snapshot_write};
use super::svg::line_chart;
use crate::diagnostics::{
    energy_ledger, h1_bound, hs_bound, hs_envelope, maximum_principle, perturbation, regime_sweep, twin_experiment,
    twin_scaling, LpNorm, MonitorVerdict, NormSeries,
};
use crate::dynamics::{galerkin_pair, simulate, BlowUpReport, Trajectory};
use crate::error::{Error, Result};
use crate::init::{cosine, normalized, random_band_limited};
use crate::norms::{
    check_commutator, check_embedding, check_interpolation, check_product, check_riesz_bound, commutator_kernel_scan,
    refine_pairs, refine_single, Corpus, Flavor, LemmaRecord, NormReport, ProductVariant,
};
use crate::params::AqgParams;
use crate::spectral::{Axis, SpectralField};

/// Overrides the directory that relative `output_dir` values resolve against.
pub const OUTPUT_ROOT_ENV: &str = "AQG_OUTPUT_ROOT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MONITOR_FAILURE: i32 = 1;
pub const EXIT_BLOW_UP: i32 = 2;
/// Bad config, unreadable input or an I/O failure.
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Run,
    Sweep,
    CheckLemmas,
    Twin,
    Galerkin,
}

impl std::fmt::Display for Command {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Command::Run => "run",
            Command::Sweep => "sweep",
            Command::CheckLemmas => "check-lemmas",
            Command::Twin => "twin",
            Command::Galerkin => "galerkin",
        })
    }
}

/// What a command did: exit code, where it wrote, one line per finding.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub output_dir: PathBuf,
    pub summary: Vec<String>,
}

/// Reads and parses a config file. A relative `file` initial condition is
/// resolved against the config's directory.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)?;
    let mut cfg = parse_config(&text)?;
    if let InitialCondition::File { path: p } = &mut cfg.initial {
        if p.is_relative() {
            if let Some(dir) = path.parent() {
                *p = dir.join(&*p);
            }
        }
    }
    Ok(cfg)
}

/// `output_dir`, placed under `$AQG_OUTPUT_ROOT` when that is set and the
/// directory is relative.
pub fn resolve_output_dir(cfg: &RunConfig) -> PathBuf {
    match std::env::var_os(OUTPUT_ROOT_ENV) {
        Some(root) if cfg.output_dir.is_relative() && !root.is_empty() => PathBuf::from(root).join(&cfg.output_dir),
        _ => cfg.output_dir.clone(),
    }
}

/// The configured initial data on the configured grid.
pub fn initial_field(cfg: &RunConfig) -> Result<SpectralField> {
    let grid = cfg.grid;
    match &cfg.initial {
        InitialCondition::Zero => Ok(SpectralField::zeros(grid)),
        InitialCondition::Cosine {
            axis,
            wavenumber,
            amplitude,
        } => {
            let axis = Axis::from_index(*axis).ok_or_else(|| Error::invalid(format!("axis must be 1 or 2 (got {axis})")))?;
            Ok(cosine(grid, axis, *wavenumber, *amplitude))
        }
        InitialCondition::Random {
            seed,
            band,
            spectrum,
            target_hs,
        } => {
            let s = cfg.s_list.first().copied().unwrap_or(0.0);
            Ok(normalized(random_band_limited(grid, *seed, *band, (*spectrum).into()), s, *target_hs))
        }
        InitialCondition::File { path } => {
            let (f, _) = snapshot_read_onto(path, &grid)?;
            if f.grid().shape() != grid.shape() || f.grid().box_size() != grid.box_size() {
                return Err(Error::invalid(format!(
                    "snapshot {} is {}x{} with L = {}, config wants {}x{} with L = {}",
                    path.display(),
                    f.grid().n1(),
                    f.grid().n2(),
                    f.grid().box_size(),
                    grid.n1(),
                    grid.n2(),
                    grid.box_size()
                )));
            }
            Ok(f)
        }
    }
}

/// Runs one subcommand end to end.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    let theta0 = initial_field(cfg)?;
    preflight(command, cfg)?;
    let dir = resolve_output_dir(cfg);
    fs::create_dir_all(&dir)?;
    write_manifest(&dir, command, cfg)?;
    let (code, summary) = match command {
        Command::Run => run(cfg, &theta0, &dir)?,
        Command::Sweep => sweep(cfg, &theta0, &dir)?,
        Command::CheckLemmas => check_lemmas(cfg, &dir)?,
        Command::Twin => twin(cfg, &theta0, &dir)?,
        Command::Galerkin => galerkin(cfg, &theta0, &dir)?,
    };
    Ok(Outcome {
        code,
        output_dir: dir,
        summary,
    })
}

/// Checks that can only fail for a specific command.
fn preflight(command: Command, cfg: &RunConfig) -> Result<()> {
    cfg.stepper.validate()?;
    cfg.simulate_options().validate()?;
    match command {
        Command::Sweep => {
            let problems: Vec<String> = cfg
                .sweep
                .alpha_grid
                .iter()
                .flat_map(|&a| cfg.sweep.beta_grid.iter().map(move |&b| (a, b)))
                .flat_map(|(a, b)| AqgParams::violations(a, b, cfg.params.mu, cfg.params.nu))
                .collect();
            if !problems.is_empty() {
                return Err(Error::Config(problems));
            }
        }
        Command::Galerkin => {
            let g = &cfg.grid;
            let nyquist = g.k_unit() * (g.n1().min(g.n2()) / 2) as f64;
            let bad: Vec<String> = cfg
                .galerkin
                .cutoffs
                .iter()
                .filter(|n| !(**n < nyquist))
                .map(|n| format!("galerkin_n entries must lie below the grid Nyquist {nyquist} (got {n})"))
                .collect();
            if !bad.is_empty() {
                return Err(Error::Config(bad));
            }
        }
        Command::Twin if !(cfg.twin.delta > 0.0) => {
            return Err(Error::Config(vec![format!(
                "twin needs delta > 0 (got {})",
                cfg.twin.delta
            )]));
        }
        _ => {}
    }
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: Command,
    version: &'a str,
    config: &'a RunConfig,
    config_text: String,
}

fn write_manifest(dir: &Path, command: Command, cfg: &RunConfig) -> Result<()> {
    let m = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        config_text: cfg.to_text(),
    };
    let json = serde_json::to_string_pretty(&m).map_err(|e| Error::invalid(e.to_string()))?;
    fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(())
}

/// Splits a blow-up off from other errors.
fn blow_up<T>(r: Result<T>) -> Result<std::result::Result<T, Box<BlowUpReport>>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::BlowUp(report)) => Ok(Err(report)),
        Err(e) => Err(e),
    }
}

fn write_blow_up(dir: &Path, report: &BlowUpReport) -> Result<(i32, Vec<String>)> {
    fs::write(dir.join("blowup.json"), report.to_json() + "\n")?;
    Ok((EXIT_BLOW_UP, vec![report.to_string()]))
}

fn exit_code(verdicts: &[MonitorVerdict]) -> i32 {
    if verdicts.iter().any(MonitorVerdict::is_failure) {
        EXIT_MONITOR_FAILURE
    } else {
        EXIT_OK
    }
}

/// Enabled monitors applied to a finished series.
pub fn apply_monitors(cfg: &RunConfig, series: &NormSeries) -> Result<Vec<MonitorVerdict>> {
    let mut out = Vec::new();
    for m in &cfg.monitors {
        match m {
            MonitorKind::EnergyLedger => out.push(energy_ledger(series)),
            MonitorKind::MaximumPrinciple => out.push(maximum_principle(series, &LpNorm::ALL)),
            MonitorKind::H1Bound => out.push(h1_bound(series, &cfg.params)),
            MonitorKind::HsBound => {
                for &s in &cfg.s_list {
                    out.push(hs_bound(series, s)?);
                }
            }
            MonitorKind::HsEnvelope => {
                for &s in cfg.s_list.iter().filter(|s| **s > 1.0) {
                    out.push(hs_envelope(series, s)?);
                }
            }
        }
    }
    Ok(out)
}

fn snapshot_name(t: f64) -> String {
    format!("theta_t{t}.aqgf")
}

fn write_series(dir: &Path, cfg: &RunConfig, traj: &Trajectory) -> Result<()> {
    fs::write(dir.join("norms.csv"), norms_csv(&traj.series))?;
    fs::write(dir.join("h1_dissipation.csv"), h1_dissipation_csv(&traj.series))?;
    for snap in &traj.snapshots {
        snapshot_write(&snap.theta, snap.t, &dir.join(snapshot_name(snap.t)))?;
    }
    if cfg.charts {
        let s = &traj.series;
        let t = s.times();
        let mut cols: Vec<(String, Vec<f64>)> = vec![
            ("l2".into(), s.column(|x| x.l2)),
            ("l4".into(), s.column(|x| x.l4)),
            ("linf".into(), s.column(|x| x.linf)),
            ("h1".into(), s.column(|x| x.h1)),
        ];
        for (i, sv) in s.meta.s_list.iter().enumerate() {
            cols.push((format!("hs_{sv}"), s.column(|x| x.hs[i])));
        }
        let refs: Vec<(&str, &[f64])> = cols.iter().map(|(n, v)| (n.as_str(), v.as_slice())).collect();
        fs::write(dir.join("norms.svg"), line_chart("norms", &t, &refs, true))?;
        let d1 = s.column(|x| x.diss1_int);
        let d2 = s.column(|x| x.diss2_int);
        fs::write(
            dir.join("dissipation.svg"),
            line_chart("integrated dissipation", &t, &[("diss1_int", &d1), ("diss2_int", &d2)], false),
        )?;
    }
    Ok(())
}

fn run(cfg: &RunConfig, theta0: &SpectralField, dir: &Path) -> Result<(i32, Vec<String>)> {
    let traj = match blow_up(simulate(theta0, cfg.params, &cfg.stepper, &cfg.simulate_options()))? {
        Ok(t) => t,
        Err(report) => return write_blow_up(dir, &report),
    };
    write_series(dir, cfg, &traj)?;
    let verdicts = apply_monitors(cfg, &traj.series)?;
    fs::write(dir.join("verdicts.csv"), verdicts_csv(&verdicts))?;
    let summary = verdicts
        .iter()
        .map(|v| format!("{}: {} (worst {:e}, tol {:e})", v.name, v.status, v.worst_violation, v.tolerance))
        .collect();
    Ok((exit_code(&verdicts), summary))
}

fn sweep(cfg: &RunConfig, theta0: &SpectralField, dir: &Path) -> Result<(i32, Vec<String>)> {
    let rows = regime_sweep(
        &cfg.sweep.alpha_grid,
        &cfg.sweep.beta_grid,
        cfg.params.mu,
        cfg.params.nu,
        theta0,
        &cfg.stepper,
        &cfg.simulate_options(),
    )?;
    fs::write(dir.join("sweep.csv"), sweep_csv(&rows))?;
    let code = if rows.iter().any(|r| r.blow_up.is_some()) {
        EXIT_BLOW_UP
    } else if rows.iter().all(|r| r.all_pass()) {
        EXIT_OK
    } else {
        EXIT_MONITOR_FAILURE
    };
    let summary = rows
        .iter()
        .map(|r| {
            format!(
                "alpha={} beta={} {}: {}",
                r.alpha,
                r.beta,
                r.regime,
                if r.all_pass() { "pass" } else { "fail" }
            )
        })
        .collect();
    Ok((code, summary))
}

/// Interpolation weights exercised per axis.
pub const INTERPOLATION_WEIGHTS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Runs every inequality checker over the configured corpus. Interpolation
/// (constant 1), the commutator kernel and the `L²` Riesz bound are exact
/// statements and decide the exit code; the other ratios are reported as
/// empirical constants together with their grid-refinement stability.
pub fn lemma_records(cfg: &RunConfig) -> Result<(Vec<LemmaRecord>, Vec<String>)> {
    let lc = &cfg.lemmas;
    let corpus = Corpus::new(lc.corpus_seed, lc.corpus_size, lc.corpus_band);
    let grid = cfg.grid.resized(lc.n, lc.n)?;
    let s = cfg.s_list.first().copied().unwrap_or(1.5);
    let (alpha, beta) = (cfg.params.alpha, cfg.params.beta);
    let mut records = Vec::new();
    let mut failures = Vec::new();

    for (axis, gamma) in [(Axis::X1, alpha), (Axis::X2, beta)] {
        let i = if axis == Axis::X1 { 1 } else { 2 };
        for flavor in [Flavor::Inhomogeneous, Flavor::Homogeneous] {
            for z in INTERPOLATION_WEIGHTS {
                let reports = corpus.map(grid, |f| check_interpolation(f, axis, s, gamma, 1.0 + gamma, z, flavor))?;
                let name = format!("interpolation_{}", if flavor == Flavor::Homogeneous { "hom" } else { "inhom" });
                let params = format!("axis={i};s={s};s1={gamma};s2={};z={z}", 1.0 + gamma);
                push_worst(&mut records, &mut failures, &name, &params, &reports, true);
            }
        }
    }

    let mut products = vec![
        (0.5, 0.5, ProductVariant::Symmetric),
        (0.25, 1.5, ProductVariant::Symmetric),
        (0.5, 0.75, ProductVariant::Asymmetric),
    ];
    if alpha < 1.0 {
        products.push((alpha, 1.0 - alpha + beta, ProductVariant::Symmetric));
    }
    for (s1, s2, variant) in products {
        let reports = corpus.map_pairs(grid, |f, g| check_product(f, g, s1, s2, variant))?;
        let params = format!("s1={s1};s2={s2};variant={variant:?}");
        push_worst(&mut records, &mut failures, "product", &params, &reports, false);
    }

    for sigma in [0.25, 0.5, 0.75] {
        let p = 2.0 / (1.0 - sigma);
        let reports = corpus.map(grid, |f| check_embedding(f, sigma, p))?;
        push_worst(&mut records, &mut failures, "embedding", &format!("sigma={sigma};p={p}"), &reports, false);
    }

    let comm_alpha = if alpha < 1.0 { alpha } else { 0.5 };
    let comm_s = if s > 1.0 { s } else { 1.5 };
    let reports = corpus.map_pairs(grid, |f, g| Ok(check_commutator(f, g, comm_s, comm_alpha)?.report))?;
    push_worst(
        &mut records,
        &mut failures,
        "commutator",
        &format!("s={comm_s};alpha={comm_alpha}"),
        &reports,
        false,
    );

    for p in [1.5, 2.0, 4.0] {
        let reports = corpus.map(grid, |f| check_riesz_bound(f, p))?;
        // On L² the Riesz transforms are contractions.
        push_worst(&mut records, &mut failures, "riesz", &format!("p={p}"), &reports, p == 2.0);
    }

    for ks in [1.25, 1.5, 2.0] {
        let scan = commutator_kernel_scan(8, ks);
        if !scan.holds() {
            failures.push(format!("kernel s={ks}: {} of {} pairs violate", scan.violations, scan.pairs));
        }
        let report = NormReport {
            lhs: scan.violations as f64,
            rhs: scan.pairs as f64,
            ratio: scan.worst_ratio,
            holds_with_constant_one: scan.holds(),
        };
        records.push(LemmaRecord::new("commutator_kernel", format!("radius=8;s={ks}"), report));
    }
    Ok((records, failures))
}

fn push_worst(
    records: &mut Vec<LemmaRecord>,
    failures: &mut Vec<String>,
    test: &str,
    params: &str,
    reports: &[NormReport],
    exact: bool,
) {
    let worst = reports
        .iter()
        .copied()
        .fold(None::<NormReport>, |m, r| match m {
            Some(w) if w.ratio >= r.ratio => Some(w),
            _ => Some(r),
        })
        .unwrap_or(NormReport::new(0.0, 0.0));
    if exact {
        let bad = reports.iter().filter(|r| !r.holds_with_constant_one).count();
        if bad > 0 {
            failures.push(format!("{test} [{params}]: {bad} of {} inputs exceed constant 1", reports.len()));
        }
    }
    records.push(LemmaRecord::new(test, params, worst));
}

fn check_lemmas(cfg: &RunConfig, dir: &Path) -> Result<(i32, Vec<String>)> {
    let (records, failures) = lemma_records(cfg)?;
    let mut csv = format!("{}\n", LemmaRecord::CSV_HEADER);
    for r in &records {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    fs::write(dir.join("lemmas.csv"), csv)?;

    let lc = &cfg.lemmas;
    let corpus = Corpus::new(lc.corpus_seed, lc.corpus_size, lc.corpus_band);
    let s = cfg.s_list.first().copied().unwrap_or(1.5);
    let comm_s = if s > 1.0 { s } else { 1.5 };
    let comm_alpha = if cfg.params.alpha < 1.0 { cfg.params.alpha } else { 0.5 };
    let studies = [
        (
            "product",
            "s1=0.5;s2=0.5;variant=Symmetric".to_string(),
            refine_pairs(&corpus, cfg.grid, lc.n, lc.n_fine, |f, g| {
                check_product(f, g, 0.5, 0.5, ProductVariant::Symmetric)
            })?,
        ),
        (
            "embedding",
            "sigma=0.5;p=4".to_string(),
            refine_single(&corpus, cfg.grid, lc.n, lc.n_fine, |f| check_embedding(f, 0.5, 4.0))?,
        ),
        (
            "commutator",
            format!("s={comm_s};alpha={comm_alpha}"),
            refine_pairs(&corpus, cfg.grid, lc.n, lc.n_fine, |f, g| {
                Ok(check_commutator(f, g, comm_s, comm_alpha)?.report)
            })?,
        ),
    ];
    let mut table = String::from("test,params,coarse_n,fine_n,coarse_max,fine_max,relative_change\n");
    let mut summary = Vec::new();
    for (name, params, st) in &studies {
        let _ = writeln!(
            table,
            "{name},{params},{},{},{:.16e},{:.16e},{:.16e}",
            st.coarse_n,
            st.fine_n,
            st.coarse_max,
            st.fine_max,
            st.relative_change()
        );
        summary.push(format!(
            "{name}: max ratio {:.4} at N={}, {:.4} at N={}",
            st.coarse_max, st.coarse_n, st.fine_max, st.fine_n
        ));
    }
    fs::write(dir.join("lemma_refinement.csv"), table)?;
    summary.extend(failures.iter().cloned());
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_MONITOR_FAILURE };
    Ok((code, summary))
}

/// Band for the perturbation direction: the data's own band when random.
fn perturbation_band(cfg: &RunConfig) -> f64 {
    match cfg.initial {
        InitialCondition::Random { band, .. } => band,
        _ => 4.0,
    }
}

fn twin(cfg: &RunConfig, theta0: &SpectralField, dir: &Path) -> Result<(i32, Vec<String>)> {
    let direction = perturbation(theta0, cfg.twin.perturbation_seed, perturbation_band(cfg));
    let options = cfg.simulate_options();
    let scaling = match blow_up(twin_scaling(theta0, &direction, cfg.twin.delta, cfg.params, &cfg.stepper, &options))? {
        Ok(s) => s,
        Err(report) => return write_blow_up(dir, &report),
    };
    let zero = match blow_up(twin_experiment(theta0, &direction, 0.0, cfg.params, &cfg.stepper, &options))? {
        Ok(z) => z,
        Err(report) => return write_blow_up(dir, &report),
    };

    let mut csv = String::from("t,omega_delta,omega_delta_10,omega_zero\n");
    for ((a, b), c) in scaling.large.separation.iter().zip(&scaling.small.separation).zip(&zero.separation) {
        let _ = writeln!(csv, "{:.16e},{:.16e},{:.16e},{:.16e}", a.t, a.omega, b.omega, c.omega);
    }
    fs::write(dir.join("twin.csv"), csv)?;
    #[derive(Serialize)]
    struct Summary<'a> {
        delta: f64,
        ratio: f64,
        linear: bool,
        zero_identical: bool,
        model_rate: f64,
        observed_rate: f64,
        bound_holds: bool,
        scaling_band: (f64, f64),
        large: &'a crate::diagnostics::TwinReport,
        small: &'a crate::diagnostics::TwinReport,
    }
    let summary = Summary {
        delta: cfg.twin.delta,
        ratio: scaling.ratio,
        linear: scaling.is_linear(),
        zero_identical: zero.identical && zero.final_separation() == 0.0,
        model_rate: scaling.large.model_rate,
        observed_rate: scaling.large.observed_rate,
        bound_holds: scaling.large.bound_holds && scaling.small.bound_holds,
        scaling_band: crate::diagnostics::SCALING_BAND,
        large: &scaling.large,
        small: &scaling.small,
    };
    let json = serde_json::to_string_pretty(&summary).map_err(|e| Error::invalid(e.to_string()))?;
    fs::write(dir.join("twin.json"), json + "\n")?;
    if cfg.charts {
        let t: Vec<f64> = scaling.large.separation.iter().map(|s| s.t).collect();
        let a: Vec<f64> = scaling.large.separation.iter().map(|s| s.omega).collect();
        let b: Vec<f64> = scaling.small.separation.iter().map(|s| s.omega).collect();
        fs::write(
            dir.join("twin.svg"),
            line_chart("twin separation", &t, &[("delta", &a), ("delta/10", &b)], true),
        )?;
    }
    let ok = summary.linear && summary.zero_identical && summary.bound_holds;
    let lines = vec![
        format!("separation ratio {:.6} (band {:?})", summary.ratio, summary.scaling_band),
        format!("delta = 0 identical: {}", summary.zero_identical),
        format!(
            "growth rate {:.4} within model rate {:.4}: {}",
            summary.observed_rate, summary.model_rate, summary.bound_holds
        ),
    ];
    Ok((if ok { EXIT_OK } else { EXIT_MONITOR_FAILURE }, lines))
}

fn galerkin(cfg: &RunConfig, theta0: &SpectralField, dir: &Path) -> Result<(i32, Vec<String>)> {
    let options = cfg.simulate_options();
    let mut csv = String::from("n,t,difference\n");
    let mut finals = Vec::new();
    let mut chart: Vec<(String, Vec<f64>, Vec<f64>)> = Vec::new();
    for &n in &cfg.galerkin.cutoffs {
        let pair = match blow_up(galerkin_pair(theta0, cfg.params, &cfg.stepper, &options, n, cfg.galerkin.s_prime))? {
            Ok(p) => p,
            Err(report) => return write_blow_up(dir, &report),
        };
        for d in &pair.difference {
            let _ = writeln!(csv, "{n},{:.16e},{:.16e}", d.t, d.norm);
        }
        finals.push((n, pair.final_difference()));
        chart.push((
            format!("n={n}"),
            pair.difference.iter().map(|d| d.t).collect(),
            pair.difference.iter().map(|d| d.norm).collect(),
        ));
    }
    fs::write(dir.join("galerkin.csv"), csv)?;
    if cfg.charts && !chart.is_empty() {
        let refs: Vec<(&str, &[f64])> = chart.iter().map(|(n, _, v)| (n.as_str(), v.as_slice())).collect();
        fs::write(
            dir.join("galerkin.svg"),
            line_chart("truncation difference", &chart[0].1, &refs, true),
        )?;
    }
    let mut sorted = finals.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let decreasing = sorted.windows(2).all(|w| w[1].1 < w[0].1);
    let mut lines: Vec<String> = finals
        .iter()
        .map(|(n, d)| format!("n={n}: final difference {d:e}"))
        .collect();
    lines.push(format!("strictly decreasing in n: {decreasing}"));
    Ok((if decreasing { EXIT_OK } else { EXIT_MONITOR_FAILURE }, lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(extra: &str, dir: &Path) -> RunConfig {
        let text = format!(
            "alpha = 0.5\nbeta = 0.75\nn1 = 16\nn2 = 16\nhorizon = 0.2\nsample_every = 0.1\noutput_dir = {}\n{extra}",
            dir.display()
        );
        parse_config(&text).unwrap()
    }

    #[test]
    fn zero_run_writes_all_artifacts() {
        let tmp = tempfile::tempdir().unwrap();
        let out = tmp.path().join("zero");
        let c = cfg("initial = zero\nsnapshot_times = 0.1", &out);
        let o = execute(Command::Run, &c).unwrap();
        assert_eq!(o.code, EXIT_OK, "{:?}", o.summary);
        for f in ["manifest.json", "norms.csv", "h1_dissipation.csv", "verdicts.csv", "norms.svg", "theta_t0.1.aqgf"] {
            assert!(out.join(f).exists(), "{f}");
        }
    }

    #[test]
    fn bad_initial_file_leaves_no_output() {
        let tmp = tempfile::tempdir().unwrap();
        let out = tmp.path().join("never");
        let c = cfg(&format!("initial = file\nfile = {}", tmp.path().join("missing.aqgf").display()), &out);
        assert!(execute(Command::Run, &c).is_err());
        assert!(!out.exists());
    }

    #[test]
    fn twin_rejects_zero_delta_before_writing() {
        let tmp = tempfile::tempdir().unwrap();
        let out = tmp.path().join("twin");
        let c = cfg("delta = 0", &out);
        assert!(matches!(execute(Command::Twin, &c), Err(Error::Config(_))));
        assert!(!out.exists());
    }
}
