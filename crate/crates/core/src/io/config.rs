//! `key = value` run configuration with optional `[section]` headers.
//!
//! Keys are unique across sections, so headers are optional; when present,
//! a key must sit under its own section. `#` starts a comment. Only `alpha`
//! and `beta` are required.
//!
//! ```text
//! [params]
//! alpha = 0.5
//! beta = 0.75
//! [run]
//! horizon = 10
//! s_list = 1.5, 2
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::dynamics::{Scheme, SimulateOptions, StepSize, TimeStepper};
use crate::error::{Error, Result};
use crate::params::AqgParams;
use crate::spectral::{Axis, CutoffShape, GridSpec};

/// Every accepted key and the section it belongs to.
const KEYS: &[(&str, &str)] = &[
    ("grid", "n1"),
    ("grid", "n2"),
    ("grid", "box_size"),
    ("grid", "dealias_fraction"),
    ("grid", "cutoff_shape"),
    ("params", "alpha"),
    ("params", "beta"),
    ("params", "mu"),
    ("params", "nu"),
    ("stepper", "scheme"),
    ("stepper", "dt"),
    ("stepper", "cfl"),
    ("stepper", "dt_max"),
    ("run", "horizon"),
    ("run", "sample_every"),
    ("run", "s_list"),
    ("run", "snapshot_times"),
    ("initial", "initial"),
    ("initial", "seed"),
    ("initial", "band"),
    ("initial", "spectrum"),
    ("initial", "target_hs"),
    ("initial", "axis"),
    ("initial", "wavenumber"),
    ("initial", "amplitude"),
    ("initial", "file"),
    ("output", "output_dir"),
    ("output", "charts"),
    ("output", "monitors"),
    ("sweep", "alpha_grid"),
    ("sweep", "beta_grid"),
    ("twin", "delta"),
    ("twin", "perturbation_seed"),
    ("galerkin", "galerkin_n"),
    ("galerkin", "s_prime"),
    ("lemmas", "corpus_seed"),
    ("lemmas", "corpus_size"),
    ("lemmas", "corpus_band"),
    ("lemmas", "lemma_n"),
    ("lemmas", "lemma_n_fine"),
];

const REQUIRED: &[&str] = &["alpha", "beta"];

/// Spectral envelope of random initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SpectrumKind {
    Flat,
    Algebraic(f64),
    Exponential(f64),
}

impl FromStr for SpectrumKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> std::result::Result<f64, String> {
            let a = a.ok_or_else(|| format!("spectrum '{name}' needs a parameter, e.g. '{name}:2'"))?;
            let v: f64 = a.parse().map_err(|_| format!("bad spectrum parameter '{a}'"))?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(format!("spectrum parameter must be positive (got {v})"))
            }
        };
        match name {
            "flat" => Ok(SpectrumKind::Flat),
            "algebraic" => Ok(SpectrumKind::Algebraic(num(arg)?)),
            "exponential" => Ok(SpectrumKind::Exponential(num(arg)?)),
            _ => Err(format!("unknown spectrum '{s}' (expected flat|algebraic:p|exponential:e)")),
        }
    }
}

impl From<SpectrumKind> for crate::init::Spectrum {
    fn from(s: SpectrumKind) -> Self {
        match s {
            SpectrumKind::Flat => crate::init::Spectrum::Flat,
            SpectrumKind::Algebraic(p) => crate::init::Spectrum::Algebraic(p),
            SpectrumKind::Exponential(e) => crate::init::Spectrum::Exponential(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InitialCondition {
    Zero,
    /// `amplitude · cos(k x_axis)`.
    Cosine { axis: usize, wavenumber: i64, amplitude: f64 },
    /// Seeded band-limited data rescaled to `‖θ⁰‖_{H^s} = target_hs`, `s = s_list[0]`.
    Random {
        seed: u64,
        band: f64,
        spectrum: SpectrumKind,
        target_hs: f64,
    },
    /// A snapshot file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonitorKind {
    EnergyLedger,
    MaximumPrinciple,
    H1Bound,
    HsBound,
    HsEnvelope,
}

impl MonitorKind {
    pub const ALL: [MonitorKind; 5] = [
        MonitorKind::EnergyLedger,
        MonitorKind::MaximumPrinciple,
        MonitorKind::H1Bound,
        MonitorKind::HsBound,
        MonitorKind::HsEnvelope,
    ];
}

impl fmt::Display for MonitorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonitorKind::EnergyLedger => "energy_ledger",
            MonitorKind::MaximumPrinciple => "maximum_principle",
            MonitorKind::H1Bound => "h1_bound",
            MonitorKind::HsBound => "hs_bound",
            MonitorKind::HsEnvelope => "hs_envelope",
        })
    }
}

impl FromStr for MonitorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        MonitorKind::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| format!("unknown monitor '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwinConfig {
    pub delta: f64,
    pub perturbation_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GalerkinConfig {
    pub cutoffs: Vec<f64>,
    pub s_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaConfig {
    pub corpus_seed: u64,
    pub corpus_size: usize,
    pub corpus_band: f64,
    pub n: usize,
    pub n_fine: usize,
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub params: AqgParams,
    pub stepper: TimeStepper,
    pub horizon: f64,
    pub sample_every: f64,
    pub s_list: Vec<f64>,
    pub snapshot_times: Vec<f64>,
    pub initial: InitialCondition,
    pub output_dir: PathBuf,
    pub charts: bool,
    pub monitors: Vec<MonitorKind>,
    pub sweep: SweepConfig,
    pub twin: TwinConfig,
    pub galerkin: GalerkinConfig,
    pub lemmas: LemmaConfig,
}

impl RunConfig {
    pub fn simulate_options(&self) -> SimulateOptions {
        SimulateOptions::new(self.horizon, self.sample_every)
            .with_s_list(self.s_list.clone())
            .with_snapshots(self.snapshot_times.clone())
    }

    pub fn monitor_enabled(&self, m: MonitorKind) -> bool {
        self.monitors.contains(&m)
    }

    /// Back to the text format; `parse_config(to_text(c)) == c`.
    pub fn to_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ");
        let g = &self.grid;
        let mut out = String::new();
        let mut put = |line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        put("[grid]".into());
        put(format!("n1 = {}", g.n1()));
        put(format!("n2 = {}", g.n2()));
        put(format!("box_size = {:?}", g.box_size()));
        put(format!("dealias_fraction = {:?}", g.dealias_fraction()));
        put(format!("cutoff_shape = {}", g.cutoff_shape()));
        put("[params]".into());
        put(format!("alpha = {:?}", self.params.alpha));
        put(format!("beta = {:?}", self.params.beta));
        put(format!("mu = {:?}", self.params.mu));
        put(format!("nu = {:?}", self.params.nu));
        put("[stepper]".into());
        put(format!("scheme = {}", self.stepper.scheme));
        put(match self.stepper.step {
            StepSize::Fixed(dt) => format!("dt = {dt:?}"),
            StepSize::Auto => "dt = auto".into(),
        });
        put(format!("cfl = {:?}", self.stepper.cfl_number));
        put(format!("dt_max = {:?}", self.stepper.dt_max));
        put("[run]".into());
        put(format!("horizon = {:?}", self.horizon));
        put(format!("sample_every = {:?}", self.sample_every));
        put(format!("s_list = {}", list(&self.s_list)));
        put(format!("snapshot_times = {}", list(&self.snapshot_times)));
        put("[initial]".into());
        match &self.initial {
            InitialCondition::Zero => put("initial = zero".into()),
            InitialCondition::Cosine {
                axis,
                wavenumber,
                amplitude,
            } => {
                put("initial = cosine".into());
                put(format!("axis = {axis}"));
                put(format!("wavenumber = {wavenumber}"));
                put(format!("amplitude = {amplitude:?}"));
            }
            InitialCondition::Random {
                seed,
                band,
                spectrum,
                target_hs,
            } => {
                put("initial = random".into());
                put(format!("seed = {seed}"));
                put(format!("band = {band:?}"));
                put(format!(
                    "spectrum = {}",
                    match spectrum {
                        SpectrumKind::Flat => "flat".to_string(),
                        SpectrumKind::Algebraic(p) => format!("algebraic:{p:?}"),
                        SpectrumKind::Exponential(e) => format!("exponential:{e:?}"),
                    }
                ));
                put(format!("target_hs = {target_hs:?}"));
            }
            InitialCondition::File { path } => {
                put("initial = file".into());
                put(format!("file = {}", path.display()));
            }
        }
        put("[output]".into());
        put(format!("output_dir = {}", self.output_dir.display()));
        put(format!("charts = {}", self.charts));
        put(format!(
            "monitors = {}",
            self.monitors.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
        ));
        put("[sweep]".into());
        put(format!("alpha_grid = {}", list(&self.sweep.alpha_grid)));
        put(format!("beta_grid = {}", list(&self.sweep.beta_grid)));
        put("[twin]".into());
        put(format!("delta = {:?}", self.twin.delta));
        put(format!("perturbation_seed = {}", self.twin.perturbation_seed));
        put("[galerkin]".into());
        put(format!("galerkin_n = {}", list(&self.galerkin.cutoffs)));
        put(format!("s_prime = {:?}", self.galerkin.s_prime));
        put("[lemmas]".into());
        put(format!("corpus_seed = {}", self.lemmas.corpus_seed));
        put(format!("corpus_size = {}", self.lemmas.corpus_size));
        put(format!("corpus_band = {:?}", self.lemmas.corpus_band));
        put(format!("lemma_n = {}", self.lemmas.n));
        put(format!("lemma_n_fine = {}", self.lemmas.n_fine));
        out
    }
}

/// Raw values with typed accessors that log every failure.
struct Values {
    map: BTreeMap<&'static str, String>,
    errors: Vec<String>,
}

impl Values {
    fn get<T: FromStr>(&mut self, key: &str, default: T) -> T
    where
        T::Err: fmt::Display,
    {
        match self.map.get(key) {
            None => default,
            Some(raw) => match raw.parse::<T>() {
                Ok(v) => v,
                Err(e) => {
                    self.errors.push(format!("{key}: cannot parse '{raw}' ({e})"));
                    default
                }
            },
        }
    }

    fn real(&mut self, key: &str, default: f64) -> f64 {
        match self.map.get(key) {
            None => default,
            Some(raw) => parse_real(raw).unwrap_or_else(|e| {
                self.errors.push(format!("{key}: {e}"));
                default
            }),
        }
    }

    fn reals(&mut self, key: &str, default: &[f64]) -> Vec<f64> {
        match self.map.get(key) {
            None => default.to_vec(),
            Some(raw) if raw.trim().is_empty() => Vec::new(),
            Some(raw) => {
                let mut out = Vec::new();
                for item in raw.split(',') {
                    match parse_real(item) {
                        Ok(v) => out.push(v),
                        Err(e) => self.errors.push(format!("{key}: {e}")),
                    }
                }
                out
            }
        }
    }

    fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }
}

/// A finite number, or `pi`/`2pi` for box sizes.
fn parse_real(raw: &str) -> std::result::Result<f64, String> {
    let t = raw.trim();
    let v = match t {
        "pi" => PI,
        "2pi" => 2.0 * PI,
        _ => t.parse::<f64>().map_err(|_| format!("cannot parse '{t}' as a number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{t}' is not finite"))
    }
}

fn tokenize(text: &str) -> (BTreeMap<&'static str, String>, Vec<String>) {
    let mut map = BTreeMap::new();
    let mut errors = Vec::new();
    let mut section: Option<String> = None;
    for (no, line) in text.lines().enumerate() {
        let no = no + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            if KEYS.iter().any(|(s, _)| *s == name) {
                section = Some(name.to_string());
            } else {
                errors.push(format!("line {no}: unknown section [{name}]"));
                section = None;
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(format!("line {no}: expected 'key = value'"));
            continue;
        };
        let key = key.trim();
        let Some(&(home, k)) = KEYS.iter().find(|(_, k)| *k == key) else {
            errors.push(format!("line {no}: unknown key '{key}'"));
            continue;
        };
        if let Some(s) = &section {
            if s != home {
                errors.push(format!("line {no}: key '{key}' belongs in [{home}], not [{s}]"));
                continue;
            }
        }
        if map.insert(k, value.trim().to_string()).is_some() {
            errors.push(format!("line {no}: duplicate key '{key}'"));
        }
    }
    for key in REQUIRED {
        if !map.contains_key(key) {
            errors.push(format!("missing required key '{key}'"));
        }
    }
    (map, errors)
}

fn split_problems(e: Error, out: &mut Vec<String>) {
    match e {
        Error::InvalidParameter(msg) => out.extend(msg.split("; ").map(str::to_string)),
        other => out.push(other.to_string()),
    }
}

/// Parses and validates a configuration, reporting every problem at once.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let (map, errors) = tokenize(text);
    let mut v = Values { map, errors };

    let n1 = v.get("n1", 128usize);
    let n2 = v.get("n2", 128usize);
    let box_size = v.real("box_size", 2.0 * PI);
    let dealias = v.real("dealias_fraction", GridSpec::DEFAULT_DEALIAS);
    let shape = v.get("cutoff_shape", CutoffShape::Ball);

    let alpha = v.real("alpha", 0.5);
    let beta = v.real("beta", 0.75);
    let mu = v.real("mu", 1.0);
    let nu = v.real("nu", 1.0);

    let scheme = v.get("scheme", Scheme::IfRk4);
    let step = match v.map.get("dt").map(|s| s.trim().to_string()) {
        None => StepSize::Auto,
        Some(s) if s.eq_ignore_ascii_case("auto") => StepSize::Auto,
        Some(_) => StepSize::Fixed(v.real("dt", 0.0)),
    };
    let stepper = TimeStepper {
        scheme,
        step,
        cfl_number: v.real("cfl", TimeStepper::DEFAULT_CFL),
        dt_max: v.real("dt_max", TimeStepper::DEFAULT_DT_MAX),
    };

    let horizon = v.real("horizon", 1.0);
    let sample_every = v.real("sample_every", 0.1);
    let s_list = v.reals("s_list", &[1.5]);
    let snapshot_times = v.reals("snapshot_times", &[]);

    let kind: String = v.get("initial", "random".to_string());
    let initial = match kind.as_str() {
        "zero" => InitialCondition::Zero,
        "cosine" => InitialCondition::Cosine {
            axis: v.get("axis", 1usize),
            wavenumber: v.get("wavenumber", 1i64),
            amplitude: v.real("amplitude", 1.0),
        },
        "random" => InitialCondition::Random {
            seed: v.get("seed", 0u64),
            band: v.real("band", 4.0),
            spectrum: v.get("spectrum", SpectrumKind::Flat),
            target_hs: v.real("target_hs", 1.0),
        },
        "file" => {
            if !v.has("file") {
                v.errors.push("initial = file needs a 'file' key".into());
            }
            InitialCondition::File {
                path: PathBuf::from(v.get("file", String::new())),
            }
        }
        other => {
            v.errors.push(format!("initial: unknown kind '{other}' (expected zero|cosine|random|file)"));
            InitialCondition::Zero
        }
    };

    let output_dir = PathBuf::from(v.get("output_dir", "out".to_string()));
    let charts = v.get("charts", true);
    let monitors = match v.map.get("monitors").cloned() {
        None => MonitorKind::ALL.to_vec(),
        Some(raw) => raw
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .filter_map(|s| match s.parse() {
                Ok(m) => Some(m),
                Err(e) => {
                    v.errors.push(format!("monitors: {e}"));
                    None
                }
            })
            .collect(),
    };

    let sweep = SweepConfig {
        alpha_grid: v.reals("alpha_grid", &[0.25, 0.5, 0.75]),
        beta_grid: v.reals("beta_grid", &[0.25, 0.5, 0.75]),
    };
    let twin = TwinConfig {
        delta: v.real("delta", 1e-6),
        perturbation_seed: v.get("perturbation_seed", 1u64),
    };
    let galerkin = GalerkinConfig {
        cutoffs: v.reals("galerkin_n", &[8.0, 16.0, 32.0]),
        s_prime: v.real("s_prime", 0.0),
    };
    let lemmas = LemmaConfig {
        corpus_seed: v.get("corpus_seed", 0u64),
        corpus_size: v.get("corpus_size", 100usize),
        corpus_band: v.real("corpus_band", 6.0),
        n: v.get("lemma_n", 32usize),
        n_fine: v.get("lemma_n_fine", 64usize),
    };

    // Range checks, all collected.
    let mut errors = std::mem::take(&mut v.errors);
    let grid = GridSpec::new(n1, n2, box_size, dealias, shape)
        .map_err(|e| split_problems(e, &mut errors))
        .ok();
    errors.extend(AqgParams::violations(alpha, beta, mu, nu));
    errors.extend(stepper.violations());
    let options = SimulateOptions::new(horizon, sample_every)
        .with_s_list(s_list.clone())
        .with_snapshots(snapshot_times.clone());
    errors.extend(options.violations());
    match &initial {
        InitialCondition::Cosine { axis, .. } if Axis::from_index(*axis).is_none() => {
            errors.push(format!("axis must be 1 or 2 (got {axis})"));
        }
        InitialCondition::Random { band, target_hs, .. } => {
            if !(*band > 0.0) {
                errors.push(format!("band must be positive (got {band})"));
            }
            if !(*target_hs >= 0.0) {
                errors.push(format!("target_hs must be nonnegative (got {target_hs})"));
            }
        }
        _ => {}
    }
    if monitors.contains(&MonitorKind::HsEnvelope) && s_list.first().is_some_and(|s| !(*s > 1.0)) {
        errors.push(format!("hs_envelope needs s_list[0] > 1 (got {})", s_list[0]));
    }
    for (name, g) in [("alpha_grid", &sweep.alpha_grid), ("beta_grid", &sweep.beta_grid)] {
        if g.is_empty() {
            errors.push(format!("{name} must not be empty"));
        }
        if let Some(x) = g.iter().find(|x| !(**x > 0.0 && **x <= 1.0)) {
            errors.push(format!("{name} entries outside (0,1] (got {x})"));
        }
    }
    if !(twin.delta >= 0.0) {
        errors.push(format!("delta must be nonnegative (got {})", twin.delta));
    }
    if let Some(n) = galerkin.cutoffs.iter().find(|n| !(**n > 0.0)) {
        errors.push(format!("galerkin_n entries must be positive (got {n})"));
    }
    if !(galerkin.s_prime >= 0.0) {
        errors.push(format!("s_prime must be nonnegative (got {})", galerkin.s_prime));
    }
    if lemmas.corpus_size == 0 {
        errors.push("corpus_size must be positive".into());
    }
    if !(lemmas.corpus_band >= 1.0) {
        errors.push(format!("corpus_band must be at least 1 (got {})", lemmas.corpus_band));
    }
    for (name, n) in [("lemma_n", lemmas.n), ("lemma_n_fine", lemmas.n_fine)] {
        if n < 4 || n % 2 != 0 {
            errors.push(format!("{name} must be an even integer >= 4 (got {n})"));
        }
    }

    match grid {
        Some(grid) if errors.is_empty() => Ok(RunConfig {
            grid,
            params: AqgParams { alpha, beta, mu, nu },
            stepper,
            horizon,
            sample_every,
            s_list,
            snapshot_times,
            initial,
            output_dir,
            charts,
            monitors,
            sweep,
            twin,
            galerkin,
            lemmas,
        }),
        _ => Err(Error::Config(errors)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(text: &str) -> Vec<String> {
        match parse_config(text) {
            Err(Error::Config(e)) => e,
            other => panic!("expected config errors, got {other:?}"),
        }
    }

    #[test]
    fn minimal_file_fills_defaults() {
        let c = parse_config("alpha=0.5\nbeta=0.75\n").unwrap();
        assert_eq!(c.grid, GridSpec::square(128).unwrap());
        assert_eq!(c.params, AqgParams::new(0.5, 0.75, 1.0, 1.0).unwrap());
        assert_eq!(c.stepper.step, StepSize::Auto);
        assert_eq!(c.s_list, vec![1.5]);
        assert_eq!(c.monitors.len(), 5);
    }

    #[test]
    fn sections_and_comments() {
        let c = parse_config(
            "# desk run\n[params]\nalpha = 0.5 # semi-critical\nbeta = 0.75\n[stepper]\ndt = 1e-3\n[grid]\nn1 = 64\nn2 = 32\nbox_size = 2pi\n",
        )
        .unwrap();
        assert_eq!(c.stepper.step, StepSize::Fixed(1e-3));
        assert_eq!(c.grid.shape(), (64, 32));
        assert!(errors("[grid]\nalpha = 0.5\nbeta=0.5").iter().any(|e| e.contains("belongs in [params]")));
    }

    #[test]
    fn range_errors_are_collected() {
        let e = errors("alpha=1.5\nbeta=0.75\ndealias_fraction=0\nn1=7\nfoo=1\n");
        assert!(e.iter().any(|m| m.contains("alpha outside (0,1]")), "{e:?}");
        assert!(e.iter().any(|m| m.contains("dealias_fraction")));
        assert!(e.iter().any(|m| m.contains("n1 must be")));
        assert!(e.iter().any(|m| m.contains("unknown key 'foo'")));
    }

    #[test]
    fn missing_required_and_duplicates() {
        let e = errors("alpha=0.5\nalpha=0.5\n");
        assert!(e.iter().any(|m| m.contains("missing required key 'beta'")));
        assert!(e.iter().any(|m| m.contains("duplicate key 'alpha'")));
    }

    #[test]
    fn text_roundtrip() {
        let c = parse_config(
            "alpha=0.25\nbeta=1\ndt=0.01\ninitial=cosine\naxis=2\nwavenumber=3\ns_list=1.25, 2\nmonitors=energy_ledger\nspectrum=algebraic:2\n",
        )
        .unwrap();
        assert_eq!(parse_config(&c.to_text()).unwrap(), c);
        let r = parse_config("alpha=0.5\nbeta=0.5\nspectrum=exponential:4\nsnapshot_times=0.5\nhorizon=2").unwrap();
        assert_eq!(parse_config(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn bad_values_are_reported_per_key() {
        let e = errors("alpha=x\nbeta=0.5\nscheme=rk2\nspectrum=pink\n");
        assert!(e.iter().any(|m| m.starts_with("alpha:")));
        assert!(e.iter().any(|m| m.contains("unknown scheme")));
        assert!(e.iter().any(|m| m.contains("unknown spectrum")));
        let e = errors("alpha=0.5\nbeta=0.5\ninitial=file\n");
        assert!(e.iter().any(|m| m.contains("needs a 'file' key")));
    }
}
