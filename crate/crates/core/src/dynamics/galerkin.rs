use serde::Serialize;

use super::simulate::{lockstep, with_last_sample, SimulateOptions, Trajectory};
use super::stepper::{SimState, TimeStepper};
use super::system::AqgSystem;
use crate::diagnostics::{NormSampler, NormSeries};
use crate::error::{Error, Result};
use crate::norms::{sobolev_norm, Flavor};
use crate::params::AqgParams;
use crate::spectral::{spectral_cutoff, SpectralField};

/// `‖θ_n(t) − θ_{2n}(t)‖_{H^{s'}}` at one sample time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferenceSample {
    pub t: f64,
    pub norm: f64,
}

#[derive(Debug, Clone)]
pub struct GalerkinPair {
    pub n: f64,
    pub s_prime: f64,
    pub coarse: Trajectory,
    pub fine: Trajectory,
    pub difference: Vec<DifferenceSample>,
}

impl GalerkinPair {
    pub fn final_difference(&self) -> f64 {
        self.difference.last().map_or(0.0, |d| d.norm)
    }
}

/// Runs the truncated systems with cutoffs `J_n` and `J_{2n}`, each from its
/// own truncation of `theta0`, in lockstep.
pub fn galerkin_pair(
    theta0: &SpectralField,
    params: AqgParams,
    stepper: &TimeStepper,
    options: &SimulateOptions,
    n: f64,
    s_prime: f64,
) -> Result<GalerkinPair> {
    let grid = *theta0.grid();
    let nyquist = grid.k_unit() * (grid.n1().min(grid.n2()) / 2) as f64;
    if !(n > 0.0 && n < nyquist) {
        return Err(Error::invalid(format!("cutoff n must lie in (0, {nyquist}) (got {n})")));
    }
    options.validate()?;
    let coarse_sys = AqgSystem::new(grid, params).with_cutoff(n)?;
    let fine_sys = AqgSystem::new(grid, params).with_cutoff(2.0 * n)?;
    let initial = vec![
        coarse_sys.project(&spectral_cutoff(theta0, n)?),
        fine_sys.project(&spectral_cutoff(theta0, 2.0 * n)?),
    ];

    let sampler = NormSampler::new(params, options.s_list.clone());
    let mut series = [NormSeries::new(sampler.meta.clone()), NormSeries::new(sampler.meta.clone())];
    let mut difference = Vec::new();
    let states = initial.into_iter().map(SimState::new).collect();
    let result = lockstep(&[&coarse_sys, &fine_sys], states, stepper, &options.schedule(), |stop, st| {
        if stop.sample {
            series[0].push(sampler.sample(&st[0]));
            series[1].push(sampler.sample(&st[1]));
            let d = st[0].theta.sub(&st[1].theta)?;
            difference.push(DifferenceSample {
                t: stop.t,
                norm: sobolev_norm(&d, s_prime, Flavor::Inhomogeneous, None),
            });
        }
        Ok(())
    });
    let mut finals = result.map_err(|(i, e)| with_last_sample(e, &series[i]))?;
    let [coarse_series, fine_series] = series;
    let fine_state = finals.pop().expect("two states");
    let coarse_state = finals.pop().expect("two states");
    Ok(GalerkinPair {
        n,
        s_prime,
        coarse: Trajectory {
            series: coarse_series,
            snapshots: Vec::new(),
            final_state: coarse_state,
        },
        fine: Trajectory {
            series: fine_series,
            snapshots: Vec::new(),
            final_state: fine_state,
        },
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::random_band_limited;
    use crate::init::Spectrum;
    use crate::spectral::GridSpec;

    #[test]
    fn initial_difference_is_the_shell() {
        let g = GridSpec::square(32).unwrap();
        let th = random_band_limited(g, 3, 8.0, Spectrum::Flat);
        let p = AqgParams::new(0.5, 0.75, 1.0, 1.0).unwrap();
        let pair = galerkin_pair(&th, p, &TimeStepper::fixed(0.01), &SimulateOptions::new(0.02, 0.01), 3.0, 0.0).unwrap();
        let shell = spectral_cutoff(&th, 6.0).unwrap().sub(&spectral_cutoff(&th, 3.0).unwrap()).unwrap();
        let d0 = pair.difference[0];
        assert_eq!(d0.t, 0.0);
        assert!((d0.norm - shell.l2_norm()).abs() <= 1e-13 * shell.l2_norm());
        assert_eq!(pair.difference.len(), 3);
    }

    #[test]
    fn cutoff_beyond_nyquist_rejected() {
        let g = GridSpec::square(16).unwrap();
        let p = AqgParams::new(0.5, 0.75, 1.0, 1.0).unwrap();
        let th = SpectralField::zeros(g);
        assert!(galerkin_pair(&th, p, &TimeStepper::fixed(0.1), &SimulateOptions::new(0.1, 0.1), 8.0, 0.0).is_err());
    }
}
