//! Semi-discrete (optionally Galerkin-truncated) system and its time
//! integration. The dissipation is diagonal in Fourier space and integrated
//! exactly; only the advection term sees the Runge-Kutta stages.

mod galerkin;
mod simulate;
mod stepper;
mod system;

pub use galerkin::{galerkin_pair, DifferenceSample, GalerkinPair};
pub use simulate::{simulate, simulate_system, SimulateOptions, Snapshot, Trajectory};
pub use stepper::{BlowUpReport, Scheme, SimState, StepSize, TimeStepper};
pub use system::{dissipation_symbol, nonlinear_term, AqgSystem, DissipationRates};

pub(crate) use simulate::run_many;
