//! Body discretization, prescribed rigid motion and scenario runners.

mod body;
mod fit;
mod motion;
mod run;

use thiserror::Error;

use crate::spin::SpinError;

pub use body::{discretize_disc, discretize_sphere, BodyModel, Shape};
pub use fit::{angular_rate, fit_circle, CircleFit};
pub use motion::{rigid_trajectories, EulerPolynomialLaw, MotionLaw, PrecessionLaw, RotationJet};
pub use run::{
    brute_force_average, default_step, run_disc_on_plane, run_free_fall, run_spin_down, run_spin_down_profile,
    BruteForceAverage, Sample, SimOutput, SpinProfile, MAX_PHASE_STEP,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("body has no particles")]
    EmptyBody,
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("discretization too coarse ({rings} rings × {per_ring} per ring)")]
    TooCoarse { rings: usize, per_ring: usize },
    #[error("barycenter is {0:e} from the origin")]
    BarycenterOffset(f64),
    #[error("spin rate changes sign or vanishes near t = {t}")]
    SpinSignChange { t: f64 },
    #[error(transparent)]
    Spin(#[from] SpinError),
}
