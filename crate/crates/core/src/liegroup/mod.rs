//! Small-matrix Lie algebra: SO(3,ℝ), SO(3,ℂ), the Lorentz group and G_s.

mod gs;
mod lorentz;
mod so3;

use thiserror::Error;

pub use gs::{gs_exp, gs_split, gs_z_translation, ComplexGsAlgebra, GsAlgebra, GsElement};
pub use lorentz::{
    algebra_iso, apply_boost_c3, boost_sin_cos, complex_to_lorentz, lorentz_algebra,
    lorentz_to_complex, time_vector, Complex64, ComplexRotation3, LorentzTransform,
    ZERO_SPEED_FRAC,
};
pub use so3::{exp_so3, hat, vee, AxialVec3, Rotation3, SkewMat3, ROTATION_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("matrix is not antisymmetric (residual {residual:e})")]
    NotAntisymmetric { residual: f64 },
    #[error("matrix is not a rotation (|MᵀM − I| = {orthogonality:e}, det = {determinant})")]
    NotRotation { orthogonality: f64, determinant: f64 },
    #[error("matrix is not in SO(3,C) (|MMᵀ − I| = {residual:e}, det = {determinant})")]
    NotComplexRotation { residual: f64, determinant: Complex64 },
    #[error("matrix is not a Lorentz transformation (residual {residual:e})")]
    NotLorentz { residual: f64 },
    #[error("Lorentz matrix is outside the unit component (L44 = {l44})")]
    NotUnitComponent { l44: f64 },
    #[error("speed {speed} is not below c = {c}")]
    Superluminal { speed: f64, c: f64 },
    #[error("matrix does not match the Lorentz-algebra pattern (residual {residual:e})")]
    PatternViolation { residual: f64 },
    #[error("matrix is not an orthogonal [[P,Q],[Q,P]] block (residual {residual:e})")]
    NotGs { residual: f64 },
}
