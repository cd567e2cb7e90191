//! SO(3,ℝ): axial vectors, antisymmetric matrices and rotations.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};

use super::LieError;

/// Real 3-vector whose units come from context (rad, m, m/s, ...).
pub type AxialVec3 = Vector3<f64>;

/// Tolerance for the orthogonality and determinant checks on [`Rotation3`].
pub const ROTATION_TOL: f64 = 1e-12;

/// Antisymmetric 3×3 matrix, stored as its three independent entries.
///
/// The matrix of the axial vector `(x, y, z)` is
///
/// ```text
/// [ 0  -z   y ]
/// [ z   0  -x ]
/// [-y   x   0 ]
/// ```
///
/// so that `hat(v) * w == v × w`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SkewMat3 {
    axial: AxialVec3,
}

impl SkewMat3 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a skew matrix from a full 3×3 matrix, rejecting anything that is
    /// not antisymmetric to `tol` (absolute, per entry).
    pub fn from_matrix(m: &Matrix3<f64>, tol: f64) -> Result<Self, LieError> {
        let asym = (m + m.transpose()).amax();
        if asym > tol {
            return Err(LieError::NotAntisymmetric { residual: asym });
        }
        // average the mirrored pairs so tiny asymmetries do not bias the result
        Ok(Self {
            axial: AxialVec3::new(
                0.5 * (m[(2, 1)] - m[(1, 2)]),
                0.5 * (m[(0, 2)] - m[(2, 0)]),
                0.5 * (m[(1, 0)] - m[(0, 1)]),
            ),
        })
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        let v = &self.axial;
        Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
    }

    pub fn axial(&self) -> AxialVec3 {
        self.axial
    }

    /// `self · w`, i.e. `axial × w`.
    pub fn apply(&self, w: &AxialVec3) -> AxialVec3 {
        self.axial.cross(w)
    }

    /// Lie bracket `[A, B] = AB − BA`, which is `hat(a × b)` on so(3).
    pub fn bracket(&self, other: &SkewMat3) -> SkewMat3 {
        hat(&self.axial.cross(&other.axial))
    }
}

impl Add for SkewMat3 {
    type Output = SkewMat3;
    fn add(self, rhs: SkewMat3) -> SkewMat3 {
        hat(&(self.axial + rhs.axial))
    }
}

impl Sub for SkewMat3 {
    type Output = SkewMat3;
    fn sub(self, rhs: SkewMat3) -> SkewMat3 {
        hat(&(self.axial - rhs.axial))
    }
}

impl Neg for SkewMat3 {
    type Output = SkewMat3;
    fn neg(self) -> SkewMat3 {
        hat(&-self.axial)
    }
}

impl Mul<f64> for SkewMat3 {
    type Output = SkewMat3;
    fn mul(self, rhs: f64) -> SkewMat3 {
        hat(&(self.axial * rhs))
    }
}

pub fn hat(v: &AxialVec3) -> SkewMat3 {
    SkewMat3 { axial: *v }
}

pub fn vee(m: &SkewMat3) -> AxialVec3 {
    m.axial
}

/// Element of SO(3,ℝ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation3(Matrix3<f64>);

impl Rotation3 {
    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Validates `MᵀM = I` and `det M = +1` to [`ROTATION_TOL`].
    pub fn new(m: Matrix3<f64>) -> Result<Self, LieError> {
        let ortho = (m.transpose() * m - Matrix3::identity()).amax();
        let det = m.determinant();
        if ortho > ROTATION_TOL || (det - 1.0).abs() > ROTATION_TOL {
            return Err(LieError::NotRotation {
                orthogonality: ortho,
                determinant: det,
            });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix that is orthogonal by construction.
    pub(crate) fn from_matrix_unchecked(m: Matrix3<f64>) -> Self {
        Self(m)
    }

    /// Rotation by `angle` about the unit vector `axis`.
    pub fn about_axis(axis: &AxialVec3, angle: f64) -> Self {
        exp_so3(&hat(&(axis.normalize() * angle)))
    }

    /// The minimal rotation taking `from` onto `to` (both nonzero).
    pub fn aligning(from: &AxialVec3, to: &AxialVec3) -> Self {
        let a = from.normalize();
        let b = to.normalize();
        let axis = a.cross(&b);
        let s = axis.norm();
        let c = a.dot(&b);
        if s < 1e-15 {
            if c > 0.0 {
                return Self::identity();
            }
            // antiparallel: half turn about any axis orthogonal to `a`
            let helper = if a.x.abs() < 0.9 {
                AxialVec3::x()
            } else {
                AxialVec3::y()
            };
            return Self::about_axis(&a.cross(&helper), std::f64::consts::PI);
        }
        Self::about_axis(&axis, s.atan2(c))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn apply(&self, v: &AxialVec3) -> AxialVec3 {
        self.0 * v
    }

    /// `max |MᵀM − I|`.
    pub fn orthogonality_error(&self) -> f64 {
        (self.0.transpose() * self.0 - Matrix3::identity()).amax()
    }
}

impl Mul for Rotation3 {
    type Output = Rotation3;
    fn mul(self, rhs: Rotation3) -> Rotation3 {
        Rotation3(self.0 * rhs.0)
    }
}

/// Exponential map so(3) → SO(3) (Rodrigues).
pub fn exp_so3(m: &SkewMat3) -> Rotation3 {
    let theta2 = m.axial.norm_squared();
    let k = m.matrix();
    let k2 = k * k;
    let (a, b) = if theta2 < 1e-10 {
        // Taylor coefficients of sin θ/θ and (1 − cos θ)/θ²
        (1.0 - theta2 / 6.0, 0.5 - theta2 / 24.0)
    } else {
        let theta = theta2.sqrt();
        (theta.sin() / theta, (1.0 - theta.cos()) / theta2)
    };
    Rotation3(Matrix3::identity() + k * a + k2 * b)
}
