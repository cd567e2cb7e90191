//! SO(3,ℂ), the Lorentz group in the ict convention, and the isomorphism between them.
//!
//! A Lorentz event is the 4-vector `(x, y, z, ict)`. With this convention every
//! proper orthochronous Lorentz matrix is complex-orthogonal (`LᵀL = I`, plain
//! transpose), its spatial block and `(4,4)` entry are real and the mixed
//! entries are purely imaginary.

use std::ops::Mul;

use nalgebra::{Complex, Matrix3, Matrix4, SymmetricEigen, Vector4};

use super::so3::{hat, AxialVec3, Rotation3, SkewMat3, ROTATION_TOL};
use super::LieError;

pub type Complex64 = Complex<f64>;

const I: Complex64 = Complex::new(0.0, 1.0);

/// Below `|v| < ZERO_SPEED_FRAC · c` a velocity counts as no boost at all.
pub const ZERO_SPEED_FRAC: f64 = 1e-12;

fn complexify3(m: &Matrix3<f64>) -> Matrix3<Complex64> {
    m.map(|x| Complex::new(x, 0.0))
}

fn lorentz_factor(v: &AxialVec3, c: f64) -> Result<f64, LieError> {
    let speed = v.norm();
    if !(speed < c) {
        return Err(LieError::Superluminal { speed, c });
    }
    let beta = speed / c;
    Ok(1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// Element of SO(3,ℂ): `M Mᵀ = I` with the plain transpose and `det M = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexRotation3(Matrix3<Complex64>);

impl ComplexRotation3 {
    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Validates the group invariants. The tolerance scales with the squared
    /// entry size because boosts have entries of order γ.
    pub fn new(m: Matrix3<Complex64>) -> Result<Self, LieError> {
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max).powi(2);
        let residual = (m * m.transpose() - Matrix3::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let determinant = m.determinant();
        if residual > ROTATION_TOL * scale || (determinant - 1.0).norm() > ROTATION_TOL * scale {
            return Err(LieError::NotComplexRotation {
                residual,
                determinant,
            });
        }
        Ok(Self(m))
    }

    pub fn from_rotation(r: &Rotation3) -> Self {
        Self(complexify3(r.matrix()))
    }

    /// The Hermitian element `cos A + i sin A` of the boost with velocity `v`.
    pub fn boost(v: &AxialVec3, c: f64) -> Result<Self, LieError> {
        let (sin_a, cos_a) = boost_sin_cos(v, c)?;
        Ok(Self(
            complexify3(&cos_a) + complexify3(&sin_a.matrix()) * I,
        ))
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.0
    }

    /// `max |M Mᵀ − I|`.
    pub fn orthogonality_error(&self) -> f64 {
        (self.0 * self.0.transpose() - Matrix3::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |M − M^†|`.
    pub fn hermiticity_error(&self) -> f64 {
        (self.0 - self.0.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for ComplexRotation3 {
    type Output = ComplexRotation3;
    fn mul(self, rhs: ComplexRotation3) -> ComplexRotation3 {
        ComplexRotation3(self.0 * rhs.0)
    }
}

/// Proper orthochronous Lorentz transformation acting on `(x, y, z, ict)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform(Matrix4<Complex64>);

impl LorentzTransform {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Validates `LᵀL = I`, the real/imaginary block pattern and `L₄₄ ≥ 1`.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self, LieError> {
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max).powi(2);
        let tol = ROTATION_TOL * scale;
        let mut pattern = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let z = m[(i, j)];
                let off = if (i == 3) == (j == 3) { z.im } else { z.re };
                pattern = pattern.max(off.abs());
            }
        }
        let residual = (m.transpose() * m - Matrix4::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            .max(pattern);
        if residual > tol {
            return Err(LieError::NotLorentz { residual });
        }
        let l44 = m[(3, 3)].re;
        if l44 < 1.0 - tol || (m.determinant() - 1.0).norm() > tol {
            return Err(LieError::NotUnitComponent { l44 });
        }
        Ok(Self(m))
    }

    /// Embeds a spatial rotation as `[[M, 0], [0, 1]]`.
    pub fn from_rotation(r: &Rotation3) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&complexify3(r.matrix()));
        Self(m)
    }

    /// Pure boost with velocity `v`.
    ///
    /// With `γ = (1 − v²/c²)^(−1/2)` and `V_i = −iγv_i/c`, `V₄ = γ` the matrix is
    ///
    /// ```text
    /// [ δ_ij + γ² v_i v_j / (c²(1+γ))    V_i ]
    /// [ −V_j                             V₄  ]
    /// ```
    ///
    /// so that a spatial vector becomes `x⊥ + γ(x∥ + vt)` and time becomes
    /// `γ(t + v·x/c²)`.
    pub fn boost(v: &AxialVec3, c: f64) -> Result<Self, LieError> {
        let gamma = lorentz_factor(v, c)?;
        let mut m = Matrix4::identity();
        let k = gamma * gamma / (c * c * (1.0 + gamma));
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] += Complex::new(k * v[i] * v[j], 0.0);
            }
            let vi = Complex::new(0.0, -gamma * v[i] / c);
            m[(i, 3)] = vi;
            m[(3, i)] = -vi;
        }
        m[(3, 3)] = Complex::new(gamma, 0.0);
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// Applies the transformation to the event `(x, t)` and returns `(x′, t′)`.
    pub fn apply(&self, x: &AxialVec3, t: f64, c: f64) -> (AxialVec3, f64) {
        let event = Vector4::new(
            Complex::new(x.x, 0.0),
            Complex::new(x.y, 0.0),
            Complex::new(x.z, 0.0),
            Complex::new(0.0, c * t),
        );
        let out = self.0 * event;
        (AxialVec3::new(out[0].re, out[1].re, out[2].re), out[3].im / c)
    }

    /// `max |LᵀL − I|`.
    pub fn orthogonality_error(&self) -> f64 {
        (self.0.transpose() * self.0 - Matrix4::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for LorentzTransform {
    type Output = LorentzTransform;
    fn mul(self, rhs: LorentzTransform) -> LorentzTransform {
        LorentzTransform(self.0 * rhs.0)
    }
}

/// `(sin A, cos A)` of the boost with velocity `v`.
///
/// `sin A` is stored verbatim as
///
/// ```text
/// −γ/c · [  0    v_z  −v_y ]
///        [ −v_z   0    v_x ]
///        [  v_y  −v_x   0  ]
/// ```
///
/// which is `hat(γv/c)`, so `vee(sin A) = +γv/c`.
/// `cos A_ij = V₄δ_ij + V_iV_j/(1 + V₄)` with `V_i = −iγv_i/c`, `V₄ = γ`.
pub fn boost_sin_cos(v: &AxialVec3, c: f64) -> Result<(SkewMat3, Matrix3<f64>), LieError> {
    let gamma = lorentz_factor(v, c)?;
    let raw = Matrix3::new(0.0, v.z, -v.y, -v.z, 0.0, v.x, v.y, -v.x, 0.0) * (-gamma / c);
    let sin_a = SkewMat3::from_matrix(&raw, 0.0)?;
    let big_v: [Complex64; 3] = std::array::from_fn(|i| Complex::new(0.0, -gamma * v[i] / c));
    let cos_a = Matrix3::from_fn(|i, j| {
        let delta = if i == j { gamma } else { 0.0 };
        delta + (big_v[i] * big_v[j]).re / (1.0 + gamma)
    });
    Ok((sin_a, cos_a))
}

/// The isomorphism `F`: Lorentz group → SO(3,ℂ).
///
/// `L` is split uniquely as `[[M,0],[0,1]] · B(v)`. The boost velocity is read
/// off the last row, `M` is recovered as the spatial block of `L·B(v)ᵀ`, and
/// the image is `M (cos A + i sin A)`.
pub fn lorentz_to_complex(l: &LorentzTransform) -> Result<ComplexRotation3, LieError> {
    let m = l.matrix();
    let v4 = m[(3, 3)].re;
    if v4 < 1.0 - ROTATION_TOL * v4.abs().max(1.0) {
        return Err(LieError::NotUnitComponent { l44: v4 });
    }
    let v4 = v4.max(1.0);
    // with c = 1 the velocity is v = i V / V₄ where V_j = −L₄ⱼ
    let v = AxialVec3::from_fn(|j, _| (I * -m[(3, j)] / v4).re);
    let v = if v.norm() >= 1.0 { v * ((1.0 - 1e-16) / v.norm()) } else { v };
    let boost = LorentzTransform::boost(&v, 1.0)?;
    let rot = (m * boost.matrix().transpose()).fixed_view::<3, 3>(0, 0).map(|z| z.re);
    let rot = Rotation3::new(rot).map_err(|_| LieError::NotUnitComponent { l44: v4 })?;
    let b = ComplexRotation3::boost(&v, 1.0)?;
    Ok(ComplexRotation3(complexify3(rot.matrix()) * b.0))
}

/// Inverse of [`lorentz_to_complex`].
///
/// `Re W = M cos A` with `cos A` symmetric positive definite, so `cos A` is the
/// square root of `Re(W)ᵀ Re(W)` and `M = Re(W) cos A⁻¹`. Then
/// `sin A = Mᵀ Im W` gives `u = γv/c`.
pub fn complex_to_lorentz(w: &ComplexRotation3) -> LorentzTransform {
    let re = w.0.map(|z| z.re);
    let im = w.0.map(|z| z.im);
    let eig = SymmetricEigen::new(re.transpose() * re);
    let sqrt_vals = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    let inv_vals = sqrt_vals.map(|x| 1.0 / x);
    let q = eig.eigenvectors;
    let cos_inv = q * Matrix3::from_diagonal(&inv_vals) * q.transpose();
    let rot = Rotation3::from_matrix_unchecked(re * cos_inv);
    let sin_a = rot.matrix().transpose() * im;
    let u = AxialVec3::new(
        0.5 * (sin_a[(2, 1)] - sin_a[(1, 2)]),
        0.5 * (sin_a[(0, 2)] - sin_a[(2, 0)]),
        0.5 * (sin_a[(1, 0)] - sin_a[(0, 1)]),
    );
    let gamma = (1.0 + u.norm_squared()).sqrt();
    let boost = LorentzTransform::boost(&(u / gamma), 1.0)
        .expect("u/γ has norm below 1 for every finite u");
    LorentzTransform::from_rotation(&rot) * boost
}

/// Lorentz-algebra element with rotation parameters `(a, b, c)` and boost
/// parameters `(x, y, z)`:
///
/// ```text
/// [  0    c   −b   ix ]
/// [ −c    0    a   iy ]
/// [  b   −a    0   iz ]
/// [ −ix  −iy  −iz   0 ]
/// ```
pub fn lorentz_algebra(rot: &AxialVec3, boost: &AxialVec3) -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<3, 3>(0, 0)
        .copy_from(&complexify3(&-hat(rot).matrix()));
    for i in 0..3 {
        m[(i, 3)] = Complex::new(0.0, boost[i]);
        m[(3, i)] = Complex::new(0.0, -boost[i]);
    }
    m
}

/// The Lie-algebra isomorphism: the element above maps to
///
/// ```text
/// [    0       c+iz   −b−iy ]
/// [ −c−iz       0      a+ix ]
/// [  b+iy    −a−ix      0   ]
/// ```
pub fn algebra_iso(l4: &Matrix4<Complex64>) -> Result<Matrix3<Complex64>, LieError> {
    let scale = l4.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-12 * scale;
    let mut residual = 0.0_f64;
    let mut track = |x: f64| residual = residual.max(x.abs());
    for i in 0..3 {
        for j in 0..3 {
            track(l4[(i, j)].im);
            track(l4[(i, j)].re + l4[(j, i)].re);
        }
        track(l4[(i, 3)].re);
        track(l4[(3, i)].re);
        track(l4[(i, 3)].im + l4[(3, i)].im);
    }
    track(l4[(3, 3)].norm());
    if residual > tol {
        return Err(LieError::PatternViolation { residual });
    }
    let a = l4[(1, 2)].re;
    let b = l4[(2, 0)].re;
    let c = l4[(0, 1)].re;
    let p = [
        Complex::new(a, l4[(0, 3)].im),
        Complex::new(b, l4[(1, 3)].im),
        Complex::new(c, l4[(2, 3)].im),
    ];
    let zero = Complex::new(0.0, 0.0);
    Ok(Matrix3::new(
        zero, p[2], -p[1], //
        -p[2], zero, p[0], //
        p[1], -p[0], zero,
    ))
}

/// The C³ form of a boost: returns `(Δr_s, Δr_t)`.
///
/// With `c⃗ = c·v/|v|` and the non-simultaneity shift
/// `δt = γ²(Δr·v + v²t)/c²`, the self-frame result is
///
/// ```text
/// [Δr_s]   [cos A  −sin A] [Δr + v(t+δt)]
/// [Δr_t] = [sin A   cos A] [ c⃗(t+δt)    ]
/// ```
///
/// and the basic-frame result is that divided by `γ`, which coincides with the
/// Lorentz boost `x⊥ + γ(x∥ + vt)`. Below `|v| < 1e-12·c` there is no boost and
/// the result is `(Δr, 0)`.
pub fn apply_boost_c3(
    dr: &AxialVec3,
    t: f64,
    v: &AxialVec3,
    c: f64,
    self_frame: bool,
) -> Result<(AxialVec3, AxialVec3), LieError> {
    let gamma = lorentz_factor(v, c)?;
    let speed = v.norm();
    if speed < ZERO_SPEED_FRAC * c {
        return Ok((*dr, AxialVec3::zeros()));
    }
    let (sin_a, cos_a) = boost_sin_cos(v, c)?;
    let c_vec = v * (c / speed);
    let dt = gamma * gamma * (dr.dot(v) + speed * speed * t) / (c * c);
    let tt = t + dt;
    let x1 = dr + v * tt;
    let x2 = c_vec * tt;
    let s = cos_a * x1 - sin_a.apply(&x2);
    let time = sin_a.apply(&x1) + cos_a * x2;
    if self_frame {
        Ok((s, time))
    } else {
        Ok((s / gamma, time / gamma))
    }
}

/// The time vector `γv/c × x + offset` of a frame moving with velocity `v`.
/// Its dot product with `v` does not depend on `x`.
pub fn time_vector(
    x: &AxialVec3,
    v: &AxialVec3,
    c: f64,
    offset: &AxialVec3,
) -> Result<AxialVec3, LieError> {
    let gamma = lorentz_factor(v, c)?;
    Ok((v * (gamma / c)).cross(x) + offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroup::so3::vee;
    use approx::assert_relative_eq;

    fn cmax(m: impl IntoIterator<Item = Complex64>) -> f64 {
        m.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_velocity_gives_trivial_pair() {
        let (s, c) = boost_sin_cos(&AxialVec3::zeros(), 1.0).unwrap();
        assert_eq!(s, SkewMat3::zero());
        assert_eq!(c, Matrix3::identity());
    }

    #[test]
    fn boost_pair_for_six_tenths() {
        let (s, c) = boost_sin_cos(&AxialVec3::new(0.0, 0.0, 0.6), 1.0).unwrap();
        let expected = Matrix3::new(0.0, -0.75, 0.0, 0.75, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert_relative_eq!(s.matrix(), expected, epsilon = 1e-15);
        assert_relative_eq!(vee(&s), AxialVec3::new(0.0, 0.0, 0.75), epsilon = 1e-15);
        assert_relative_eq!(c[(0, 0)], 1.25, epsilon = 1e-15);
        assert_relative_eq!(c[(2, 2)], 1.0, epsilon = 1e-15);
        let w = ComplexRotation3::boost(&AxialVec3::new(0.0, 0.0, 0.6), 1.0).unwrap();
        let row = w.matrix().row(0);
        let self_dot = (row * row.transpose())[(0, 0)];
        assert_relative_eq!(self_dot.re, 1.0, epsilon = 1e-15);
        assert!(self_dot.im.abs() < 1e-15);
    }

    #[test]
    fn superluminal_speed_is_rejected() {
        let err = boost_sin_cos(&AxialVec3::new(1.0, 0.0, 0.0), 1.0).unwrap_err();
        assert!(matches!(err, LieError::Superluminal { .. }));
        assert!(apply_boost_c3(&AxialVec3::x(), 0.0, &AxialVec3::new(0.0, 2.0, 0.0), 1.0, false).is_err());
        assert!(time_vector(&AxialVec3::x(), &AxialVec3::new(0.0, 2.0, 0.0), 1.0, &AxialVec3::zeros()).is_err());
    }

    #[test]
    fn boost_element_is_hermitian_complex_rotation() {
        let v = AxialVec3::new(0.3, -0.4, 0.5);
        let w = ComplexRotation3::boost(&v, 1.0).unwrap();
        assert!(w.hermiticity_error() < 1e-15);
        assert!(w.orthogonality_error() < 1e-14);
        assert!(ComplexRotation3::new(*w.matrix()).is_ok());
    }

    #[test]
    fn identity_maps_to_identity() {
        let f = lorentz_to_complex(&LorentzTransform::identity()).unwrap();
        assert_eq!(f, ComplexRotation3::identity());
        assert_eq!(complex_to_lorentz(&ComplexRotation3::identity()), LorentzTransform::identity());
    }

    #[test]
    fn spatial_rotation_maps_to_itself() {
        let r = Rotation3::about_axis(&AxialVec3::new(1.0, 2.0, -0.5), 0.7);
        let f = lorentz_to_complex(&LorentzTransform::from_rotation(&r)).unwrap();
        let diff = f.matrix() - complexify3(r.matrix());
        assert!(cmax(diff.iter().copied()) < 1e-15);
    }

    #[test]
    fn pure_boost_round_trip_has_symmetric_spatial_block() {
        let w = ComplexRotation3::boost(&AxialVec3::new(0.2, 0.1, -0.6), 1.0).unwrap();
        let l = complex_to_lorentz(&w);
        let spatial = l.matrix().fixed_view::<3, 3>(0, 0).into_owned();
        assert!(cmax((spatial - spatial.transpose()).iter().copied()) < 1e-14);
        let back = lorentz_to_complex(&l).unwrap();
        assert!(cmax((back.matrix() - w.matrix()).iter().copied()) < 1e-13);
    }

    #[test]
    fn boost_acts_as_expected_on_events() {
        let v = AxialVec3::new(0.0, 0.0, 0.6);
        let l = LorentzTransform::boost(&v, 1.0).unwrap();
        let (x, t) = l.apply(&AxialVec3::new(1.0, 0.0, 2.0), 3.0, 1.0);
        assert_relative_eq!(x, AxialVec3::new(1.0, 0.0, 1.25 * (2.0 + 1.8)), epsilon = 1e-14);
        assert_relative_eq!(t, 1.25 * (3.0 + 1.2), epsilon = 1e-14);
        assert!(LorentzTransform::new(*l.matrix()).is_ok());
    }

    #[test]
    fn time_reversed_matrix_is_not_unit_component() {
        let mut m = Matrix4::identity();
        m[(3, 3)] = Complex::new(-1.0, 0.0);
        m[(0, 0)] = Complex::new(-1.0, 0.0);
        assert!(matches!(
            LorentzTransform::new(m),
            Err(LieError::NotUnitComponent { .. })
        ));
        let bogus = LorentzTransform(m);
        assert!(lorentz_to_complex(&bogus).is_err());
    }

    #[test]
    fn algebra_iso_places_entries() {
        assert_eq!(
            algebra_iso(&Matrix4::zeros()).unwrap(),
            Matrix3::<Complex64>::zeros()
        );
        let m = algebra_iso(&lorentz_algebra(&AxialVec3::x(), &AxialVec3::zeros())).unwrap();
        assert_eq!(m[(1, 2)], Complex::new(1.0, 0.0));
        assert_eq!(m[(2, 1)], Complex::new(-1.0, 0.0));
        let m = algebra_iso(&lorentz_algebra(&AxialVec3::zeros(), &AxialVec3::z())).unwrap();
        assert_eq!(m[(0, 1)], Complex::new(0.0, 1.0));
    }

    #[test]
    fn algebra_iso_rejects_wrong_pattern() {
        let mut m = Matrix4::zeros();
        m[(0, 3)] = Complex::new(1.0, 0.0);
        assert!(matches!(algebra_iso(&m), Err(LieError::PatternViolation { .. })));
    }

    #[test]
    fn c3_boost_at_rest_is_identity() {
        let dr = AxialVec3::new(1.0, 2.0, 3.0);
        for self_frame in [false, true] {
            let (s, t) = apply_boost_c3(&dr, 4.0, &AxialVec3::zeros(), 1.0, self_frame).unwrap();
            assert_eq!(s, dr);
            assert_eq!(t, AxialVec3::zeros());
        }
    }

    #[test]
    fn c3_boost_matches_lorentz_boost() {
        let dr = AxialVec3::new(0.3, -1.2, 0.8);
        let t = 0.7;
        let v = AxialVec3::new(0.2, 0.5, -0.4);
        let (s, time) = apply_boost_c3(&dr, t, &v, 1.0, false).unwrap();
        let l = LorentzTransform::boost(&v, 1.0).unwrap();
        let (x, tp) = l.apply(&dr, t, 1.0);
        assert_relative_eq!(s, x, epsilon = 1e-13);
        let expected_t = v.cross(&x) + v.normalize() * tp;
        assert_relative_eq!(time, expected_t, epsilon = 1e-13);
        let (s_self, t_self) = apply_boost_c3(&dr, t, &v, 1.0, true).unwrap();
        let gamma = lorentz_factor(&v, 1.0).unwrap();
        assert_relative_eq!(s_self, s * gamma, epsilon = 1e-13);
        assert_relative_eq!(t_self, time * gamma, epsilon = 1e-13);
    }

    #[test]
    fn time_vector_worked_value() {
        let tv = time_vector(
            &AxialVec3::x(),
            &AxialVec3::new(0.0, 0.0, 0.6),
            1.0,
            &AxialVec3::zeros(),
        )
        .unwrap();
        assert_relative_eq!(tv, AxialVec3::new(0.0, 0.75, 0.0), epsilon = 1e-15);
        let offset = AxialVec3::new(1.0, 2.0, 3.0);
        let tv = time_vector(&AxialVec3::new(5.0, 6.0, 7.0), &AxialVec3::zeros(), 1.0, &offset).unwrap();
        assert_eq!(tv, offset);
    }
}
