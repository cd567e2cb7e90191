//! The six-dimensional group G_s with algebra `[[C, B], [B, C]]`.
//!
//! `(C, B) ↦ (C + B, C − B)` identifies the algebra with so(3) × so(3), and on
//! the group level `[[P, Q], [Q, P]] ↦ (P + Q, P − Q)` identifies G_s with
//! SO(3) × SO(3).

use std::ops::Mul;

use nalgebra::{Matrix3, Matrix6};

use super::lorentz::Complex64;
use super::so3::{exp_so3, hat, AxialVec3, Rotation3, SkewMat3, ROTATION_TOL};
use super::LieError;

/// Element of the G_s Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GsAlgebra {
    pub c: SkewMat3,
    pub b: SkewMat3,
}

impl GsAlgebra {
    pub fn new(c: SkewMat3, b: SkewMat3) -> Self {
        Self { c, b }
    }

    /// The algebra element of a frame differential: `C = hat(dξ)` is the space
    /// rotation block and `B = −hat(dη)` the displacement block.
    pub fn from_differentials(dxi: &AxialVec3, deta: &AxialVec3) -> Self {
        Self {
            c: hat(dxi),
            b: hat(&-deta),
        }
    }

    pub fn matrix(&self) -> Matrix6<f64> {
        block(&self.c.matrix(), &self.b.matrix())
    }

    /// Matrix commutator, computed blockwise.
    pub fn bracket(&self, other: &GsAlgebra) -> GsAlgebra {
        GsAlgebra {
            c: self.c.bracket(&other.c) + self.b.bracket(&other.b),
            b: self.c.bracket(&other.b) + self.b.bracket(&other.c),
        }
    }
}

/// `(C + B, C − B)`.
pub fn gs_split(g: &GsAlgebra) -> (SkewMat3, SkewMat3) {
    (g.c + g.b, g.c - g.b)
}

/// Complexified algebra element whose split is `(C + B + iT, C − B + iT)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ComplexGsAlgebra {
    pub c: SkewMat3,
    pub b: SkewMat3,
    pub t: SkewMat3,
}

impl ComplexGsAlgebra {
    pub fn split(&self) -> (Matrix3<Complex64>, Matrix3<Complex64>) {
        let cplx = |re: SkewMat3, im: SkewMat3| {
            re.matrix()
                .zip_map(&im.matrix(), Complex64::new)
        };
        (cplx(self.c + self.b, self.t), cplx(self.c - self.b, self.t))
    }
}

fn block(p: &Matrix3<f64>, q: &Matrix3<f64>) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(p);
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(q);
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(q);
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(p);
    m
}

/// Element of G_s: an orthogonal 6×6 matrix `[[P, Q], [Q, P]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GsElement(Matrix6<f64>);

impl GsElement {
    pub fn identity() -> Self {
        Self(Matrix6::identity())
    }

    pub fn new(m: Matrix6<f64>) -> Result<Self, LieError> {
        let ortho = (m.transpose() * m - Matrix6::identity()).amax();
        let p = m.fixed_view::<3, 3>(0, 0);
        let q = m.fixed_view::<3, 3>(0, 3);
        let structure = (m.fixed_view::<3, 3>(3, 3) - p)
            .amax()
            .max((m.fixed_view::<3, 3>(3, 0) - q).amax());
        let residual = ortho.max(structure);
        if residual > ROTATION_TOL {
            return Err(LieError::NotGs { residual });
        }
        Ok(Self(m))
    }

    /// The element corresponding to the pair `(R₁, R₂)`:
    /// `P = (R₁ + R₂)/2`, `Q = (R₁ − R₂)/2`.
    pub fn from_pair(r1: &Rotation3, r2: &Rotation3) -> Self {
        let p = (r1.matrix() + r2.matrix()) * 0.5;
        let q = (r1.matrix() - r2.matrix()) * 0.5;
        Self(block(&p, &q))
    }

    /// `(P + Q, P − Q)`.
    pub fn to_pair(&self) -> (Rotation3, Rotation3) {
        let p = self.0.fixed_view::<3, 3>(0, 0);
        let q = self.0.fixed_view::<3, 3>(0, 3);
        (
            Rotation3::from_matrix_unchecked((p + q).into_owned()),
            Rotation3::from_matrix_unchecked((p - q).into_owned()),
        )
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.0
    }
}

impl Mul for GsElement {
    type Output = GsElement;
    fn mul(self, rhs: GsElement) -> GsElement {
        GsElement(self.0 * rhs.0)
    }
}

/// Exponential of an algebra element, computed through the split.
pub fn gs_exp(g: &GsAlgebra) -> GsElement {
    let (plus, minus) = gs_split(g);
    GsElement::from_pair(&exp_so3(&plus), &exp_so3(&minus))
}

/// Translation by `alpha` along z:
///
/// ```text
/// [  cos α    0     0     0    sin α  0 ]
/// [    0    cos α   0  −sin α    0    0 ]
/// [    0      0     1     0      0    0 ]
/// [    0    sin α   0   cos α    0    0 ]
/// [ −sin α    0     0     0    cos α  0 ]
/// [    0      0     0     0      0    1 ]
/// ```
pub fn gs_z_translation(alpha: f64) -> GsElement {
    let (s, c) = alpha.sin_cos();
    #[rustfmt::skip]
    let m = Matrix6::new(
        c,   0.0, 0.0, 0.0, s,   0.0,
        0.0, c,   0.0, -s,  0.0, 0.0,
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
        0.0, s,   0.0, c,   0.0, 0.0,
        -s,  0.0, 0.0, 0.0, c,   0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
    );
    GsElement(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn skew(x: f64, y: f64, z: f64) -> SkewMat3 {
        hat(&AxialVec3::new(x, y, z))
    }

    #[test]
    fn split_of_zero_and_diagonal_embedding() {
        let zero = GsAlgebra::default();
        assert_eq!(gs_split(&zero), (SkewMat3::zero(), SkewMat3::zero()));
        let c = skew(1.0, -2.0, 0.5);
        assert_eq!(gs_split(&GsAlgebra::new(c, SkewMat3::zero())), (c, c));
    }

    #[test]
    fn blockwise_bracket_matches_matrix_commutator() {
        let x = GsAlgebra::new(skew(0.1, 0.2, -0.3), skew(-0.4, 0.5, 0.6));
        let y = GsAlgebra::new(skew(0.7, -0.8, 0.9), skew(1.0, 0.2, -0.1));
        let (mx, my) = (x.matrix(), y.matrix());
        let commutator = mx * my - my * mx;
        assert!((x.bracket(&y).matrix() - commutator).amax() < 1e-15);
    }

    #[test]
    fn translation_at_zero_and_quarter_turn() {
        assert_eq!(gs_z_translation(0.0), GsElement::identity());
        let m = *gs_z_translation(FRAC_PI_2).matrix();
        assert!((m[(0, 4)] - 1.0).abs() < 1e-15);
        assert!((m[(1, 3)] + 1.0).abs() < 1e-15);
        assert_eq!(m[(2, 2)], 1.0);
        assert_eq!(m[(5, 5)], 1.0);
        assert!(GsElement::new(m).is_ok());
    }

    #[test]
    fn translation_is_one_parameter_subgroup() {
        let (a, b) = (0.4, -1.3);
        let lhs = gs_z_translation(a) * gs_z_translation(b);
        assert!((lhs.matrix() - gs_z_translation(a + b).matrix()).amax() < 1e-15);
    }

    #[test]
    fn translation_is_exponential_of_b_block() {
        let alpha = 0.83;
        let g = GsAlgebra::new(SkewMat3::zero(), skew(0.0, 0.0, -alpha));
        assert!((gs_exp(&g).matrix() - gs_z_translation(alpha).matrix()).amax() < 1e-15);
    }

    #[test]
    fn pair_round_trip() {
        let r1 = exp_so3(&skew(0.3, 0.1, -0.2));
        let r2 = exp_so3(&skew(-1.0, 0.4, 0.9));
        let (a, b) = GsElement::from_pair(&r1, &r2).to_pair();
        assert!((a.matrix() - r1.matrix()).amax() < 1e-15);
        assert!((b.matrix() - r2.matrix()).amax() < 1e-15);
    }

    #[test]
    fn constructor_rejects_broken_block_structure() {
        let mut m = Matrix6::identity();
        m[(3, 3)] = -1.0;
        assert!(GsElement::new(m).is_err());
    }

    #[test]
    fn complex_split_carries_temporal_block() {
        let g = ComplexGsAlgebra {
            c: skew(1.0, 0.0, 0.0),
            b: skew(0.0, 1.0, 0.0),
            t: skew(0.0, 0.0, 1.0),
        };
        let (p, m) = g.split();
        assert_eq!(p[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(p[(2, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(0, 2)], Complex64::new(-1.0, 0.0));
    }
}
