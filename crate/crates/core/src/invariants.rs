//! Structural invariants of a moving frame and the rotation-to-displacement rule.
//!
//! The rotation differential `dξ` is stored already multiplied by the length
//! scale that turns small angles into lengths, so `|dξ|²` and `|dη|²` share
//! units and can be added.

use crate::liegroup::{gs_split, vee, AxialVec3, GsAlgebra};

/// Rotation, displacement and temporal differentials of a frame.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FrameDifferential {
    /// space-rotation differential in length units, m
    pub dxi: AxialVec3,
    /// space displacement, m
    pub deta: AxialVec3,
    /// temporal differential, s
    pub dtheta: AxialVec3,
}

impl FrameDifferential {
    pub fn spatial(dxi: AxialVec3, deta: AxialVec3) -> Self {
        Self {
            dxi,
            deta,
            dtheta: AxialVec3::zeros(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JInvariants {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: f64,
}

/// `J1 = |dξ|² + |dη|² − c²|dθ|²`, `J2 = dξ·dη`, `J3 = dξ·dθ`, `J4 = dη·dθ`.
pub fn j_invariants(f: &FrameDifferential, c: f64) -> JInvariants {
    JInvariants {
        j1: f.dxi.norm_squared() + f.deta.norm_squared() - c * c * f.dtheta.norm_squared(),
        j2: f.dxi.dot(&f.deta),
        j3: f.dxi.dot(&f.dtheta),
        j4: f.deta.dot(&f.dtheta),
    }
}

/// `(I1, I2) = (|dξ + dη|², |dξ − dη|²)`, the squared norms of the two so(3)
/// factors of the algebra element of `(dξ, dη)`. Then `J1 = (I1 + I2)/2` and
/// `J2 = (I1 − I2)/4` when `dθ = 0`.
pub fn split_invariants(f: &FrameDifferential) -> (f64, f64) {
    let (plus, minus) = gs_split(&GsAlgebra::from_differentials(&f.dxi, &f.deta));
    (vee(&minus).norm_squared(), vee(&plus).norm_squared())
}

/// Converts a disallowed rotation differential `ω` into a displacement about
/// the osculating center: `dη′ = dη + ω × r_vec` and `dξ′ = dξ + |r_vec| ω`.
/// `dθ` is untouched.
///
/// On a sphere of radius `r` with `ω = −τ t ds` and `r_vec = −r n` this maps
/// `(dη, dξ) = (t, rτ t + b) ds` to `(t + rτ b, b) ds`, keeping J1 and J2.
pub fn apply_basic_property(
    f: &FrameDifferential,
    unpermitted: &AxialVec3,
    r_vec: &AxialVec3,
) -> FrameDifferential {
    FrameDifferential {
        dxi: f.dxi + unpermitted * r_vec.norm(),
        deta: f.deta + unpermitted.cross(r_vec),
        dtheta: f.dtheta,
    }
}

/// `dS² = ds² + V²dt² − c²dt²`.
pub fn generalized_line_element(ds: f64, v: f64, dt: f64, c: f64) -> f64 {
    ds * ds + v * v * dt * dt - c * c * dt * dt
}

/// Whether `J3` and `J4` vanish to `1e-12` relative to the product of the
/// norms involved.
pub fn temporal_orthogonality_check(f: &FrameDifferential) -> (bool, bool) {
    let j = j_invariants(f, 1.0);
    let theta = f.dtheta.norm();
    let small = |value: f64, other: f64| value.abs() <= 1e-12 * (other * theta).max(f64::MIN_POSITIVE);
    (small(j.j3, f.dxi.norm()), small(j.j4, f.deta.norm()))
}

/// Sphere-case differentials before conversion: `dη = t ds`,
/// `dξ = (rτ t + b) ds` in an orthonormal frame `(t, n, b)`.
pub fn sphere_differential(t: &AxialVec3, b: &AxialVec3, r: f64, tau: f64, ds: f64) -> FrameDifferential {
    FrameDifferential::spatial((t * (r * tau) + b) * ds, t * ds)
}

/// Per unit `ds²`, the free and blocked states of a particle on a circle of
/// radius `r` spinning at `w`, including Thomas precession. Both states give
/// `J2 = 0` and `J1 = 1 + (1 − r²w²/(2c²))²`.
pub fn thomas_circle_states(r: f64, w: f64, c: f64) -> (FrameDifferential, FrameDifferential) {
    let (t, n, b) = (AxialVec3::x(), AxialVec3::y(), AxialVec3::z());
    let factor = 1.0 - r * r * w * w / (2.0 * c * c);
    let free = FrameDifferential::spatial(b * factor, t);
    // the blocked Thomas rotation reappears as a tangential displacement
    let speed = r * w;
    let thomas = -speed * (speed * w) / (2.0 * c * c);
    let dt = 1.0 / speed;
    let v_spin = (b * thomas).cross(&(-n * r));
    let blocked = FrameDifferential::spatial(b, t + v_spin * dt);
    (free, blocked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_differential() {
        let j = j_invariants(&FrameDifferential::default(), 3.0);
        assert_eq!((j.j1, j.j2, j.j3, j.j4), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn sphere_case_values() {
        let (t, n, b) = (AxialVec3::x(), AxialVec3::y(), AxialVec3::z());
        let (r, tau) = (2.0, 0.5);
        let f = sphere_differential(&t, &b, r, tau, 1.0);
        let j = j_invariants(&f, 1.0);
        assert_relative_eq!(j.j1, 3.0, epsilon = 1e-15);
        assert_relative_eq!(j.j2, 1.0, epsilon = 1e-15);
        let g = apply_basic_property(&f, &(-t * tau), &(-n * r));
        assert_relative_eq!(g.deta, t + b * (r * tau), epsilon = 1e-15);
        assert_relative_eq!(g.dxi, b, epsilon = 1e-15);
        let k = j_invariants(&g, 1.0);
        assert_relative_eq!(k.j1, j.j1, epsilon = 1e-15);
        assert_relative_eq!(k.j2, j.j2, epsilon = 1e-15);
    }

    #[test]
    fn blocked_circle_case() {
        let (t, n, b) = (AxialVec3::x(), AxialVec3::y(), AxialVec3::z());
        let r = 1.7;
        let free = FrameDifferential::spatial(AxialVec3::zeros(), t);
        let g = apply_basic_property(&free, &(-b / r), &(-n * r));
        assert!(g.deta.norm() < 1e-15);
        let j = j_invariants(&g, 1.0);
        assert_relative_eq!(j.j1, 1.0, epsilon = 1e-15);
        assert_eq!(j.j2, 0.0);
    }

    #[test]
    fn zero_unpermitted_is_identity() {
        let f = FrameDifferential {
            dxi: AxialVec3::new(1.0, 2.0, 3.0),
            deta: AxialVec3::new(-1.0, 0.5, 0.0),
            dtheta: AxialVec3::new(0.1, 0.0, 0.2),
        };
        assert_eq!(apply_basic_property(&f, &AxialVec3::zeros(), &AxialVec3::new(0.0, 4.0, 0.0)), f);
    }

    #[test]
    fn thomas_circle_values() {
        let (r, w, c): (f64, f64, f64) = (2.0, 3.0, 10.0);
        let expected = 1.0 + (1.0 - r * r * w * w / (2.0 * c * c)).powi(2);
        let (free, blocked) = thomas_circle_states(r, w, c);
        for f in [free, blocked] {
            let j = j_invariants(&f, c);
            assert_relative_eq!(j.j1, expected, epsilon = 1e-14);
            assert_eq!(j.j2, 0.0);
        }
    }

    #[test]
    fn line_element_reductions() {
        assert_eq!(generalized_line_element(2.0, 0.0, 1.0, 3.0), 4.0 - 9.0);
        assert_eq!(generalized_line_element(0.0, 3.0, 1.5, 3.0), 0.0);
        let (ds, dt, r, tau, c) = (0.3, 0.1, 2.0, 0.7, 5.0);
        let v = r * tau * ds / dt;
        let j1_form = ds * ds + ds * ds + r * r * tau * tau * ds * ds - c * c * dt * dt - ds * ds;
        assert_relative_eq!(generalized_line_element(ds, v, dt, c), j1_form, epsilon = 1e-14);
    }

    #[test]
    fn temporal_orthogonality() {
        let f = FrameDifferential {
            dxi: AxialVec3::y(),
            deta: AxialVec3::z(),
            dtheta: AxialVec3::x(),
        };
        assert_eq!(temporal_orthogonality_check(&f), (true, true));
        let f = FrameDifferential {
            dtheta: AxialVec3::new(0.3, 0.2, 0.1),
            ..f
        };
        assert_eq!(temporal_orthogonality_check(&f), (false, false));
    }

    #[test]
    fn split_reproduces_j1_j2() {
        let f = FrameDifferential::spatial(AxialVec3::new(0.3, -1.2, 0.5), AxialVec3::new(2.0, 0.1, -0.7));
        let (i1, i2) = split_invariants(&f);
        let j = j_invariants(&f, 1.0);
        assert_relative_eq!((i1 + i2) / 2.0, j.j1, epsilon = 1e-14);
        assert_relative_eq!((i1 - i2) / 4.0, j.j2, epsilon = 1e-14);
    }
}
