//! Spin displacement, spin velocity and the measurable predictions built on them.

use thiserror::Error;

use crate::kinematics::{frenet_frame, CurveJet, FrenetFrame, EPS_BEND, EPS_SPEED};
use crate::liegroup::AxialVec3;
use crate::sum::{CompensatedSum, CompensatedVecSum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinError {
    #[error("particle system is empty")]
    EmptySystem,
    #[error("particle mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("angular speed must be positive, got {0}")]
    NonPositiveSpin(f64),
    #[error("angular speed must be nonzero")]
    ZeroSpin,
    #[error("angular speeds {0} and {1} have opposite signs")]
    OppositeSigns(f64, f64),
    #[error("parameter A must be positive, got {0}")]
    NonPositiveA(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Particle {
    pub m: f64,
    pub jet: CurveJet,
}

/// Particles and their barycenter velocity `u = Σ r′ᵢmᵢ / Σmⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticleSystem {
    particles: Vec<Particle>,
    u: AxialVec3,
    mass: f64,
}

impl ParticleSystem {
    pub fn new(particles: Vec<Particle>) -> Result<Self, SpinError> {
        if particles.is_empty() {
            return Err(SpinError::EmptySystem);
        }
        let mut mass = CompensatedSum::default();
        let mut momentum = CompensatedVecSum::default();
        for p in &particles {
            if !(p.m > 0.0) {
                return Err(SpinError::NonPositiveMass(p.m));
            }
            mass.add(p.m);
            momentum.add(&(p.jet.r1 * p.m));
        }
        let mass = mass.value();
        Ok(Self {
            u: momentum.value() / mass,
            particles,
            mass,
        })
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn barycenter_velocity(&self) -> AxialVec3 {
        self.u
    }

    pub fn total_mass(&self) -> f64 {
        self.mass
    }
}

/// Gravitational acceleration and its time derivative.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GravityContext {
    pub g: AxialVec3,
    pub g1: AxialVec3,
}

impl GravityContext {
    pub fn constant(g: AxialVec3) -> Self {
        Self {
            g,
            g1: AxialVec3::zeros(),
        }
    }
}

/// The four gravitational spin-velocity terms and their sum.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SpinTermBreakdown {
    pub v_i: AxialVec3,
    pub v_ii: AxialVec3,
    pub v_iii: AxialVec3,
    pub v_iv: AxialVec3,
    pub total: AxialVec3,
}

impl SpinTermBreakdown {
    pub fn from_terms(v_i: AxialVec3, v_ii: AxialVec3, v_iii: AxialVec3, v_iv: AxialVec3) -> Self {
        Self {
            v_i,
            v_ii,
            v_iii,
            v_iv,
            total: v_i + v_ii + v_iii + v_iv,
        }
    }

    pub fn terms(&self) -> [AxialVec3; 4] {
        [self.v_i, self.v_ii, self.v_iii, self.v_iv]
    }
}

/// Four-term split of one particle together with `|r′×g| / |r′×r″|`, the
/// quantity that must be small for the split to be accurate.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DecomposedJet {
    pub terms: SpinTermBreakdown,
    pub condition_ratio: f64,
}

/// State of the spin axis of an axisymmetric body.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisState {
    /// unit spin axis
    pub b: AxialVec3,
    /// angular speed, rad/s
    pub w: f64,
    /// db/dt, 1/s
    pub dbdt: AxialVec3,
    /// dw/dt, rad/s²
    pub dwdt: f64,
    /// `(2/(M w²)) Σ m · d ln k/dt`, 1/s
    pub curvature_flow: f64,
}

impl AxisState {
    pub fn steady(b: AxialVec3, w: f64) -> Self {
        Self {
            b: b.normalize(),
            w,
            dbdt: AxialVec3::zeros(),
            dwdt: 0.0,
            curvature_flow: 0.0,
        }
    }
}

/// An angle and its first two time derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AngleJet {
    pub phi: f64,
    pub dphi: f64,
    pub ddphi: f64,
}

/// Spin displacement per unit arc length, `dL/ds = −τ t × r_vec`, where
/// `r_vec` points from the osculating-circle center to the particle.
pub fn spin_displacement_rate(frame: &FrenetFrame, r_vec: &AxialVec3) -> AxialVec3 {
    -frame.t.cross(r_vec) * frame.tau
}

/// `V = −(db/dt · n) (1/k) b`.
pub fn particle_spin_velocity(frame: &FrenetFrame) -> AxialVec3 {
    -frame.b * (frame.dbdt.dot(&frame.n) / frame.k)
}

/// [`particle_spin_velocity`] of a jet, zero when the frame is degenerate.
pub fn jet_spin_velocity(jet: &CurveJet) -> AxialVec3 {
    frenet_frame(jet)
        .map(|f| particle_spin_velocity(&f))
        .unwrap_or_else(|_| AxialVec3::zeros())
}

/// `|p|⁴ (p, a, j) (p×a) / |p×a|⁴`, or zero when `p×a` degenerates.
fn spin_summand(p: &AxialVec3, a: &AxialVec3, j: &AxialVec3) -> AxialVec3 {
    let speed = p.norm();
    let c = p.cross(a);
    let cn2 = c.norm_squared();
    if speed <= EPS_SPEED || cn2.sqrt() <= EPS_BEND * speed * a.norm() || cn2 == 0.0 {
        return AxialVec3::zeros();
    }
    let p2 = speed * speed;
    c * (p2 * p2 * p.dot(&a.cross(j)) / (cn2 * cn2))
}

/// Mass-averaged spin velocity in the barycenter-rest frame, no gravity.
pub fn system_spin_velocity(sys: &ParticleSystem) -> AxialVec3 {
    system_spin_velocity_gravity(sys, &GravityContext::default())
}

/// Mass-averaged spin velocity with `r″ → r″ − g` and `r‴ → r‴ − g′`.
///
/// Summation runs in storage order with compensation; with `g = g′ = 0` the
/// subtractions are exact, so the result is bitwise that of
/// [`system_spin_velocity`].
pub fn system_spin_velocity_gravity(sys: &ParticleSystem, gctx: &GravityContext) -> AxialVec3 {
    let mut acc = CompensatedVecSum::default();
    for p in &sys.particles {
        let rel = p.jet.relative(&sys.u, &gctx.g, &gctx.g1);
        acc.add(&(spin_summand(&rel.r1, &rel.r2, &rel.r3) * p.m));
    }
    acc.value() / sys.mass
}

/// First-order-in-`g` split of one particle's gravitational spin velocity,
/// evaluated in a frame where the barycenter is momentarily at rest.
///
/// ```text
/// V_I   =  g·(r′×r‴) |r′|⁴ (r′×r″) / |r′×r″|⁴
/// V_II  = −g·(r′×r‴) |r′|⁴ (r′×g)  / |r′×r″|⁴
/// V_III = −(r′,r″,r‴) |r′|⁴ (r′×g) / |r′×r″|⁴
/// V_IV  = 4(r′,r″,r‴) |r′|⁴ (r′×r″) [(r′×r″)·(r′×g)] / |r′×r″|⁶
/// ```
pub fn decompose_terms(jet: &CurveJet, g: &AxialVec3) -> DecomposedJet {
    let (r1, r2, r3) = (&jet.r1, &jet.r2, &jet.r3);
    let speed = r1.norm();
    let c = r1.cross(r2);
    let cn2 = c.norm_squared();
    if speed <= EPS_SPEED || cn2.sqrt() <= EPS_BEND * speed * r2.norm() || cn2 == 0.0 {
        return DecomposedJet::default();
    }
    let p4 = speed.powi(4);
    let cn4 = cn2 * cn2;
    let c13 = r1.cross(r3);
    let cg = r1.cross(g);
    let g13 = g.dot(&c13);
    let triple = c.dot(r3);
    let v_i = c * (g13 * p4 / cn4);
    let v_ii = -cg * (g13 * p4 / cn4);
    let v_iii = -cg * (triple * p4 / cn4);
    let v_iv = c * (4.0 * triple * p4 * c.dot(&cg) / (cn4 * cn2));
    DecomposedJet {
        terms: SpinTermBreakdown::from_terms(v_i, v_ii, v_iii, v_iv),
        condition_ratio: cg.norm() / cn2.sqrt(),
    }
}

/// Closed-form averages of the four terms over an axisymmetric body spinning
/// about `axis.b`:
///
/// ```text
/// V_I   = (1/w²)(b′·g) b + (3/w³)(g·b) w′ b − (g·b) b · curvature_flow
/// V_II  = 0
/// V_III = (1/(2w²)) g × (b × b′)
/// V_IV  = −(2/w²)(b′·g) b
/// ```
pub fn averaged_sphere_velocity(axis: &AxisState, g: &AxialVec3) -> Result<SpinTermBreakdown, SpinError> {
    let w = axis.w;
    if !(w > 0.0) {
        return Err(SpinError::NonPositiveSpin(w));
    }
    let b = &axis.b;
    let w2 = w * w;
    let bg = axis.dbdt.dot(g);
    let gb = g.dot(b);
    let v_i = b * (bg / w2 + 3.0 * gb * axis.dwdt / (w2 * w) - gb * axis.curvature_flow);
    let v_iii = g.cross(&b.cross(&axis.dbdt)) / (2.0 * w2);
    let v_iv = b * (-2.0 * bg / w2);
    Ok(SpinTermBreakdown::from_terms(v_i, AxialVec3::zeros(), v_iii, v_iv))
}

/// Component of the spin acceleration along `ĝ` for a sphere spinning at
/// constant `w`, where `φ` is the angle between `b` and `g`:
/// `(−g/(4w²)) d²cos 2φ/dt²`.
pub fn newton_departure(axis: &AxisState, g: &AxialVec3, phi: &AngleJet) -> f64 {
    let (s2, c2) = (2.0 * phi.phi).sin_cos();
    let dd_cos2 = -4.0 * c2 * phi.dphi * phi.dphi - 2.0 * s2 * phi.ddphi;
    -g.norm() / (4.0 * axis.w * axis.w) * dd_cos2
}

/// Radius `g|sin 2φ|/(4w²)` of the circle traced by a disc whose axis
/// precesses at constant tilt `φ`.
pub fn disc_circle_radius(phi: f64, w: f64, g_mag: f64) -> Result<f64, SpinError> {
    if w == 0.0 {
        return Err(SpinError::ZeroSpin);
    }
    Ok(g_mag * (2.0 * phi).sin().abs() / (4.0 * w * w))
}

/// Horizontal displacement `(3/2) g (w₂⁻² − w₁⁻²) sin φ cos φ` when the spin
/// changes from `w1` to `w2` about a fixed axis at angle `φ` to the horizontal.
pub fn spin_down_displacement(w1: f64, w2: f64, g_mag: f64, phi: f64) -> Result<f64, SpinError> {
    if w1 == 0.0 || w2 == 0.0 {
        return Err(SpinError::ZeroSpin);
    }
    if w1.signum() != w2.signum() {
        return Err(SpinError::OppositeSigns(w1, w2));
    }
    Ok(1.5 * g_mag * (1.0 / (w2 * w2) - 1.0 / (w1 * w1)) * phi.sin() * phi.cos())
}

/// Spin velocity `(3/w³)(g·b) w′ b` of a body whose axis is fixed.
pub fn axis_fixed_spin_velocity(axis: &AxisState, g: &AxialVec3) -> AxialVec3 {
    axis.b * (3.0 * g.dot(&axis.b) * axis.dwdt / axis.w.powi(3))
}

/// `m|V|²/2`.
pub fn spin_energy(m: f64, v_spin: &AxialVec3) -> f64 {
    0.5 * m * v_spin.norm_squared()
}

/// `m|v|²/2 + m|V|²/2`: translational and spin energies add without a cross term.
pub fn total_kinetic_energy(m: f64, v: &AxialVec3, v_spin: &AxialVec3) -> f64 {
    0.5 * m * v.norm_squared() + spin_energy(m, v_spin)
}

/// `λ(A) = (1/(2πA⁴)) ∫₀^{2π} dx / [1 + (cos x + 1/A)²]²`.
///
/// The integrand is smooth and periodic, so the trapezoid rule converges
/// geometrically; nodes are doubled until the relative change drops below
/// `1e-12`.
pub fn lambda_coefficient(a: f64) -> Result<f64, SpinError> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(SpinError::NonPositiveA(a));
    }
    let inv = 1.0 / a;
    let f = |x: f64| {
        let q = 1.0 + (x.cos() + inv).powi(2);
        1.0 / (q * q)
    };
    let tau = std::f64::consts::TAU;
    let mut n = 16usize;
    let mut sum: f64 = (0..n).map(|i| f(tau * i as f64 / n as f64)).sum();
    let mut estimate = sum / n as f64;
    while n < 1 << 24 {
        // the new nodes are the midpoints of the old ones
        let mid: f64 = (0..n).map(|i| f(tau * (i as f64 + 0.5) / n as f64)).sum();
        sum += mid;
        n *= 2;
        let next = sum / n as f64;
        let done = (next - estimate).abs() <= 1e-12 * next.abs();
        estimate = next;
        if done {
            break;
        }
    }
    // estimate is the mean of the integrand, i.e. (1/2π)∫
    Ok(estimate / a.powi(4))
}

/// The aggregate `(2/(M w²)) Σ mᵢ d ln kᵢ/dt` from systems sampled at `t − h`
/// and `t + h`, with each curvature taken in the barycenter-rest frame.
/// Particles that are degenerate at either sample are skipped.
pub fn curvature_flow(before: &ParticleSystem, after: &ParticleSystem, h: f64, w: f64) -> f64 {
    let curvature = |sys: &ParticleSystem, p: &Particle| {
        let rel = p.jet.relative(&sys.u, &AxialVec3::zeros(), &AxialVec3::zeros());
        frenet_frame(&rel).ok().map(|f| f.k)
    };
    let mut acc = CompensatedSum::default();
    for (p0, p1) in before.particles.iter().zip(&after.particles) {
        if let (Some(k0), Some(k1)) = (curvature(before, p0), curvature(after, p1)) {
            acc.add(p0.m * (k1.ln() - k0.ln()) / (2.0 * h));
        }
    }
    2.0 * acc.value() / (before.mass * w * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn helix_jet(t: f64) -> CurveJet {
        let (s, c) = t.sin_cos();
        CurveJet::new(
            AxialVec3::new(3.0 * c, 3.0 * s, 4.0 * t),
            AxialVec3::new(-3.0 * s, 3.0 * c, 4.0),
            AxialVec3::new(-3.0 * c, -3.0 * s, 0.0),
            AxialVec3::new(3.0 * s, -3.0 * c, 0.0),
        )
    }

    fn rotating(r: AxialVec3, w: AxialVec3) -> CurveJet {
        let r1 = w.cross(&r);
        let r2 = w.cross(&r1);
        CurveJet::new(r, r1, r2, w.cross(&r2))
    }

    #[test]
    fn helix_displacement_rate() {
        let f = frenet_frame(&helix_jet(0.0)).unwrap();
        let rate = spin_displacement_rate(&f, &(-f.n * (25.0 / 3.0)));
        assert_relative_eq!(rate, f.b * (4.0 / 3.0), epsilon = 1e-14);
        // the velocity form is the same quantity scaled by ds/dt
        assert_relative_eq!(particle_spin_velocity(&f), rate * f.s_rate, epsilon = 1e-13);
    }

    #[test]
    fn fixed_axis_rotation_has_no_spin_velocity() {
        let jet = rotating(AxialVec3::new(1.0, 0.5, 0.2), AxialVec3::new(0.0, 0.0, 3.0));
        assert!(jet_spin_velocity(&jet).norm() < 1e-14);
    }

    #[test]
    fn two_particles_rotating_about_barycenter() {
        let w = AxialVec3::new(0.3, -1.0, 2.0);
        let a = AxialVec3::new(1.0, 0.2, -0.4);
        let sys = ParticleSystem::new(vec![
            Particle { m: 2.0, jet: rotating(a, w) },
            Particle { m: 1.0, jet: rotating(-a * 2.0, w) },
        ])
        .unwrap();
        assert!(sys.barycenter_velocity().norm() < 1e-15);
        assert!(system_spin_velocity(&sys).norm() < 1e-14);
    }

    #[test]
    fn zero_gravity_reduction_is_bitwise() {
        let sys = ParticleSystem::new(vec![
            Particle { m: 1.0, jet: helix_jet(0.1) },
            Particle { m: 3.0, jet: helix_jet(1.7) },
        ])
        .unwrap();
        let plain = system_spin_velocity(&sys);
        let grav = system_spin_velocity_gravity(&sys, &GravityContext::default());
        assert_eq!(plain.as_slice(), grav.as_slice());
    }

    #[test]
    fn system_rejects_empty_or_massless() {
        assert_eq!(ParticleSystem::new(vec![]), Err(SpinError::EmptySystem));
        let p = Particle { m: 0.0, jet: helix_jet(0.0) };
        assert!(matches!(ParticleSystem::new(vec![p]), Err(SpinError::NonPositiveMass(_))));
    }

    #[test]
    fn decomposition_vanishes_without_gravity() {
        let d = decompose_terms(&helix_jet(0.3), &AxialVec3::zeros());
        assert_eq!(d.terms.total, AxialVec3::zeros());
        assert_eq!(d.condition_ratio, 0.0);
    }

    #[test]
    fn decomposition_is_first_order_in_g() {
        let jet = helix_jet(0.3);
        let g = AxialVec3::new(0.01, -0.02, 0.015);
        let exact = |g: &AxialVec3| spin_summand(&jet.r1, &(jet.r2 - g), &jet.r3);
        let base = exact(&AxialVec3::zeros());
        let d = decompose_terms(&jet, &g);
        let err = (exact(&g) - base - d.terms.total).norm();
        let err_half = (exact(&(g * 0.5)) - base - decompose_terms(&jet, &(g * 0.5)).terms.total).norm();
        // remainder is O(|g|²): halving g quarters it
        assert!((err / err_half - 4.0).abs() < 0.05, "{err} {err_half}");
    }

    #[test]
    fn averaged_terms_basic_cases() {
        let mut axis = AxisState::steady(AxialVec3::new(0.3, 0.0, 1.0), 40.0);
        let g = AxialVec3::new(0.0, 0.0, -9.81);
        assert_eq!(averaged_sphere_velocity(&axis, &g).unwrap().total, AxialVec3::zeros());
        axis.dbdt = AxialVec3::new(0.0, 0.5, 0.0);
        let t = averaged_sphere_velocity(&axis, &g).unwrap();
        assert_eq!(t.v_ii, AxialVec3::zeros());
        let flipped = averaged_sphere_velocity(&axis, &-g).unwrap();
        assert_relative_eq!(flipped.v_iii, -t.v_iii, epsilon = 1e-18);
        axis.w = 0.0;
        assert!(averaged_sphere_velocity(&axis, &g).is_err());
    }

    #[test]
    fn axis_fixed_velocity_matches_average() {
        let mut axis = AxisState::steady(AxialVec3::new(1.0, 0.0, 1.0), 70.0);
        axis.dwdt = -3.0;
        let g = AxialVec3::new(0.0, 0.0, -10.0);
        let avg = averaged_sphere_velocity(&axis, &g).unwrap();
        assert_relative_eq!(avg.total, axis_fixed_spin_velocity(&axis, &g), epsilon = 1e-18);
        axis.b = AxialVec3::x();
        assert_eq!(axis_fixed_spin_velocity(&axis, &g), AxialVec3::zeros());
    }

    #[test]
    fn newton_departure_for_uniform_precession() {
        let axis = AxisState::steady(AxialVec3::z(), 300.0);
        let g = AxialVec3::new(0.0, 0.0, -9.81);
        let still = AngleJet { phi: 0.4, dphi: 0.0, ddphi: 0.0 };
        assert_eq!(newton_departure(&axis, &g, &still), 0.0);
        let (om, t) = (2.0, 0.35);
        let phi = AngleJet { phi: om * t, dphi: om, ddphi: 0.0 };
        let expected = 9.81 * om * om / (300.0 * 300.0) * (2.0 * om * t).cos();
        assert_relative_eq!(newton_departure(&axis, &g, &phi), expected, epsilon = 1e-18);
    }

    #[test]
    fn circle_radius_values() {
        assert_eq!(disc_circle_radius(0.0, 50.0, 9.81).unwrap(), 0.0);
        assert_relative_eq!(disc_circle_radius(FRAC_PI_4, 50.0, 9.81).unwrap(), 9.81e-4, epsilon = 1e-18);
        let r1 = disc_circle_radius(0.3, 20.0, 9.81).unwrap();
        let r2 = disc_circle_radius(0.3, 40.0, 9.81).unwrap();
        assert_relative_eq!(r1, 4.0 * r2, epsilon = 1e-18);
        assert_eq!(disc_circle_radius(0.3, 0.0, 9.81), Err(SpinError::ZeroSpin));
    }

    #[test]
    fn spin_down_values() {
        assert_eq!(spin_down_displacement(80.0, 80.0, 9.81, 0.3).unwrap(), 0.0);
        assert_relative_eq!(spin_down_displacement(100.0, 50.0, 10.0, FRAC_PI_4).unwrap(), 2.25e-3, epsilon = 1e-15);
        assert!(matches!(spin_down_displacement(100.0, -50.0, 10.0, 0.3), Err(SpinError::OppositeSigns(..))));
        assert_eq!(spin_down_displacement(0.0, 50.0, 10.0, 0.3), Err(SpinError::ZeroSpin));
    }

    #[test]
    fn energies() {
        assert_eq!(spin_energy(1.0, &AxialVec3::zeros()), 0.0);
        assert_eq!(spin_energy(2.0, &AxialVec3::new(0.0, 3.0, 0.0)), 9.0);
        let v = AxialVec3::new(1.0, 0.0, 0.0);
        let vs = AxialVec3::new(1.0, 1.0, 0.0);
        let split = total_kinetic_energy(2.0, &v, &vs);
        assert_eq!(split, 3.0);
        assert_ne!(split, 0.5 * 2.0 * (v + vs).norm_squared());
    }

    #[test]
    fn lambda_regression_values() {
        // reference values from 30-digit adaptive quadrature
        let cases = [
            (0.1, 1.02949448524653),
            (1.0, 0.419933826379212),
            (3.0, 0.00655396104685579),
            (0.6245996639742102, 1.1353401750677223),
        ];
        for (a, expected) in cases {
            assert_relative_eq!(lambda_coefficient(a).unwrap(), expected, max_relative = 1e-12);
        }
        assert!(lambda_coefficient(0.0).is_err());
        assert!(lambda_coefficient(-1.0).is_err());
    }
}
