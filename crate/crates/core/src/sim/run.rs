//! Fixed-step scenario runners.

use nalgebra::Vector2;

use crate::liegroup::AxialVec3;
use crate::spin::{
    averaged_sphere_velocity, decompose_terms, system_spin_velocity_gravity, GravityContext, Particle,
    ParticleSystem, SpinTermBreakdown,
};
use crate::sum::CompensatedVecSum;

use super::body::BodyModel;
use super::fit::{angular_rate, fit_circle, CircleFit};
use super::motion::{rigid_trajectories, MotionLaw, PrecessionLaw};
use super::SimError;

/// Largest phase advance `w·h` per step used for the default step size.
pub const MAX_PHASE_STEP: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    /// barycenter position, m
    pub position: AxialVec3,
    /// spin velocity, m/s
    pub spin_velocity: AxialVec3,
    /// spin acceleration, m/s²
    pub spin_acceleration: AxialVec3,
    /// largest `|r′×g| / |r′×r″|` over the particles
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimOutput {
    pub h: f64,
    pub samples: Vec<Sample>,
    pub circle: Option<CircleFit>,
    pub angular_rate: Option<f64>,
    pub displacement: Option<f64>,
    /// samples where the ratio exceeded 1
    pub violations: usize,
}

impl SimOutput {
    fn new(h: f64, samples: Vec<Sample>) -> Self {
        let violations = samples.iter().filter(|s| s.ratio > 1.0).count();
        Self {
            h,
            samples,
            circle: None,
            angular_rate: None,
            displacement: None,
            violations,
        }
    }

    pub fn max_ratio(&self) -> f64 {
        self.samples.iter().map(|s| s.ratio).fold(0.0, f64::max)
    }

    /// CSV with a header row and 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t_s,x_m,y_m,z_m,vx_m_s,vy_m_s,vz_m_s,ax_m_s2,ay_m_s2,az_m_s2,ratio\n");
        for s in &self.samples {
            let values = [
                s.t,
                s.position.x,
                s.position.y,
                s.position.z,
                s.spin_velocity.x,
                s.spin_velocity.y,
                s.spin_velocity.z,
                s.spin_acceleration.x,
                s.spin_acceleration.y,
                s.spin_acceleration.z,
                s.ratio,
            ];
            let row: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Default step: the largest `h ≤ t_end` with `w·h ≤ 0.05`.
pub fn default_step(w_max: f64, t_end: f64) -> f64 {
    let h = MAX_PHASE_STEP / w_max.abs().max(f64::MIN_POSITIVE);
    h.min(t_end)
}

fn step_count(t_end: f64, h: f64) -> Result<usize, SimError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(SimError::NonPositive { what: "step h", value: h });
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(SimError::NonPositive { what: "end time", value: t_end });
    }
    Ok(((t_end / h).round() as usize).max(1))
}

/// Integrates a velocity field sampled on a half-step grid.
///
/// `velocity(t)` is evaluated at `t = (j − 1)·h/2` for `j = 0 ..= 2n + 2`, so
/// each sample time `kh` has neighbours at `kh ± h/2`. Position advances by
/// Simpson's rule and acceleration is the central difference over `h`.
fn integrate_displacement(
    n: usize,
    h: f64,
    start: AxialVec3,
    mut velocity: impl FnMut(f64) -> (AxialVec3, f64),
) -> Vec<Sample> {
    let half: Vec<(AxialVec3, f64)> = (0..=2 * n + 2).map(|j| velocity((j as f64 - 1.0) * 0.5 * h)).collect();
    let mut samples = Vec::with_capacity(n + 1);
    let mut position = start;
    for k in 0..=n {
        let idx = 2 * k + 1;
        let (v, ratio) = half[idx];
        let accel = (half[idx + 1].0 - half[idx - 1].0) / h;
        samples.push(Sample {
            t: k as f64 * h,
            position,
            spin_velocity: v,
            spin_acceleration: accel,
            ratio,
        });
        if k < n {
            position += (v + half[idx + 1].0 * 4.0 + half[idx + 2].0) * (h / 6.0);
        }
    }
    samples
}

fn particle_system(body: &BodyModel, law: &MotionLaw, t: f64, h: f64) -> ParticleSystem {
    let jets = rigid_trajectories(body, law, t, h);
    let particles = body
        .particles()
        .iter()
        .zip(jets)
        .map(|(&(m, _), jet)| Particle { m, jet })
        .collect();
    ParticleSystem::new(particles).expect("body models have positive masses")
}

fn max_condition_ratio(sys: &ParticleSystem, g: &AxialVec3) -> f64 {
    let u = sys.barycenter_velocity();
    sys.particles()
        .iter()
        .map(|p| decompose_terms(&p.jet.relative(&u, &AxialVec3::zeros(), &AxialVec3::zeros()), g).condition_ratio)
        .fold(0.0, f64::max)
}

/// Free fall of a spinning body.
///
/// The barycenter follows `x₀ + v₀t + ½gt²` (fourth-order Runge–Kutta, exact
/// for constant `g`) plus the spin displacement `∫V dt`, where `V` is the
/// mass-averaged gravitational spin velocity of the particles. Particle jets
/// are those of the rotation about the barycenter; the spin displacement does
/// not feed back into them.
pub fn run_free_fall(
    body: &BodyModel,
    law: &MotionLaw,
    gctx: &GravityContext,
    x0: AxialVec3,
    v0: AxialVec3,
    t_end: f64,
    h: f64,
) -> Result<SimOutput, SimError> {
    let n = step_count(t_end, h)?;
    let jet_step = 1e-3 * h.max(1e-6);
    let spin = integrate_displacement(n, h, AxialVec3::zeros(), |t| {
        let sys = particle_system(body, law, t, jet_step);
        (system_spin_velocity_gravity(&sys, gctx), max_condition_ratio(&sys, &gctx.g))
    });
    let mut x = x0;
    let mut v = v0;
    let g = gctx.g;
    let mut samples = Vec::with_capacity(spin.len());
    for s in spin {
        samples.push(Sample { position: x + s.position, ..s });
        // RK4 for x″ = g
        let k1 = (v, g);
        let k2 = (v + g * (0.5 * h), g);
        let k3 = (v + g * (0.5 * h), g);
        let k4 = (v + g * h, g);
        x += (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0);
        v += (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0);
    }
    Ok(SimOutput::new(h, samples))
}

/// A spinning body on a horizontal plane. The barycenter moves with the
/// horizontal projection of the averaged spin velocity, `g` points along −z,
/// and the path is fitted with a circle.
pub fn run_disc_on_plane(
    body: &BodyModel,
    law: &PrecessionLaw,
    g_mag: f64,
    t_end: f64,
    h: f64,
) -> Result<SimOutput, SimError> {
    let n = step_count(t_end, h)?;
    let g = AxialVec3::new(0.0, 0.0, -g_mag);
    let motion = MotionLaw::Precession(*law);
    let mut failure = None;
    let samples = integrate_displacement(n, h, AxialVec3::zeros(), |t| {
        let v = match averaged_sphere_velocity(&law.axis_state(t), &g) {
            Ok(b) => b.total,
            Err(e) => {
                failure.get_or_insert(e);
                AxialVec3::zeros()
            }
        };
        let sys = particle_system(body, &motion, t, h);
        (AxialVec3::new(v.x, v.y, 0.0), max_condition_ratio(&sys, &g))
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    let mut out = SimOutput::new(h, samples);
    let times: Vec<f64> = out.samples.iter().map(|s| s.t).collect();
    let points: Vec<Vector2<f64>> = out.samples.iter().map(|s| s.position.xy()).collect();
    out.circle = fit_circle(&points);
    out.angular_rate = out.circle.and_then(|c| angular_rate(&times, &points, &c.center));
    Ok(out)
}

/// Spin rate and its derivative at time `t`.
pub type SpinProfile<'a> = dyn Fn(f64) -> (f64, f64) + 'a;

/// Spin-down about a fixed axis at angle `phi` above the horizontal, with
/// `w(t)` going from `w1` to `w2` along a smoothstep.
pub fn run_spin_down(w1: f64, w2: f64, phi: f64, g_mag: f64, t_end: f64, h: f64) -> Result<SimOutput, SimError> {
    let profile = move |t: f64| {
        let x = (t / t_end).clamp(0.0, 1.0);
        let s = x * x * (3.0 - 2.0 * x);
        let ds = if (0.0..=1.0).contains(&(t / t_end)) { 6.0 * x * (1.0 - x) / t_end } else { 0.0 };
        (w1 + (w2 - w1) * s, (w2 - w1) * ds)
    };
    run_spin_down_profile(&profile, phi, g_mag, t_end, h)
}

/// Integrates `V = (3/w³)(g·b) w′ b` projected onto the horizontal plane for
/// an arbitrary spin profile. The displacement is reported along the
/// horizontal part of `b`.
pub fn run_spin_down_profile(
    profile: &SpinProfile<'_>,
    phi: f64,
    g_mag: f64,
    t_end: f64,
    h: f64,
) -> Result<SimOutput, SimError> {
    let n = step_count(t_end, h)?;
    let b = AxialVec3::new(phi.cos(), 0.0, phi.sin());
    let g = AxialVec3::new(0.0, 0.0, -g_mag);
    let sign = profile(0.0).0.signum();
    let mut bad = None;
    let samples = integrate_displacement(n, h, AxialVec3::zeros(), |t| {
        let (w, dw) = profile(t.clamp(0.0, t_end));
        if w == 0.0 || w.signum() != sign {
            bad.get_or_insert(t);
            return (AxialVec3::zeros(), 0.0);
        }
        let v = b * (3.0 * g.dot(&b) * dw / w.powi(3));
        (AxialVec3::new(v.x, v.y, 0.0), g_mag / (w * w))
    });
    if let Some(t) = bad {
        return Err(SimError::SpinSignChange { t });
    }
    let mut out = SimOutput::new(h, samples);
    let horizontal = AxialVec3::new(b.x, b.y, 0.0);
    let end = out.samples.last().map(|s| s.position).unwrap_or_default();
    out.displacement = Some(if horizontal.norm() > 0.0 {
        end.dot(&horizontal.normalize())
    } else {
        0.0
    });
    Ok(out)
}

/// Mass-weighted four-term split over the whole body, with the largest
/// per-particle condition ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceAverage {
    pub terms: SpinTermBreakdown,
    pub max_ratio: f64,
}

pub fn brute_force_average(body: &BodyModel, law: &MotionLaw, g: &AxialVec3, t: f64, h: f64) -> BruteForceAverage {
    let sys = particle_system(body, law, t, h);
    let u = sys.barycenter_velocity();
    let mut acc: [CompensatedVecSum; 4] = Default::default();
    let mut max_ratio = 0.0_f64;
    for p in sys.particles() {
        let d = decompose_terms(&p.jet.relative(&u, &AxialVec3::zeros(), &AxialVec3::zeros()), g);
        max_ratio = max_ratio.max(d.condition_ratio);
        for (sum, term) in acc.iter_mut().zip(d.terms.terms()) {
            sum.add(&(term * p.m));
        }
    }
    let m = sys.total_mass();
    let [a, b, c, d] = acc.map(|s| s.value() / m);
    BruteForceAverage {
        terms: SpinTermBreakdown::from_terms(a, b, c, d),
        max_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::body::{discretize_disc, discretize_sphere};
    use crate::spin::spin_down_displacement;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn non_spinning_body_follows_parabola() {
        let body = discretize_sphere(0.1, 1.0, 4, 8).unwrap();
        let still = MotionLaw::sampled(|_| crate::liegroup::Rotation3::identity());
        let g = AxialVec3::new(0.0, 0.0, -9.81);
        let x0 = AxialVec3::new(1.0, 2.0, 3.0);
        let v0 = AxialVec3::new(0.5, 0.0, 4.0);
        let out = run_free_fall(&body, &still, &GravityContext::constant(g), x0, v0, 1.0, 0.01).unwrap();
        for s in &out.samples {
            let exact = x0 + v0 * s.t + g * (0.5 * s.t * s.t);
            assert!((s.position - exact).norm() < 1e-10);
        }
        assert_eq!(out.violations, 0);
    }

    #[test]
    fn fixed_axis_spin_follows_parabola() {
        let body = discretize_sphere(0.1, 1.0, 8, 16).unwrap();
        let law = MotionLaw::Precession(PrecessionLaw::new(AxialVec3::z(), AxialVec3::new(0.3, 0.0, 1.0), 0.0, 200.0, 0.0));
        let g = AxialVec3::new(0.0, 0.0, -9.81);
        let out = run_free_fall(&body, &law, &GravityContext::constant(g), AxialVec3::zeros(), AxialVec3::zeros(), 0.05, 2.5e-4).unwrap();
        let last = out.samples.last().unwrap();
        let exact = g * (0.5 * last.t * last.t);
        assert!((last.position - exact).norm() < 1e-9, "{}", (last.position - exact).norm());
    }

    #[test]
    fn disc_circle_and_rate() {
        let body = discretize_disc(1.0, 1.0, 1, 16).unwrap();
        let law = PrecessionLaw::tilted(FRAC_PI_4, 2.0, 50.0);
        let out = run_disc_on_plane(&body, &law, 9.81, std::f64::consts::PI, 1e-3).unwrap();
        let fit = out.circle.unwrap();
        assert_relative_eq!(fit.radius, 9.81e-4, max_relative = 1e-3);
        assert_relative_eq!(out.angular_rate.unwrap(), 2.0, max_relative = 1e-3);
    }

    #[test]
    fn spin_down_matches_closed_form() {
        let out = run_spin_down(100.0, 50.0, FRAC_PI_4, 10.0, 2.0, 1e-3).unwrap();
        let expected = spin_down_displacement(100.0, 50.0, 10.0, FRAC_PI_4).unwrap();
        assert_relative_eq!(out.displacement.unwrap(), expected, max_relative = 1e-8);
        assert!(run_spin_down(100.0, -50.0, FRAC_PI_4, 10.0, 2.0, 1e-3).is_err());
    }

    #[test]
    fn brute_force_vanishes_without_gravity() {
        let body = discretize_sphere(1.0, 1.0, 8, 16).unwrap();
        let law = MotionLaw::Precession(PrecessionLaw::nodding(2.0, 100.0));
        let avg = brute_force_average(&body, &law, &AxialVec3::zeros(), 0.1, 1e-4);
        assert_eq!(avg.terms.total, AxialVec3::zeros());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let out = run_spin_down(100.0, 50.0, FRAC_PI_4, 10.0, 0.01, 1e-3).unwrap();
        let csv = out.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("t_s,"));
        assert_eq!(lines.len(), out.samples.len() + 1);
        assert_eq!(lines[1].split(',').count(), 11);
        let t: f64 = lines[2].split(',').next().unwrap().parse().unwrap();
        assert_eq!(t, out.samples[1].t);
    }
}
