//! Seeded verification suite: seven groups of checks covering the group
//! isomorphisms, the boost form, the frame invariants, the zero-spin theorem,
//! the averaged spin velocities, the scenario predictions and the precession
//! identities.
//!
//! Every group draws from its own ChaCha8 stream of the seed, so groups can
//! run in any order or in parallel and still produce the same checks.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use nalgebra::{Matrix3, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::report::Check;
use crate::invariants::{apply_basic_property, j_invariants, sphere_differential, thomas_circle_states};
use crate::liegroup::{
    algebra_iso, apply_boost_c3, complex_to_lorentz, exp_so3, gs_split, hat, lorentz_algebra, lorentz_to_complex,
    AxialVec3, Complex64, ComplexRotation3, GsAlgebra, LorentzTransform, Rotation3, SkewMat3,
};
use crate::precession::{
    omega_fermi_walker, omega_gyro, omega_relative, omega_stars, precession_terms, GravSource, GyroState,
    PpnParams,
};
use crate::sim::{
    brute_force_average, default_step, discretize_disc, discretize_sphere, run_disc_on_plane, run_free_fall,
    run_spin_down, BodyModel, SimOutput, EulerPolynomialLaw, MotionLaw, PrecessionLaw,
};
use crate::spin::{
    averaged_sphere_velocity, disc_circle_radius, newton_departure, spin_down_displacement, system_spin_velocity,
    AngleJet, GravityContext, Particle, ParticleSystem,
};

/// One group of checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Group {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const GROUP_TITLES: [&str; 7] = [
    "isomorphisms",
    "boost equivalence",
    "frame invariants",
    "zero-spin theorem",
    "averaged spin velocity",
    "scenario predictions",
    "precession identities",
];

/// Runs group `id` (1 to 7) with the given seed.
pub fn run_group(id: u8, seed: u64) -> Group {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    let checks = match id {
        1 => isomorphisms(&mut rng),
        2 => boost_equivalence(&mut rng),
        3 => frame_invariants(&mut rng),
        4 => zero_spin(&mut rng),
        5 => averaged_velocity(),
        6 => predictions(),
        7 => precession_identities(&mut rng),
        _ => panic!("no verification group {id}"),
    };
    Group {
        id,
        title: GROUP_TITLES[id as usize - 1],
        checks,
    }
}

/// All seven groups, run on separate threads and returned in id order.
pub fn run_suite(seed: u64) -> Vec<Group> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=7).map(|id| s.spawn(move || run_group(id, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("verification group panicked")).collect()
    })
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

fn vector(rng: &mut ChaCha8Rng, half_width: f64) -> AxialVec3 {
    AxialVec3::from_fn(|_, _| uniform(rng, -half_width, half_width))
}

fn direction(rng: &mut ChaCha8Rng) -> AxialVec3 {
    loop {
        let v = vector(rng, 1.0);
        let n = v.norm();
        if (1e-3..=1.0).contains(&n) {
            return v / n;
        }
    }
}

fn rotation(rng: &mut ChaCha8Rng) -> Rotation3 {
    exp_so3(&hat(&(direction(rng) * uniform(rng, 0.0, PI))))
}

/// Velocity with uniform direction and speed below `max_speed`.
fn velocity(rng: &mut ChaCha8Rng, max_speed: f64) -> AxialVec3 {
    direction(rng) * uniform(rng, 0.0, max_speed)
}

fn lorentz_element(rng: &mut ChaCha8Rng) -> LorentzTransform {
    let r = LorentzTransform::from_rotation(&rotation(rng));
    let b = LorentzTransform::boost(&velocity(rng, 0.9), 1.0).expect("subluminal boost");
    r * b
}

fn max_diff3(a: &Matrix3<Complex64>, b: &Matrix3<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn max_diff4(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn isomorphisms(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut hom = 0.0_f64;
    let mut round_l = 0.0_f64;
    let mut round_c = 0.0_f64;
    for _ in 0..1000 {
        let (l1, l2) = (lorentz_element(rng), lorentz_element(rng));
        let f1 = lorentz_to_complex(&l1).expect("Lorentz element");
        let f2 = lorentz_to_complex(&l2).expect("Lorentz element");
        let f12 = lorentz_to_complex(&(l1 * l2)).expect("Lorentz element");
        hom = hom.max(max_diff3(f12.matrix(), (f1 * f2).matrix()));
        round_l = round_l.max(max_diff4(complex_to_lorentz(&f1).matrix(), l1.matrix()));
        let back = lorentz_to_complex(&complex_to_lorentz(&f1)).expect("Lorentz element");
        round_c = round_c.max(max_diff3(back.matrix(), f1.matrix()));
    }

    let mut iso = 0.0_f64;
    let mut split = 0.0_f64;
    for _ in 0..500 {
        let x = lorentz_algebra(&vector(rng, 1.0), &vector(rng, 1.0));
        let y = lorentz_algebra(&vector(rng, 1.0), &vector(rng, 1.0));
        let (ix, iy) = (algebra_iso(&x).unwrap(), algebra_iso(&y).unwrap());
        let lhs = algebra_iso(&(x * y - y * x)).expect("bracket stays in the algebra");
        iso = iso.max(max_diff3(&lhs, &(ix * iy - iy * ix)));

        let a = GsAlgebra::new(hat(&vector(rng, 1.0)), hat(&vector(rng, 1.0)));
        let b = GsAlgebra::new(hat(&vector(rng, 1.0)), hat(&vector(rng, 1.0)));
        let (ap, am) = gs_split(&a);
        let (bp, bm) = gs_split(&b);
        let (cp, cm) = gs_split(&a.bracket(&b));
        let gap = |x: &SkewMat3, y: &SkewMat3| (x.matrix() - y.matrix()).abs().max();
        split = split.max(gap(&cp, &ap.bracket(&bp)).max(gap(&cm, &am.bracket(&bm))));
    }

    vec![
        Check::at_most("isomorphism.homomorphism", hom, 1e-10),
        Check::at_most("isomorphism.round_trip_lorentz", round_l, 1e-10),
        Check::at_most("isomorphism.round_trip_complex", round_c, 1e-10),
        Check::at_most("isomorphism.algebra_bracket", iso, 1e-12),
        Check::at_most("isomorphism.gs_split_bracket", split, 1e-12),
    ]
}

fn boost_equivalence(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let c = 1.0;
    let mut space = 0.0_f64;
    let mut time = 0.0_f64;
    for _ in 0..500 {
        let v = velocity(rng, 0.9 * c);
        let dr = vector(rng, 1.0);
        let t = uniform(rng, -1.0, 1.0);
        let w = ComplexRotation3::boost(&v, c).expect("subluminal boost");
        let (x, tp) = complex_to_lorentz(&w).apply(&dr, t, c);
        let expected_t = (v / c).cross(&x) + v.normalize() * (c * tp);
        let (s, rt) = apply_boost_c3(&dr, t, &v, c, false).expect("subluminal boost");
        space = space.max((s - x).norm());
        time = time.max((rt - expected_t).norm());
    }
    vec![
        Check::at_most("boost.space_part", space, 1e-10),
        Check::at_most("boost.time_part", time, 1e-10),
    ]
}

fn frame_invariants(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut j1_err = 0.0_f64;
    let mut j2_err = 0.0_f64;
    let mut worked_j1 = 0.0_f64;
    let mut worked_j2 = 0.0_f64;
    for _ in 0..1000 {
        let r = uniform(rng, 0.1, 10.0);
        let tau = uniform(rng, -3.0, 3.0);
        let ds = uniform(rng, 1e-3, 1.0);
        let frame = rotation(rng);
        let m = frame.matrix();
        let (t, n, b) = (m.column(0).into_owned(), m.column(1).into_owned(), m.column(2).into_owned());
        let before = sphere_differential(&t, &b, r, tau, ds);
        let after = apply_basic_property(&before, &(-t * (tau * ds)), &(-n * r));
        let (j, k) = (j_invariants(&before, 1.0), j_invariants(&after, 1.0));
        let scale = j.j1;
        j1_err = j1_err.max((k.j1 - j.j1).abs() / scale);
        j2_err = j2_err.max((k.j2 - j.j2).abs() / scale);
        let expected_j1 = (2.0 + r * r * tau * tau) * ds * ds;
        worked_j1 = worked_j1.max((j.j1 - expected_j1).abs() / expected_j1);
        worked_j2 = worked_j2.max((j.j2 - r * tau * ds * ds).abs() / expected_j1);
    }

    let mut circle_j1 = 0.0_f64;
    let mut circle_j2 = 0.0_f64;
    for _ in 0..100 {
        let c = uniform(rng, 1.0, 10.0);
        let r = uniform(rng, 0.1, 2.0);
        let w = uniform(rng, 0.0, 0.9 * c / r);
        let expected = 1.0 + (1.0 - r * r * w * w / (2.0 * c * c)).powi(2);
        let (free, blocked) = thomas_circle_states(r, w, c);
        for f in [free, blocked] {
            let j = j_invariants(&f, c);
            circle_j1 = circle_j1.max((j.j1 - expected).abs() / expected);
            circle_j2 = circle_j2.max(j.j2.abs());
        }
    }

    vec![
        Check::at_most("invariants.sphere_j1_preserved", j1_err, 1e-12),
        Check::at_most("invariants.sphere_j2_preserved", j2_err, 1e-12),
        Check::at_most("invariants.sphere_j1_value", worked_j1, 1e-12),
        Check::at_most("invariants.sphere_j2_value", worked_j2, 1e-12),
        Check::at_most("invariants.circle_j1_value", circle_j1, 1e-12),
        Check::at_most("invariants.circle_j2_value", circle_j2, 1e-12),
    ]
}

fn zero_spin(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let n = rng.random_range(4..=20);
        let points = (0..n).map(|_| (uniform(rng, 0.5, 2.0), vector(rng, 1.0))).collect();
        let body = BodyModel::point_set(points).expect("positive masses");
        let law = EulerPolynomialLaw {
            axes: [direction(rng), direction(rng), direction(rng)],
            coeffs: [0; 3].map(|_| [0; 4].map(|_| uniform(rng, -1.0, 1.0))),
        };
        let jet = law.rotation_jet(uniform(rng, 0.0, 1.0));
        let particles: Vec<Particle> = body
            .particles()
            .iter()
            .map(|(m, x)| Particle { m: *m, jet: jet.apply(x) })
            .collect();
        let speed = particles.iter().map(|p| p.jet.r1.norm()).fold(0.0, f64::max);
        let sys = ParticleSystem::new(particles).expect("positive masses");
        worst = worst.max(system_spin_velocity(&sys).norm() / speed);
    }

    let sphere = discretize_sphere(1.0, 1.0, 64, 128).expect("valid counts");
    let law = MotionLaw::Precession(PrecessionLaw::tilted(FRAC_PI_4, 2.0, 50.0));
    let t = 0.3;
    let jet = law.rotation_jet(t, 0.0);
    let particles: Vec<Particle> = sphere
        .particles()
        .iter()
        .map(|(m, x)| Particle { m: *m, jet: jet.apply(x) })
        .collect();
    let speed = particles.iter().map(|p| p.jet.r1.norm()).fold(0.0, f64::max);
    let sys = ParticleSystem::new(particles).expect("positive masses");
    let sphere_rel = system_spin_velocity(&sys).norm() / speed;

    vec![
        Check::at_most("zero_spin.random_rigid", worst, 1e-8),
        Check::at_most("zero_spin.sphere_quadrature", sphere_rel, 1e-10),
    ]
}

/// Operating point shared by the averaged-velocity checks.
pub fn averaged_operating_point() -> (BodyModel, PrecessionLaw, AxialVec3) {
    let b0 = AxialVec3::new(0.6_f64.sin(), 0.0, 0.6_f64.cos());
    let law = PrecessionLaw::new(AxialVec3::y(), b0, 2.0, 300.0, -40.0);
    let body = discretize_sphere(1.0, 1.0, 64, 128).expect("valid counts");
    (body, law, AxialVec3::new(0.0, 0.0, -9.81))
}

fn averaged_velocity() -> Vec<Check> {
    let (body, law, g) = averaged_operating_point();
    let brute = brute_force_average(&body, &MotionLaw::Precession(law), &g, 0.0, 0.0);
    let closed = averaged_sphere_velocity(&law.axis_state(0.0), &g).expect("positive spin");
    let rel = |a: &AxialVec3, b: &AxialVec3| (a - b).norm() / b.norm();
    // the rest of the body-averaged velocity sets the scale for a vanishing term
    let scale = closed.v_i.norm() + closed.v_iii.norm() + closed.v_iv.norm();
    vec![
        Check::at_most("averaged.condition_ratio", brute.max_ratio, 1e-3),
        Check::at_most("averaged.v_i", rel(&brute.terms.v_i, &closed.v_i), 0.01),
        Check::at_most("averaged.v_ii", brute.terms.v_ii.norm() / scale, 0.01),
        Check::at_most("averaged.v_iii", rel(&brute.terms.v_iii, &closed.v_iii), 0.01),
        Check::at_most("averaged.v_iv", rel(&brute.terms.v_iv, &closed.v_iv), 0.01),
    ]
}

fn predictions() -> Vec<Check> {
    let hoop = discretize_disc(1.0, 1.0, 1, 64).expect("valid counts");
    let law = PrecessionLaw::tilted(FRAC_PI_4, 2.0, 50.0);
    let disc = run_disc_on_plane(&hoop, &law, 9.81, 2.0 * TAU / 2.0, 1e-3).expect("valid disc scenario");
    let mut checks = disc_checks(&disc, &law, FRAC_PI_4, 9.81);

    let spin_down = run_spin_down(100.0, 50.0, FRAC_PI_4, 10.0, 1.0, 1e-3).expect("valid spin-down");
    let l = spin_down.displacement.unwrap_or(f64::NAN);
    let l_closed = spin_down_displacement(100.0, 50.0, 10.0, FRAC_PI_4).expect("same-sign spins");
    checks.push(Check::relative("spin_down.displacement", l, 2.25e-3, 0.01));
    checks.push(Check::relative("spin_down.closed_form", l, l_closed, 1e-6));

    let sphere = discretize_sphere(1.0, 1.0, 16, 32).expect("valid counts");
    let law = PrecessionLaw::nodding(2.0, 300.0);
    let g = AxialVec3::new(0.0, 0.0, -9.81);
    let t_end = 1.5;
    let fall = run_free_fall(
        &sphere,
        &MotionLaw::Precession(law),
        &GravityContext::constant(g),
        AxialVec3::zeros(),
        AxialVec3::zeros(),
        t_end,
        default_step(law.w0, t_end),
    )
    .expect("valid free-fall scenario");
    checks.push(Check::at_most("free_fall.departure_rms", free_fall_departure(&fall, &law, &g), 0.02));
    checks
}

/// Checks for a disc whose axis keeps the tilt `phi` of `law`: the fitted
/// radius against the closed form, the fitted angular rate against `Ω` and
/// `V ⊥ b` at every sample.
pub fn disc_checks(out: &SimOutput, law: &PrecessionLaw, phi: f64, g_mag: f64) -> Vec<Check> {
    let g = AxialVec3::new(0.0, 0.0, -g_mag);
    let along_b = out
        .samples
        .iter()
        .map(|s| {
            let axis = law.axis_state(s.t);
            let v = averaged_sphere_velocity(&axis, &g).expect("positive spin").total;
            v.dot(&axis.b).abs() / v.norm()
        })
        .fold(0.0, f64::max);
    let predicted = disc_circle_radius(phi, law.w0, g_mag).expect("nonzero spin");
    vec![
        Check::relative("disc.radius", out.circle.map_or(f64::NAN, |c| c.radius), predicted, 0.02),
        Check::relative(
            "disc.angular_rate",
            out.angular_rate.map_or(f64::NAN, f64::abs),
            law.big_omega.abs(),
            0.01,
        ),
        Check::at_most("disc.velocity_along_axis", along_b, 1e-6),
    ]
}

/// Relative RMS difference between the simulated spin acceleration along `ĝ`
/// and the closed-form departure for a sphere whose axis turns away from the
/// vertical at the constant rate `Ω` of `law`.
pub fn free_fall_departure(out: &SimOutput, law: &PrecessionLaw, g: &AxialVec3) -> f64 {
    let g_hat = g.normalize();
    let (mut num, mut den) = (0.0, 0.0);
    // the end samples carry one-sided differences
    for s in &out.samples[1..out.samples.len().saturating_sub(1)] {
        let angle = AngleJet {
            phi: law.big_omega * s.t,
            dphi: law.big_omega,
            ddphi: 0.0,
        };
        let predicted = newton_departure(&law.axis_state(s.t), g, &angle);
        let simulated = s.spin_acceleration.dot(&g_hat);
        num += (simulated - predicted).powi(2);
        den += predicted * predicted;
    }
    (num / den).sqrt()
}

fn source(rng: &mut ChaCha8Rng, gyro: &AxialVec3) -> GravSource {
    let position = loop {
        let p = vector(rng, 10.0);
        if (p - gyro).norm() > 0.5 {
            break p;
        }
    };
    GravSource {
        mass: uniform(rng, 0.1, 10.0),
        position,
        velocity: vector(rng, 0.1),
        angular_momentum: vector(rng, 1.0),
    }
}

fn precession_identities(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let p = PpnParams { gamma: 1.0, g: 1.0, c: 1.0 };
    let mut identity = 0.0_f64;
    let mut drag_ratio = 0.0_f64;
    for _ in 0..1000 {
        let gyro = GyroState {
            position: vector(rng, 5.0),
            velocity: vector(rng, 0.1),
        };
        let sources: Vec<GravSource> = (0..rng.random_range(1..=4)).map(|_| source(rng, &gyro.position)).collect();
        let terms = precession_terms(&gyro, &sources, &p).expect("separated sources");
        let scale = 1.5 * terms.geodetic.norm() + 0.75 * terms.drag.norm();
        let rel = omega_relative(&gyro, &sources, &p).expect("separated sources");
        let diff = omega_gyro(&gyro, &sources, &p).unwrap() - omega_stars(&gyro, &sources, &p).unwrap();
        identity = identity.max((rel - diff).norm() / scale);

        let spinning = [GravSource {
            velocity: AxialVec3::zeros(),
            ..sources[0]
        }];
        let still = GyroState {
            velocity: AxialVec3::zeros(),
            ..gyro
        };
        let fw = omega_fermi_walker(&still, &spinning, &p).unwrap();
        let rel = omega_relative(&still, &spinning, &p).unwrap();
        drag_ratio = drag_ratio.max((rel.norm() / fw.norm() - 0.75).abs());
    }
    vec![
        Check::at_most("precession.relative_identity", identity, 1e-14),
        Check::at_most("precession.frame_drag_ratio", drag_ratio, 1e-15),
    ]
}
