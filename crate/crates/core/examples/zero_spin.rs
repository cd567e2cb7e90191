//! Mass-averaged spin velocity of rigid bodies turning about their barycenter:
//! a sphere under ring quadrature, two point masses, and a tumbling
//! five-point body where the particle binormals differ.

use spinframe::liegroup::AxialVec3;
use spinframe::sim::{discretize_sphere, rigid_trajectories, BodyModel, EulerPolynomialLaw, MotionLaw, PrecessionLaw};
use spinframe::spin::{system_spin_velocity, Particle, ParticleSystem};

fn relative_spin(body: &BodyModel, law: &MotionLaw, t: f64) -> f64 {
    let jets = rigid_trajectories(body, law, t, 1e-4);
    let speed = jets.iter().map(|j| j.r1.norm()).fold(0.0, f64::max);
    let particles = body
        .particles()
        .iter()
        .zip(jets)
        .map(|((m, _), jet)| Particle { m: *m, jet })
        .collect();
    let sys = ParticleSystem::new(particles).expect("positive masses");
    system_spin_velocity(&sys).norm() / speed
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tumbling = MotionLaw::EulerPolynomial(EulerPolynomialLaw {
        axes: [AxialVec3::z(), AxialVec3::x(), AxialVec3::z()],
        coeffs: [[0.0, 1.0, 0.2, 0.0], [0.3, 0.5, 0.0, -0.1], [0.0, -0.7, 0.1, 0.05]],
    });

    let sphere = discretize_sphere(1.0, 1.0, 64, 128)?;
    let precessing = MotionLaw::Precession(PrecessionLaw::tilted(0.7, 2.0, 50.0));
    println!("sphere, precessing axis: |V|/speed = {:e}", relative_spin(&sphere, &precessing, 0.3));

    let pair = BodyModel::point_set(vec![(1.0, AxialVec3::new(0.3, -0.2, 0.9)), (2.0, AxialVec3::new(-0.4, 0.1, 0.2))])?;
    println!("two masses, tumbling:    |V|/speed = {:e}", relative_spin(&pair, &tumbling, 0.4));

    let five = BodyModel::point_set(vec![
        (1.0, AxialVec3::new(1.0, 0.0, 0.0)),
        (1.5, AxialVec3::new(0.0, 1.0, 0.2)),
        (0.7, AxialVec3::new(-0.5, 0.3, 1.0)),
        (1.2, AxialVec3::new(0.2, -0.8, -0.6)),
        (0.9, AxialVec3::new(-0.4, -0.2, 0.3)),
    ])?;
    println!("five masses, tumbling:   |V|/speed = {:e}", relative_spin(&five, &tumbling, 0.4));
    Ok(())
}
