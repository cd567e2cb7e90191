//! Frenet frame of a helix from sampled positions, compared with the exact
//! curvature and torsion `a/(a²+b²)` and `b/(a²+b²)`.

use spinframe::kinematics::{frenet_frame, jet_from_sampler, thomas_precession, TrajectorySampler};
use spinframe::liegroup::AxialVec3;
use spinframe::spin::particle_spin_velocity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b, w) = (2.0, 0.5, 3.0);
    let helix = move |t: f64| AxialVec3::new(a * (w * t).cos(), a * (w * t).sin(), b * w * t);
    let sampler = TrajectorySampler::with_time_scale(helix, 1.0 / w).ok_or("bad step")?;
    let frame = frenet_frame(&jet_from_sampler(&sampler, 0.7))?;

    let denom = a * a + b * b;
    println!("step h = {:e}", sampler.h());
    println!("k   = {:.10} (exact {:.10})", frame.k, a / denom);
    println!("tau = {:.10} (exact {:.10})", frame.tau, b / denom);
    println!("orthonormality error = {:e}", frame.orthonormality_error());
    println!("spin velocity = {:?}", particle_spin_velocity(&frame));

    let v = frame.t * frame.s_rate;
    let acc = frame.n * (frame.k * frame.s_rate * frame.s_rate);
    println!("Thomas precession at c = 100: {:?}", thomas_precession(&v, &acc, 100.0));
    Ok(())
}
