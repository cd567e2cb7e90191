//! A spinning sphere falling freely while its axis turns away from the
//! vertical. Prints the spin acceleration along g next to the closed-form
//! departure every tenth of a second.

use spinframe::liegroup::AxialVec3;
use spinframe::sim::{default_step, discretize_sphere, run_free_fall, MotionLaw, PrecessionLaw};
use spinframe::spin::{newton_departure, AngleJet, GravityContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (w, big_omega, t_end) = (300.0, 2.0, 1.0);
    let g = AxialVec3::new(0.0, 0.0, -9.81);
    let body = discretize_sphere(1.0, 1.0, 16, 32)?;
    let law = PrecessionLaw::nodding(big_omega, w);
    let h = default_step(w, t_end);
    let out = run_free_fall(
        &body,
        &MotionLaw::Precession(law),
        &GravityContext::constant(g),
        AxialVec3::zeros(),
        AxialVec3::zeros(),
        t_end,
        h,
    )?;
    println!("{:>6} {:>14} {:>14}", "t_s", "simulated", "closed_form");
    let every = (0.1 / h).round() as usize;
    for s in out.samples.iter().step_by(every).skip(1) {
        let angle = AngleJet { phi: big_omega * s.t, dphi: big_omega, ddphi: 0.0 };
        let predicted = newton_departure(&law.axis_state(s.t), &g, &angle);
        println!("{:>6.2} {:>14.6e} {:>14.6e}", s.t, s.spin_acceleration.dot(&g.normalize()), predicted);
    }
    println!("condition violations: {}", out.violations);
    Ok(())
}
