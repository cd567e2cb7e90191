//! Horizontal drift of a body whose spin falls from w1 to w2 about a fixed
//! tilted axis, for a few tilt angles.

use spinframe::sim::run_spin_down;
use spinframe::spin::spin_down_displacement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (w1, w2, g) = (100.0, 50.0, 10.0);
    println!("{:>8} {:>14} {:>14}", "phi_deg", "simulated_m", "closed_form_m");
    for deg in [15.0_f64, 30.0, 45.0, 60.0, 75.0] {
        let phi = deg.to_radians();
        let out = run_spin_down(w1, w2, phi, g, 1.0, 1e-3)?;
        println!(
            "{deg:>8.1} {:>14.6e} {:>14.6e}",
            out.displacement.unwrap_or(f64::NAN),
            spin_down_displacement(w1, w2, g, phi)?
        );
    }
    Ok(())
}
