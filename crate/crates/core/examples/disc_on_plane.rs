//! A hoop on a horizontal plane whose axis keeps a constant tilt while
//! circling the vertical. The barycenter traces a circle whose radius and
//! rate are fitted from the path.

use std::f64::consts::{FRAC_PI_4, TAU};

use spinframe::sim::{discretize_disc, run_disc_on_plane, PrecessionLaw};
use spinframe::spin::disc_circle_radius;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (phi, w, big_omega, g) = (FRAC_PI_4, 50.0, 2.0, 9.81);
    let hoop = discretize_disc(1.0, 1.0, 1, 64)?;
    let law = PrecessionLaw::tilted(phi, big_omega, w);
    let out = run_disc_on_plane(&hoop, &law, g, 2.0 * TAU / big_omega, 1e-3)?;
    let circle = out.circle.ok_or("no circle fit")?;
    println!("samples        = {}", out.samples.len());
    println!("fitted radius  = {:.6e} m", circle.radius);
    println!("closed form    = {:.6e} m", disc_circle_radius(phi, w, g)?);
    println!("fitted rate    = {:.6} rad/s", out.angular_rate.unwrap_or(f64::NAN));
    println!("fit residual   = {:e} m", circle.rms_residual);
    println!("largest ratio  = {:e}", out.max_ratio());
    Ok(())
}
