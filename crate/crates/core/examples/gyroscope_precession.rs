//! Precession of a gyroscope in a polar orbit around a rotating Earth-like
//! body, in milliarcseconds per year.

use spinframe::liegroup::AxialVec3;
use spinframe::precession::{
    omega_fermi_walker, omega_gyro, omega_relative, omega_stars, GravSource, GyroState, PpnParams,
};

const MAS_PER_YEAR: f64 = 365.25 * 86_400.0 * 180.0 / std::f64::consts::PI * 3.6e6;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let earth = GravSource {
        mass: 5.972e24,
        position: AxialVec3::zeros(),
        velocity: AxialVec3::zeros(),
        angular_momentum: AxialVec3::new(0.0, 0.0, 5.86e33),
    };
    let gyro = GyroState {
        position: AxialVec3::new(7.027e6, 0.0, 0.0),
        velocity: AxialVec3::new(0.0, 0.0, 7.53e3),
    };
    let p = PpnParams::default();
    let sources = [earth];
    for (name, f) in [
        ("fermi-walker", omega_fermi_walker as fn(&GyroState, &[GravSource], &PpnParams) -> _),
        ("gyro", omega_gyro),
        ("stars", omega_stars),
        ("relative", omega_relative),
    ] {
        let o = f(&gyro, &sources, &p)? * MAS_PER_YEAR;
        println!("{name:<13} [{:>10.3} {:>10.3} {:>10.3}] mas/yr", o.x, o.y, o.z);
    }
    Ok(())
}
