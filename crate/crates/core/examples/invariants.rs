//! J invariants before and after converting a disallowed rotation into a
//! displacement, on a sphere and on a circle with Thomas precession.

use spinframe::invariants::{
    apply_basic_property, j_invariants, split_invariants, sphere_differential, thomas_circle_states,
};
use spinframe::liegroup::AxialVec3;

fn main() {
    let (t, n, b) = (AxialVec3::x(), AxialVec3::y(), AxialVec3::z());
    let (r, tau, ds) = (2.0, 0.5, 1e-2);
    let before = sphere_differential(&t, &b, r, tau, ds);
    let after = apply_basic_property(&before, &(-t * (tau * ds)), &(-n * r));
    for (name, f) in [("before", before), ("after", after)] {
        let j = j_invariants(&f, 1.0);
        let (i1, i2) = split_invariants(&f);
        println!("sphere {name:<6}: J1 = {:.6e}  J2 = {:.6e}  I1 = {i1:.6e}  I2 = {i2:.6e}", j.j1, j.j2);
    }
    println!("expected      : J1 = {:.6e}  J2 = {:.6e}", (2.0 + r * r * tau * tau) * ds * ds, r * tau * ds * ds);

    let (r, w, c) = (1.0, 2.0e8, 299_792_458.0);
    let (free, blocked) = thomas_circle_states(r, w, c);
    for (name, f) in [("free", free), ("blocked", blocked)] {
        let j = j_invariants(&f, c);
        println!("circle {name:<7}: J1 = {:.12}  J2 = {:e}", j.j1, j.j2);
    }
    println!("expected       : J1 = {:.12}", 1.0 + (1.0 - r * r * w * w / (2.0 * c * c)).powi(2));
}
