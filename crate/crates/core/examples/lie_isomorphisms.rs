//! A Lorentz boost as a complex rotation, its C³ action on an event, and the
//! split of the G_s algebra into two so(3) factors.

use spinframe::liegroup::{
    apply_boost_c3, boost_sin_cos, complex_to_lorentz, gs_split, lorentz_to_complex, vee, AxialVec3,
    ComplexRotation3, GsAlgebra, LorentzTransform, Rotation3,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = 1.0;
    let v = AxialVec3::new(0.6, 0.0, 0.0);

    let (sin_a, cos_a) = boost_sin_cos(&v, c)?;
    println!("boost v = {v:?}");
    println!("vee(sin A) = {:?}", vee(&sin_a));
    println!("cos A = {cos_a:.6}");

    let turn = Rotation3::about_axis(&AxialVec3::z(), 0.4);
    let l = LorentzTransform::from_rotation(&turn) * LorentzTransform::boost(&v, c)?;
    let w = lorentz_to_complex(&l)?;
    println!("F(L) orthogonality error = {:e}", w.orthogonality_error());
    let back = complex_to_lorentz(&w);
    let err = (back.matrix() - l.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("round trip error = {err:e}");

    let dr = AxialVec3::new(1.0, 2.0, 0.5);
    let t = 0.3;
    let (x, tp) = complex_to_lorentz(&ComplexRotation3::boost(&v, c)?).apply(&dr, t, c);
    let (s, time) = apply_boost_c3(&dr, t, &v, c, false)?;
    println!("4D boost:  x' = {x:?}, t' = {tp:.6}");
    println!("C3 form:   space = {s:?}, time = {time:?}");

    let g = GsAlgebra::from_differentials(&AxialVec3::new(0.1, 0.2, 0.3), &AxialVec3::new(1.0, 0.0, 0.0));
    let (plus, minus) = gs_split(&g);
    println!("split factors: {:?} and {:?}", vee(&plus), vee(&minus));
    Ok(())
}
