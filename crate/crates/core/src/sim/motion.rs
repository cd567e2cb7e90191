//! Prescribed rigid motions `A(t)` and the particle jets they induce.

use std::sync::Arc;

use nalgebra::Matrix3;

use crate::kinematics::CurveJet;
use crate::liegroup::{exp_so3, hat, AxialVec3, Rotation3};
use crate::spin::AxisState;

use super::body::BodyModel;

/// `A(t)` and its first three time derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationJet {
    pub a: Matrix3<f64>,
    pub a1: Matrix3<f64>,
    pub a2: Matrix3<f64>,
    pub a3: Matrix3<f64>,
}

impl RotationJet {
    pub fn apply(&self, x: &AxialVec3) -> CurveJet {
        CurveJet::new(self.a * x, self.a1 * x, self.a2 * x, self.a3 * x)
    }
}

/// Spin axis `b(t) = R_k(Ωt) b₀` precessing about `k`, spin rate
/// `w(t) = w₀ + ẇt`, and body angular velocity `w(t) b(t)`.
///
/// With constant `w` the orientation has the closed form
/// `A(t) = R_k(Ωt) exp(t·hat(w b₀ − Ω k)) A₀`, where `A₀` is the minimal
/// rotation taking the body z-axis onto `b₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecessionLaw {
    pub k: AxialVec3,
    pub b0: AxialVec3,
    pub big_omega: f64,
    pub w0: f64,
    pub w_dot: f64,
}

impl PrecessionLaw {
    pub fn new(k: AxialVec3, b0: AxialVec3, big_omega: f64, w0: f64, w_dot: f64) -> Self {
        Self {
            k: k.normalize(),
            b0: b0.normalize(),
            big_omega,
            w0,
            w_dot,
        }
    }

    /// Axis at constant tilt `phi` from the vertical, circling the vertical:
    /// `b = (sin φ cos Ωt, sin φ sin Ωt, cos φ)`.
    pub fn tilted(phi: f64, big_omega: f64, w: f64) -> Self {
        Self::new(AxialVec3::z(), AxialVec3::new(phi.sin(), 0.0, phi.cos()), big_omega, w, 0.0)
    }

    /// Axis turning in the xz-plane, `b = (sin Ωt, 0, cos Ωt)`, so its angle
    /// to the vertical is `Ωt`.
    pub fn nodding(big_omega: f64, w: f64) -> Self {
        Self::new(AxialVec3::y(), AxialVec3::z(), big_omega, w, 0.0)
    }

    pub fn w(&self, t: f64) -> f64 {
        self.w0 + self.w_dot * t
    }

    pub fn axis(&self, t: f64) -> AxialVec3 {
        Rotation3::about_axis(&self.k, self.big_omega * t).apply(&self.b0)
    }

    pub fn axis_state(&self, t: f64) -> AxisState {
        let b = self.axis(t);
        AxisState {
            b,
            w: self.w(t),
            dbdt: self.k.cross(&b) * self.big_omega,
            dwdt: self.w_dot,
            curvature_flow: 0.0,
        }
    }

    /// Angular velocity and its first two derivatives.
    pub fn angular_velocity(&self, t: f64) -> [AxialVec3; 3] {
        let b = self.axis(t);
        let b1 = self.k.cross(&b) * self.big_omega;
        let b2 = self.k.cross(&b1) * self.big_omega;
        let w = self.w(t);
        [b * w, b * self.w_dot + b1 * w, b1 * (2.0 * self.w_dot) + b2 * w]
    }

    fn initial(&self) -> Rotation3 {
        Rotation3::aligning(&AxialVec3::z(), &self.b0)
    }

    pub fn orientation(&self, t: f64) -> Rotation3 {
        if self.w_dot == 0.0 {
            let drift = exp_so3(&hat(&((self.b0 * self.w0 - self.k * self.big_omega) * t)));
            return Rotation3::about_axis(&self.k, self.big_omega * t) * drift * self.initial();
        }
        // fourth-order Magnus steps of dA/dt = hat(ω(t)) A
        let rate = self.w0.abs().max(self.w(t).abs()) + self.big_omega.abs();
        let n = ((t.abs() * rate / 0.01).ceil() as usize).max(1);
        let h = t / n as f64;
        let (c1, c2) = (0.5 - 3f64.sqrt() / 6.0, 0.5 + 3f64.sqrt() / 6.0);
        let mut a = self.initial();
        for i in 0..n {
            let t0 = i as f64 * h;
            let o1 = self.angular_velocity(t0 + c1 * h)[0];
            let o2 = self.angular_velocity(t0 + c2 * h)[0];
            let step = (o1 + o2) * (0.5 * h) - o1.cross(&o2) * (3f64.sqrt() / 12.0 * h * h);
            a = exp_so3(&hat(&step)) * a;
        }
        a
    }

    /// `A′ = WA`, `A″ = (W′ + W²)A`, `A‴ = (W″ + 2W′W + WW′ + W³)A` with
    /// `W = hat(ω)`.
    pub fn rotation_jet(&self, t: f64) -> RotationJet {
        let a = *self.orientation(t).matrix();
        let [o, o1, o2] = self.angular_velocity(t);
        let (w, w1, w2) = (hat(&o).matrix(), hat(&o1).matrix(), hat(&o2).matrix());
        RotationJet {
            a,
            a1: w * a,
            a2: (w1 + w * w) * a,
            a3: (w2 + w1 * w * 2.0 + w * w1 + w * w * w) * a,
        }
    }
}

/// Orientation `exp(θ₁K₁) exp(θ₂K₂) exp(θ₃K₃)` about three fixed axes with
/// cubic angle polynomials `θᵢ(t) = Σⱼ cᵢⱼ tʲ`. Derivatives are exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerPolynomialLaw {
    pub axes: [AxialVec3; 3],
    pub coeffs: [[f64; 4]; 3],
}

impl EulerPolynomialLaw {
    pub fn rotation_jet(&self, t: f64) -> RotationJet {
        // derivatives 0..=3 of each factor exp(θK)
        let factors: Vec<[Matrix3<f64>; 4]> = (0..3)
            .map(|i| {
                let c = &self.coeffs[i];
                let th = c[0] + t * (c[1] + t * (c[2] + t * c[3]));
                let d1 = c[1] + t * (2.0 * c[2] + 3.0 * t * c[3]);
                let d2 = 2.0 * c[2] + 6.0 * t * c[3];
                let d3 = 6.0 * c[3];
                let axis = self.axes[i].normalize();
                let k = hat(&axis).matrix();
                let k2 = k * k;
                let e = *exp_so3(&hat(&(axis * th))).matrix();
                [
                    e,
                    k * d1 * e,
                    (k * d2 + k2 * (d1 * d1)) * e,
                    (k * d3 + k2 * (3.0 * d1 * d2) + k2 * k * (d1 * d1 * d1)) * e,
                ]
            })
            .collect();
        let mut out = [Matrix3::zeros(); 4];
        for (order, slot) in out.iter_mut().enumerate() {
            for i in 0..=order {
                for j in 0..=(order - i) {
                    let l = order - i - j;
                    let multinomial = factorial(order) / (factorial(i) * factorial(j) * factorial(l));
                    *slot += factors[0][i] * factors[1][j] * factors[2][l] * multinomial;
                }
            }
        }
        RotationJet { a: out[0], a1: out[1], a2: out[2], a3: out[3] }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

type RotationFn = dyn Fn(f64) -> Rotation3 + Send + Sync;

/// How a rigid body moves about its resting barycenter.
#[derive(Clone)]
pub enum MotionLaw {
    /// Arbitrary `A(t)`; jets come from central differences.
    Sampled(Arc<RotationFn>),
    /// Cubic Euler-angle polynomials with exact jets.
    EulerPolynomial(EulerPolynomialLaw),
    /// Spin about a precessing axis with exact jets.
    Precession(PrecessionLaw),
}

impl std::fmt::Debug for MotionLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Sampled(_) => f.write_str("Sampled(..)"),
            Self::EulerPolynomial(l) => f.debug_tuple("EulerPolynomial").field(l).finish(),
            Self::Precession(l) => f.debug_tuple("Precession").field(l).finish(),
        }
    }
}

impl MotionLaw {
    pub fn sampled(f: impl Fn(f64) -> Rotation3 + Send + Sync + 'static) -> Self {
        Self::Sampled(Arc::new(f))
    }

    pub fn orientation(&self, t: f64) -> Rotation3 {
        match self {
            Self::Sampled(f) => f(t),
            Self::EulerPolynomial(l) => Rotation3::from_matrix_unchecked(l.rotation_jet(t).a),
            Self::Precession(l) => l.orientation(t),
        }
    }

    /// `A(t)` with derivatives; `h` is the difference step for sampled laws
    /// (same stencils as [`crate::kinematics::jet_from_sampler`]).
    pub fn rotation_jet(&self, t: f64, h: f64) -> RotationJet {
        match self {
            Self::Sampled(f) => {
                let at = |s: f64| *f(s).matrix();
                let (a0, p1, m1, p2, m2) = (at(t), at(t + h), at(t - h), at(t + 2.0 * h), at(t - 2.0 * h));
                RotationJet {
                    a: a0,
                    a1: (p1 - m1) / (2.0 * h),
                    a2: (p1 - a0 * 2.0 + m1) / (h * h),
                    a3: (p2 - p1 * 2.0 + m1 * 2.0 - m2) / (2.0 * h * h * h),
                }
            }
            Self::EulerPolynomial(l) => l.rotation_jet(t),
            Self::Precession(l) => l.rotation_jet(t),
        }
    }
}

/// Jets of every particle of `body` at time `t`, in storage order.
pub fn rigid_trajectories(body: &BodyModel, law: &MotionLaw, t: f64, h: f64) -> Vec<CurveJet> {
    let jet = law.rotation_jet(t, h);
    body.particles().iter().map(|(_, x)| jet.apply(x)).collect()
}
