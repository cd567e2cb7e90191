//! Frenet frames, curvature, torsion and osculating geometry of particle paths.

use thiserror::Error;

use crate::liegroup::AxialVec3;

/// Speeds at or below this (m/s) make the frame degenerate.
pub const EPS_SPEED: f64 = 1e-12;
/// `|r′ × r″| ≤ EPS_BEND · |r′||r″|` makes the frame degenerate.
pub const EPS_BEND: f64 = 1e-12;

/// Position and its first three time derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CurveJet {
    pub r: AxialVec3,
    pub r1: AxialVec3,
    pub r2: AxialVec3,
    pub r3: AxialVec3,
}

impl CurveJet {
    pub fn new(r: AxialVec3, r1: AxialVec3, r2: AxialVec3, r3: AxialVec3) -> Self {
        Self { r, r1, r2, r3 }
    }

    /// The same path seen from a frame translating with velocity `u` and
    /// acceleration `a`, jerk `j` (position is left unchanged).
    pub fn relative(&self, u: &AxialVec3, a: &AxialVec3, j: &AxialVec3) -> Self {
        Self {
            r: self.r,
            r1: self.r1 - u,
            r2: self.r2 - a,
            r3: self.r3 - j,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Degeneracy {
    #[error("particle is stationary")]
    Stationary,
    #[error("particle moves along a straight line")]
    Straight,
}

/// Moving trihedron with curvature and torsion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetFrame {
    pub t: AxialVec3,
    pub n: AxialVec3,
    pub b: AxialVec3,
    /// curvature, 1/m
    pub k: f64,
    /// torsion, 1/m
    pub tau: f64,
    /// ds/dt, m/s
    pub s_rate: f64,
    /// db/dt, 1/s
    pub dbdt: AxialVec3,
}

impl FrenetFrame {
    /// Largest entry of `FFᵀ − I` for `F = [t n b]`.
    pub fn orthonormality_error(&self) -> f64 {
        let f = nalgebra::Matrix3::from_columns(&[self.t, self.n, self.b]);
        (f * f.transpose() - nalgebra::Matrix3::identity()).amax()
    }

    /// Radius of curvature `1/k`.
    pub fn radius(&self) -> f64 {
        1.0 / self.k
    }
}

/// Frenet frame of a jet.
///
/// `t = r′/|r′|`, `b = r′×r″/|r′×r″|`, `n = b×t`, `k = |r′×r″|/|r′|³` and
/// `τ = (r′, r″, r‴)/|r′×r″|²`. The binormal rate follows from
/// `d(r′×r″)/dt = r′×r‴`.
pub fn frenet_frame(jet: &CurveJet) -> Result<FrenetFrame, Degeneracy> {
    let speed = jet.r1.norm();
    if speed <= EPS_SPEED {
        return Err(Degeneracy::Stationary);
    }
    let c = jet.r1.cross(&jet.r2);
    let cn = c.norm();
    if cn <= EPS_BEND * speed * jet.r2.norm() || cn == 0.0 {
        return Err(Degeneracy::Straight);
    }
    let t = jet.r1 / speed;
    let b = c / cn;
    let n = b.cross(&t);
    let dc = jet.r1.cross(&jet.r3);
    let dbdt = dc / cn - c * (c.dot(&dc) / (cn * cn * cn));
    Ok(FrenetFrame {
        t,
        n,
        b,
        k: cn / (speed * speed * speed),
        tau: c.dot(&jet.r3) / (cn * cn),
        s_rate: speed,
        dbdt,
    })
}

/// Position function of time together with a finite-difference step.
pub struct TrajectorySampler<'a> {
    f: Box<dyn Fn(f64) -> AxialVec3 + 'a>,
    h: f64,
}

impl<'a> TrajectorySampler<'a> {
    /// Sampler with step `h`; returns `None` unless `h > 0`.
    pub fn new(f: impl Fn(f64) -> AxialVec3 + 'a, h: f64) -> Option<Self> {
        (h > 0.0 && h.is_finite()).then(|| Self { f: Box::new(f), h })
    }

    /// Sampler with the default step `1e-4 · characteristic_time`.
    pub fn with_time_scale(f: impl Fn(f64) -> AxialVec3 + 'a, characteristic_time: f64) -> Option<Self> {
        Self::new(f, 1e-4 * characteristic_time)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn at(&self, t: f64) -> AxialVec3 {
        (self.f)(t)
    }
}

/// Central differences, all with O(h²) error:
///
/// ```text
/// r′ = (f₊₁ − f₋₁) / 2h
/// r″ = (f₊₁ − 2f₀ + f₋₁) / h²
/// r‴ = (f₊₂ − 2f₊₁ + 2f₋₁ − f₋₂) / 2h³
/// ```
pub fn jet_from_sampler(s: &TrajectorySampler<'_>, t: f64) -> CurveJet {
    let h = s.h;
    let f0 = s.at(t);
    let p1 = s.at(t + h);
    let m1 = s.at(t - h);
    let p2 = s.at(t + 2.0 * h);
    let m2 = s.at(t - 2.0 * h);
    CurveJet {
        r: f0,
        r1: (p1 - m1) / (2.0 * h),
        r2: (p1 - f0 * 2.0 + m1) / (h * h),
        r3: (p2 - p1 * 2.0 + m1 * 2.0 - m2) / (2.0 * h * h * h),
    }
}

/// Thomas precession `−(v × a)/(2c²)`.
pub fn thomas_precession(v: &AxialVec3, a: &AxialVec3, c: f64) -> AxialVec3 {
    -v.cross(a) / (2.0 * c * c)
}

/// Center of the osculating circle, `r + n/k`.
pub fn osculating_center(jet: &CurveJet) -> Result<AxialVec3, Degeneracy> {
    let f = frenet_frame(jet)?;
    Ok(jet.r + f.n / f.k)
}
