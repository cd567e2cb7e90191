//! Precession of a gyroscope axis near moving, rotating gravitating bodies.
//!
//! Every formula here is a combination of three source sums
//!
//! ```text
//! geodetic  = Σ (v − v_a) × ∇(G m_a / (r_a c²))
//! drag      = Σ G [J_a − 3 n̂_a (n̂_a·J_a)] / (r_a³ c²)
//! anomalous = Σ v_a × ∇(G m_a / (r_a c²))
//! ```
//!
//! with `n̂_a` the unit vector from source `a` to the gyroscope, so that
//! `∇(G m_a / (r_a c²)) = −G m_a n̂_a / (r_a² c²)` at the gyroscope.

use thiserror::Error;

use crate::liegroup::AxialVec3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrecessionError {
    #[error("gyroscope coincides with source {0}")]
    CoincidentSource(usize),
    #[error("source {index} has non-positive mass {mass}")]
    NonPositiveMass { index: usize, mass: f64 },
    #[error("G and c must be positive")]
    NonPositiveConstant,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GravSource {
    /// kg
    pub mass: f64,
    /// m
    pub position: AxialVec3,
    /// m/s
    pub velocity: AxialVec3,
    /// kg·m²/s
    pub angular_momentum: AxialVec3,
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GyroState {
    pub position: AxialVec3,
    pub velocity: AxialVec3,
}

/// Post-Newtonian parameter γ and the constants G and c.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PpnParams {
    pub gamma: f64,
    pub g: f64,
    pub c: f64,
}

impl Default for PpnParams {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            g: 6.674_30e-11,
            c: 299_792_458.0,
        }
    }
}

/// The three source sums, in rad/s.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PrecessionTerms {
    pub geodetic: AxialVec3,
    pub drag: AxialVec3,
    pub anomalous: AxialVec3,
}

impl PrecessionTerms {
    /// `geo·geodetic − drag·drag − anomalous·anomalous`.
    pub fn combine(&self, geo: f64, drag: f64, anomalous: f64) -> AxialVec3 {
        self.geodetic * geo - self.drag * drag - self.anomalous * anomalous
    }
}

pub fn precession_terms(
    gyro: &GyroState,
    sources: &[GravSource],
    p: &PpnParams,
) -> Result<PrecessionTerms, PrecessionError> {
    if !(p.g > 0.0 && p.c > 0.0) {
        return Err(PrecessionError::NonPositiveConstant);
    }
    let c2 = p.c * p.c;
    let mut out = PrecessionTerms::default();
    for (index, s) in sources.iter().enumerate() {
        if !(s.mass > 0.0) {
            return Err(PrecessionError::NonPositiveMass { index, mass: s.mass });
        }
        let d = gyro.position - s.position;
        let r = d.norm();
        if r == 0.0 {
            return Err(PrecessionError::CoincidentSource(index));
        }
        let n = d / r;
        let grad = -n * (p.g * s.mass / (r * r * c2));
        out.geodetic += (gyro.velocity - s.velocity).cross(&grad);
        out.anomalous += s.velocity.cross(&grad);
        let j = &s.angular_momentum;
        out.drag += (j - n * (3.0 * n.dot(j))) * (p.g / (r * r * r * c2));
    }
    Ok(out)
}

/// Fermi–Walker precession: coefficients `γ + ½`, `½(γ + 1)` and `½`.
pub fn omega_fermi_walker(
    gyro: &GyroState,
    sources: &[GravSource],
    p: &PpnParams,
) -> Result<AxialVec3, PrecessionError> {
    let t = precession_terms(gyro, sources, p)?;
    Ok(t.combine(p.gamma + 0.5, 0.5 * (p.gamma + 1.0), 0.5))
}

/// Precession of the gyroscope axis observed next to it: coefficients 2 and 1.
pub fn omega_gyro(
    gyro: &GyroState,
    sources: &[GravSource],
    p: &PpnParams,
) -> Result<AxialVec3, PrecessionError> {
    Ok(precession_terms(gyro, sources, p)?.combine(2.0, 1.0, 0.0))
}

/// Apparent precession of the distant stars: coefficients ½ and ¼.
pub fn omega_stars(
    gyro: &GyroState,
    sources: &[GravSource],
    p: &PpnParams,
) -> Result<AxialVec3, PrecessionError> {
    Ok(precession_terms(gyro, sources, p)?.combine(0.5, 0.25, 0.0))
}

/// Precession relative to the distant stars: coefficients 3/2 and ¾.
pub fn omega_relative(
    gyro: &GyroState,
    sources: &[GravSource],
    p: &PpnParams,
) -> Result<AxialVec3, PrecessionError> {
    Ok(precession_terms(gyro, sources, p)?.combine(1.5, 0.75, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> PpnParams {
        PpnParams { gamma: 1.0, g: 1.0, c: 1.0 }
    }

    fn source(position: AxialVec3, velocity: AxialVec3, j: AxialVec3) -> GravSource {
        GravSource { mass: 2.0, position, velocity, angular_momentum: j }
    }

    #[test]
    fn static_configuration_does_not_precess() {
        let s = [source(AxialVec3::new(3.0, 0.0, 0.0), AxialVec3::zeros(), AxialVec3::zeros())];
        let gyro = GyroState::default();
        for f in [omega_fermi_walker, omega_gyro, omega_stars, omega_relative] {
            assert_eq!(f(&gyro, &s, &unit()).unwrap(), AxialVec3::zeros());
        }
    }

    #[test]
    fn one_static_source_geodetic_term() {
        // source at the origin, gyro at x = 2 moving along y
        let s = [source(AxialVec3::zeros(), AxialVec3::zeros(), AxialVec3::zeros())];
        let gyro = GyroState {
            position: AxialVec3::new(2.0, 0.0, 0.0),
            velocity: AxialVec3::new(0.0, 0.5, 0.0),
        };
        // ∇ = −(G m / r²) x̂ = −0.5 x̂ and v × ∇ = 0.25 ẑ
        let fw = omega_fermi_walker(&gyro, &s, &unit()).unwrap();
        assert_relative_eq!(fw, AxialVec3::new(0.0, 0.0, 1.5 * 0.25), epsilon = 1e-16);
    }

    #[test]
    fn pure_spin_source() {
        let j = AxialVec3::new(0.0, 0.0, 5.0);
        let s = [source(AxialVec3::zeros(), AxialVec3::zeros(), j)];
        let gyro = GyroState {
            position: AxialVec3::new(0.0, 0.0, 2.0),
            velocity: AxialVec3::zeros(),
        };
        // on the axis: J − 3n̂(n̂·J) = −2J, so Ω = 2J/r³
        let gy = omega_gyro(&gyro, &s, &unit()).unwrap();
        assert_relative_eq!(gy, j * (2.0 / 8.0), epsilon = 1e-16);
        let stars = omega_stars(&gyro, &s, &unit()).unwrap();
        assert_relative_eq!(stars, gy * 0.25, epsilon = 1e-16);
    }

    #[test]
    fn doubling_masses_doubles_geodetic_result() {
        let mut s = [source(AxialVec3::new(1.0, 2.0, 0.0), AxialVec3::new(0.1, 0.0, 0.0), AxialVec3::zeros())];
        let gyro = GyroState {
            position: AxialVec3::new(-1.0, 0.0, 0.5),
            velocity: AxialVec3::new(0.0, 0.2, 0.3),
        };
        let once = omega_gyro(&gyro, &s, &unit()).unwrap();
        s[0].mass *= 2.0;
        let twice = omega_gyro(&gyro, &s, &unit()).unwrap();
        assert_relative_eq!(twice, once * 2.0, epsilon = 1e-16);
    }

    #[test]
    fn coincident_source_is_rejected() {
        let s = [source(AxialVec3::zeros(), AxialVec3::zeros(), AxialVec3::zeros())];
        assert_eq!(
            omega_gyro(&GyroState::default(), &s, &unit()),
            Err(PrecessionError::CoincidentSource(0))
        );
    }

    #[test]
    fn fermi_walker_minus_gyro_is_anomalous_and_coefficient_shifts() {
        let s = [source(AxialVec3::new(1.0, -2.0, 0.5), AxialVec3::new(0.1, 0.2, -0.1), AxialVec3::new(0.3, 0.1, 0.9))];
        let gyro = GyroState {
            position: AxialVec3::new(0.2, 0.4, -1.0),
            velocity: AxialVec3::new(-0.3, 0.0, 0.2),
        };
        let t = precession_terms(&gyro, &s, &unit()).unwrap();
        let diff = omega_fermi_walker(&gyro, &s, &unit()).unwrap() - omega_gyro(&gyro, &s, &unit()).unwrap();
        assert_relative_eq!(diff, t.geodetic * -0.5 - t.anomalous * 0.5, epsilon = 1e-15);
    }
}
