//! Rigid bodies as finite sets of point masses.

use std::f64::consts::TAU;

use crate::liegroup::AxialVec3;
use crate::sum::{CompensatedSum, CompensatedVecSum};

use super::SimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Sphere,
    Disc,
    PointSet,
}

/// Point masses in body coordinates with the barycenter at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct BodyModel {
    particles: Vec<(f64, AxialVec3)>,
    shape: Shape,
    radius: f64,
}

impl BodyModel {
    /// Validates positive masses and a barycenter at the origin to `1e-12`
    /// relative to the largest particle distance.
    pub fn new(particles: Vec<(f64, AxialVec3)>, shape: Shape, radius: f64) -> Result<Self, SimError> {
        if particles.is_empty() {
            return Err(SimError::EmptyBody);
        }
        if let Some(&(m, _)) = particles.iter().find(|(m, _)| !(*m > 0.0)) {
            return Err(SimError::NonPositive { what: "particle mass", value: m });
        }
        let body = Self { particles, shape, radius };
        let extent = body.particles.iter().map(|(_, x)| x.norm()).fold(0.0, f64::max);
        let offset = body.barycenter().norm();
        if offset > 1e-12 * extent.max(f64::MIN_POSITIVE) {
            return Err(SimError::BarycenterOffset(offset));
        }
        Ok(body)
    }

    /// Shifts arbitrary points so their barycenter is at the origin.
    pub fn point_set(particles: Vec<(f64, AxialVec3)>) -> Result<Self, SimError> {
        let raw = Self { particles, shape: Shape::PointSet, radius: 0.0 };
        if raw.particles.is_empty() {
            return Err(SimError::EmptyBody);
        }
        let center = raw.barycenter();
        let particles: Vec<_> = raw.particles.iter().map(|(m, x)| (*m, x - center)).collect();
        let radius = particles.iter().map(|(_, x)| x.norm()).fold(0.0, f64::max);
        Self::new(particles, Shape::PointSet, radius)
    }

    pub fn particles(&self) -> &[(f64, AxialVec3)] {
        &self.particles
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn total_mass(&self) -> f64 {
        let mut s = CompensatedSum::default();
        for (m, _) in &self.particles {
            s.add(*m);
        }
        s.value()
    }

    pub fn barycenter(&self) -> AxialVec3 {
        let mut s = CompensatedVecSum::default();
        for (m, x) in &self.particles {
            s.add(&(x * *m));
        }
        s.value() / self.total_mass()
    }

    /// Moment of inertia about the line through the origin along `axis`.
    pub fn inertia_about(&self, axis: &AxialVec3) -> f64 {
        let a = axis.normalize();
        let mut s = CompensatedSum::default();
        for (m, x) in &self.particles {
            s.add(m * a.cross(x).norm_squared());
        }
        s.value()
    }
}

/// Equal-mass nodes on a spherical shell: `n_rings` circles at
/// `z = R(−1 + (2j+1)/n_rings)` with `n_per_ring` uniformly spaced nodes each.
/// Equal z-spacing carries equal shell area, so equal masses are exact weights.
pub fn discretize_sphere(radius: f64, mass: f64, n_rings: usize, n_per_ring: usize) -> Result<BodyModel, SimError> {
    if n_rings < 4 || n_per_ring < 8 {
        return Err(SimError::TooCoarse { rings: n_rings, per_ring: n_per_ring });
    }
    check_positive("radius", radius)?;
    check_positive("mass", mass)?;
    let m = mass / (n_rings * n_per_ring) as f64;
    let mut particles = Vec::with_capacity(n_rings * n_per_ring);
    for j in 0..n_rings {
        let z = radius * (-1.0 + (2 * j + 1) as f64 / n_rings as f64);
        let rho = (radius * radius - z * z).sqrt();
        ring(&mut particles, m, rho, z, n_per_ring);
    }
    BodyModel::new(particles, Shape::Sphere, radius)
}

/// Flat disc in the body xy-plane. With `n_radii = 1` all mass sits on the
/// rim (a hoop); otherwise rings at `ρ = R(j + ½)/n_radii` carry mass
/// proportional to `ρ`, the annulus area.
pub fn discretize_disc(radius: f64, mass: f64, n_radii: usize, n_per_ring: usize) -> Result<BodyModel, SimError> {
    if n_radii < 1 || n_per_ring < 8 {
        return Err(SimError::TooCoarse { rings: n_radii, per_ring: n_per_ring });
    }
    check_positive("radius", radius)?;
    check_positive("mass", mass)?;
    let mut particles = Vec::with_capacity(n_radii * n_per_ring);
    if n_radii == 1 {
        ring(&mut particles, mass / n_per_ring as f64, radius, 0.0, n_per_ring);
    } else {
        let weight_total: f64 = (0..n_radii).map(|j| j as f64 + 0.5).sum();
        for j in 0..n_radii {
            let rho = radius * (j as f64 + 0.5) / n_radii as f64;
            let m = mass * (j as f64 + 0.5) / (weight_total * n_per_ring as f64);
            ring(&mut particles, m, rho, 0.0, n_per_ring);
        }
    }
    BodyModel::new(particles, Shape::Disc, radius)
}

fn ring(out: &mut Vec<(f64, AxialVec3)>, m: f64, rho: f64, z: f64, n: usize) {
    for k in 0..n {
        let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
        out.push((m, AxialVec3::new(rho * c, rho * s, z)));
    }
}

fn check_positive(what: &'static str, value: f64) -> Result<(), SimError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(SimError::NonPositive { what, value })
    }
}
