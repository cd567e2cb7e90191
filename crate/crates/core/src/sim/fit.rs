//! Least-squares fits of planar trajectories.

use nalgebra::{Matrix3, Vector2, Vector3};

/// Algebraic (Kåsa) circle fit in the xy-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleFit {
    pub center: Vector2<f64>,
    pub radius: f64,
    /// RMS of `|p − center| − radius`
    pub rms_residual: f64,
}

/// Fits `x² + y² = 2ax + 2by + c` by least squares. Points are centred on
/// their mean first to keep the normal equations well conditioned.
pub fn fit_circle(points: &[Vector2<f64>]) -> Option<CircleFit> {
    if points.len() < 3 {
        return None;
    }
    let mean = points.iter().sum::<Vector2<f64>>() / points.len() as f64;
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for p in points {
        let q = p - mean;
        let row = Vector3::new(2.0 * q.x, 2.0 * q.y, 1.0);
        ata += row * row.transpose();
        atb += row * q.norm_squared();
    }
    let sol = ata.lu().solve(&atb)?;
    let center = Vector2::new(sol.x, sol.y);
    let r2 = sol.z + center.norm_squared();
    if !(r2 > 0.0) {
        return None;
    }
    let radius = r2.sqrt();
    let rms = (points
        .iter()
        .map(|p| ((p - mean - center).norm() - radius).powi(2))
        .sum::<f64>()
        / points.len() as f64)
        .sqrt();
    Some(CircleFit { center: center + mean, radius, rms_residual: rms })
}

/// Angular rate about `center`: slope of the unwrapped polar angle regressed
/// on time.
pub fn angular_rate(times: &[f64], points: &[Vector2<f64>], center: &Vector2<f64>) -> Option<f64> {
    if times.len() != points.len() || times.len() < 2 {
        return None;
    }
    let mut angles = Vec::with_capacity(points.len());
    let mut previous: Option<f64> = None;
    for p in points {
        let raw = (p.y - center.y).atan2(p.x - center.x);
        let unwrapped = match previous {
            None => raw,
            Some(prev) => {
                let mut d = raw - prev.rem_euclid(std::f64::consts::TAU);
                d = (d + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
                prev + d
            }
        };
        angles.push(unwrapped);
        previous = Some(unwrapped);
    }
    let n = times.len() as f64;
    let tm = times.iter().sum::<f64>() / n;
    let am = angles.iter().sum::<f64>() / n;
    let sxy: f64 = times.iter().zip(&angles).map(|(t, a)| (t - tm) * (a - am)).sum();
    let sxx: f64 = times.iter().map(|t| (t - tm).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
