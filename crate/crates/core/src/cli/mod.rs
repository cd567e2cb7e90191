//! Batch front end: runs one configured scenario, writes `trajectory.csv` and
//! `report.txt` into an output directory and returns the checks.
//!
//! `trajectory.csv` columns depend on the scenario kind:
//!
//! | kind                       | columns                                                        |
//! |----------------------------|----------------------------------------------------------------|
//! | `freefall`, `disc`, `spindown` | `t_s`, position, spin velocity, spin acceleration, `ratio` |
//! | `precess`                  | `formula,omega_x_rad_s,omega_y_rad_s,omega_z_rad_s`            |
//! | `invariants`               | `case,j1,j2,j3,j4`                                             |
//! | `verify`                   | `group,check,computed,expected,tol,passed`                     |

pub mod config;
pub mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::invariants::{apply_basic_property, j_invariants, sphere_differential, thomas_circle_states};
use crate::liegroup::AxialVec3;
use crate::precession::{
    omega_fermi_walker, omega_gyro, omega_relative, omega_stars, precession_terms, PrecessionError,
};
use crate::sim::{
    default_step, discretize_disc, discretize_sphere, run_disc_on_plane, run_free_fall, run_spin_down, BodyModel,
    MotionLaw, PrecessionLaw, SimError,
};
use crate::spin::{spin_down_displacement, GravityContext, SpinError};
use crate::verify::{disc_checks, free_fall_departure, run_suite};

pub use config::{load_config, parse_config, BodyShape, ConfigError, Kind, Scenario};
pub use report::{Check, RunReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("scenario rejected: {0}")]
    Sim(#[from] SimError),
    #[error("scenario rejected: {0}")]
    Spin(#[from] SpinError),
    #[error("scenario rejected: {0}")]
    Precession(#[from] PrecessionError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            _ => EXIT_CONFIG,
        }
    }
}

/// Runs `sc`, writes `<out>/trajectory.csv` and `<out>/report.txt`, and
/// returns the report.
pub fn run(sc: &Scenario, out: &Path) -> Result<RunReport, CliError> {
    let (csv, report) = match sc.kind {
        Kind::Verify => verify(sc),
        Kind::Precess => precess(sc)?,
        Kind::Freefall => freefall(sc)?,
        Kind::Disc => disc(sc)?,
        Kind::Spindown => spindown(sc)?,
        Kind::Invariants => invariants(sc),
    };
    write(out, "trajectory.csv", &csv)?;
    write(out, "report.txt", &report.render())?;
    Ok(report)
}

/// Exit status for a finished run.
pub fn exit_code(report: &RunReport) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let io = |path: PathBuf| move |source| CliError::Io { path, source };
    std::fs::create_dir_all(dir).map_err(io(dir.to_path_buf()))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(io(path.clone()))
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn body(sc: &Scenario) -> Result<BodyModel, SimError> {
    let b = &sc.body;
    match b.shape {
        BodyShape::Sphere => discretize_sphere(b.radius_m, b.mass_kg, b.n_rings, b.n_per_ring),
        BodyShape::Disc => discretize_disc(b.radius_m, b.mass_kg, b.n_rings, b.n_per_ring),
        BodyShape::Hoop => discretize_disc(b.radius_m, b.mass_kg, 1, b.n_per_ring),
    }
}

fn verify(sc: &Scenario) -> (String, RunReport) {
    let mut csv = String::from("group,check,computed,expected,tol,passed\n");
    let mut report = RunReport::default();
    for group in run_suite(sc.seed) {
        for c in group.checks {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                group.id,
                c.name,
                num(c.computed),
                num(c.expected),
                num(c.tol),
                c.passed
            );
            report.push(c);
        }
    }
    (csv, report)
}

fn precess(sc: &Scenario) -> Result<(String, RunReport), CliError> {
    let (gyro, sources, p) = (&sc.gyro, &sc.sources, &sc.constants);
    let rows = [
        ("fermi_walker", omega_fermi_walker(gyro, sources, p)?),
        ("gyro", omega_gyro(gyro, sources, p)?),
        ("stars", omega_stars(gyro, sources, p)?),
        ("relative", omega_relative(gyro, sources, p)?),
    ];
    let mut csv = String::from("formula,omega_x_rad_s,omega_y_rad_s,omega_z_rad_s\n");
    for (name, o) in &rows {
        let _ = writeln!(csv, "{name},{},{},{}", num(o.x), num(o.y), num(o.z));
    }
    let terms = precession_terms(gyro, sources, p)?;
    let scale = 1.5 * terms.geodetic.norm() + 0.75 * terms.drag.norm();
    let gap = (rows[3].1 - (rows[1].1 - rows[2].1)).norm();
    let mut report = RunReport::default();
    report.push(Check::at_most(
        "precess.relative_identity",
        if scale > 0.0 { gap / scale } else { gap },
        1e-14,
    ));
    Ok((csv, report))
}

fn freefall(sc: &Scenario) -> Result<(String, RunReport), CliError> {
    let body = body(sc)?;
    let law = PrecessionLaw::nodding(sc.motion.omega_big_rad_s, sc.motion.w_rad_s);
    let t_end = sc.numeric.t_end_s.unwrap_or(1.5);
    let h = sc.numeric.h_s.unwrap_or_else(|| default_step(law.w0, t_end));
    let out = run_free_fall(
        &body,
        &MotionLaw::Precession(law),
        &GravityContext::constant(sc.gravity),
        AxialVec3::zeros(),
        AxialVec3::zeros(),
        t_end,
        h,
    )?;
    let mut report = RunReport::default();
    report.push(Check::at_most("free_fall.condition_violations", out.violations as f64, 0.0));
    report.push(Check::at_most(
        "free_fall.departure_rms",
        free_fall_departure(&out, &law, &sc.gravity),
        0.02,
    ));
    Ok((out.to_csv(), report))
}

fn disc(sc: &Scenario) -> Result<(String, RunReport), CliError> {
    let body = body(sc)?;
    let m = &sc.motion;
    let law = PrecessionLaw::tilted(m.phi_rad, m.omega_big_rad_s, m.w_rad_s);
    let g_mag = sc.gravity.norm();
    let t_end = sc.numeric.t_end_s.unwrap_or(2.0 * std::f64::consts::TAU / m.omega_big_rad_s.abs());
    let h = sc.numeric.h_s.unwrap_or_else(|| default_step(m.w_rad_s, t_end));
    let out = run_disc_on_plane(&body, &law, g_mag, t_end, h)?;
    let mut report = RunReport::default();
    report.extend(disc_checks(&out, &law, m.phi_rad, g_mag));
    Ok((out.to_csv(), report))
}

fn spindown(sc: &Scenario) -> Result<(String, RunReport), CliError> {
    let m = &sc.motion;
    let g_mag = sc.gravity.norm();
    let t_end = sc.numeric.t_end_s.unwrap_or(1.0);
    let w_max = m.w1_rad_s.abs().max(m.w2_rad_s.abs());
    let h = sc.numeric.h_s.unwrap_or_else(|| default_step(w_max, t_end));
    let out = run_spin_down(m.w1_rad_s, m.w2_rad_s, m.phi_rad, g_mag, t_end, h)?;
    let closed = spin_down_displacement(m.w1_rad_s, m.w2_rad_s, g_mag, m.phi_rad)?;
    let l = out.displacement.unwrap_or(f64::NAN);
    let mut report = RunReport::default();
    report.push(if closed == 0.0 {
        Check::absolute("spin_down.displacement", l, closed, 1e-15)
    } else {
        Check::relative("spin_down.displacement", l, closed, 1e-6)
    });
    Ok((out.to_csv(), report))
}

fn invariants(sc: &Scenario) -> (String, RunReport) {
    let inv = &sc.invariants;
    let (r, tau, ds) = (inv.r_m, inv.tau_per_m, inv.ds_m);
    let (t, n, b) = (AxialVec3::x(), AxialVec3::y(), AxialVec3::z());
    let before = sphere_differential(&t, &b, r, tau, ds);
    let after = apply_basic_property(&before, &(-t * (tau * ds)), &(-n * r));
    let c = sc.constants.c;
    let w = sc.motion.w_rad_s;
    let (free, blocked) = thomas_circle_states(r, w, c);
    let cases = [
        ("sphere_before", j_invariants(&before, c)),
        ("sphere_after", j_invariants(&after, c)),
        ("circle_free", j_invariants(&free, c)),
        ("circle_blocked", j_invariants(&blocked, c)),
    ];
    let mut csv = String::from("case,j1,j2,j3,j4\n");
    for (name, j) in &cases {
        let _ = writeln!(csv, "{name},{},{},{},{}", num(j.j1), num(j.j2), num(j.j3), num(j.j4));
    }
    let sphere_j1 = (2.0 + r * r * tau * tau) * ds * ds;
    let circle_j1 = 1.0 + (1.0 - r * r * w * w / (2.0 * c * c)).powi(2);
    let (jb, ja, jf, jk) = (cases[0].1, cases[1].1, cases[2].1, cases[3].1);
    let mut report = RunReport::default();
    report.extend([
        Check::relative("invariants.sphere_j1", jb.j1, sphere_j1, 1e-12),
        Check::absolute("invariants.sphere_j2", jb.j2, r * tau * ds * ds, 1e-12 * sphere_j1),
        Check::relative("invariants.sphere_j1_preserved", ja.j1, jb.j1, 1e-12),
        Check::absolute("invariants.sphere_j2_preserved", ja.j2, jb.j2, 1e-12 * sphere_j1),
        Check::relative("invariants.circle_free_j1", jf.j1, circle_j1, 1e-12),
        Check::absolute("invariants.circle_free_j2", jf.j2, 0.0, 1e-12),
        Check::relative("invariants.circle_blocked_j1", jk.j1, circle_j1, 1e-12),
        Check::absolute("invariants.circle_blocked_j2", jk.j2, 0.0, 1e-12),
    ]);
    (csv, report)
}
