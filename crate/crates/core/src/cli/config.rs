//! TOML scenario configuration.
//!
//! ```toml
//! seed = 7
//!
//! [scenario]
//! kind = "disc"          # verify | precess | freefall | disc | spindown | invariants
//!
//! [body]
//! shape = "hoop"         # sphere | disc | hoop
//! radius_m = 1.0
//! mass_kg = 1.0
//! n_rings = 16           # radial rings for a disc
//! n_per_ring = 32
//!
//! [motion]
//! phi_rad = 0.7853981633974483
//! omega_big_rad_s = 2.0
//! w_rad_s = 50.0
//! w1_rad_s = 100.0
//! w2_rad_s = 50.0
//!
//! [gravity]
//! gx = 0.0
//! gy = 0.0
//! gz = -9.81
//!
//! [numeric]
//! h_s = 1e-3
//! t_end_s = 6.283185307179586
//!
//! [constants]
//! c_m_s = 299792458.0
//! G = 6.6743e-11
//! gamma = 1.0
//!
//! [gyro]
//! position_m = [7.0e6, 0.0, 0.0]
//! velocity_m_s = [0.0, 7.5e3, 0.0]
//!
//! [[sources]]
//! mass_kg = 5.97e24
//! position_m = [0.0, 0.0, 0.0]
//! velocity_m_s = [0.0, 0.0, 0.0]
//! angular_momentum = [0.0, 0.0, 5.86e33]
//!
//! [invariants]
//! r_m = 1.0
//! tau_per_m = 0.5
//! ds_m = 1e-3
//! ```
//!
//! Every section and key is optional except `scenario.kind`.

use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

use crate::liegroup::AxialVec3;
use crate::precession::{GravSource, GyroState, PpnParams};

const SECTIONS: &[(&str, &[&str])] = &[
    ("scenario", &["kind"]),
    ("body", &["shape", "radius_m", "mass_kg", "n_rings", "n_per_ring"]),
    ("motion", &["phi_rad", "omega_big_rad_s", "w_rad_s", "w1_rad_s", "w2_rad_s"]),
    ("gravity", &["gx", "gy", "gz"]),
    ("numeric", &["h_s", "t_end_s"]),
    ("constants", &["c_m_s", "G", "gamma"]),
    ("gyro", &["position_m", "velocity_m_s"]),
    ("sources", &["mass_kg", "position_m", "velocity_m_s", "angular_momentum"]),
    ("invariants", &["r_m", "tau_per_m", "ds_m"]),
];

const TOP_LEVEL_KEYS: &[&str] = &["seed"];

/// Largest edit distance at which an unknown key gets a suggestion.
const SUGGESTION_DISTANCE: usize = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("unknown key `{path}`{}", suggestion.as_ref().map(|s| format!(", did you mean `{s}`?")).unwrap_or_default())]
    UnknownKey { path: String, suggestion: Option<String> },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("bad value for `{path}`: {message}")]
    Type { path: String, message: String },
    #[error("invalid `{path}`: {reason}")]
    Invalid { path: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Verify,
    Precess,
    Freefall,
    Disc,
    Spindown,
    Invariants,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Verify => "verify",
            Kind::Precess => "precess",
            Kind::Freefall => "freefall",
            Kind::Disc => "disc",
            Kind::Spindown => "spindown",
            Kind::Invariants => "invariants",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyShape {
    Sphere,
    Disc,
    Hoop,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BodySpec {
    pub shape: BodyShape,
    pub radius_m: f64,
    pub mass_kg: f64,
    pub n_rings: usize,
    pub n_per_ring: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MotionSpec {
    pub phi_rad: f64,
    pub omega_big_rad_s: f64,
    pub w_rad_s: f64,
    pub w1_rad_s: f64,
    pub w2_rad_s: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericSpec {
    /// `None` picks a step from the spin rate.
    pub h_s: Option<f64>,
    /// `None` picks a duration per scenario kind.
    pub t_end_s: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSpec {
    pub r_m: f64,
    pub tau_per_m: f64,
    pub ds_m: f64,
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub kind: Kind,
    pub body: BodySpec,
    pub motion: MotionSpec,
    pub gravity: AxialVec3,
    pub numeric: NumericSpec,
    pub constants: PpnParams,
    pub seed: u64,
    pub gyro: GyroState,
    pub sources: Vec<GravSource>,
    pub invariants: InvariantSpec,
}

#[derive(Deserialize)]
struct RawScenario {
    kind: Option<Kind>,
}

#[derive(Deserialize, Default)]
struct RawBody {
    shape: Option<BodyShape>,
    radius_m: Option<f64>,
    mass_kg: Option<f64>,
    n_rings: Option<i64>,
    n_per_ring: Option<i64>,
}

#[derive(Deserialize, Default)]
struct RawMotion {
    phi_rad: Option<f64>,
    omega_big_rad_s: Option<f64>,
    w_rad_s: Option<f64>,
    w1_rad_s: Option<f64>,
    w2_rad_s: Option<f64>,
}

#[derive(Deserialize, Default)]
struct RawGravity {
    gx: Option<f64>,
    gy: Option<f64>,
    gz: Option<f64>,
}

#[derive(Deserialize, Default)]
struct RawNumeric {
    h_s: Option<f64>,
    t_end_s: Option<f64>,
}

#[derive(Deserialize, Default)]
#[allow(non_snake_case)]
struct RawConstants {
    c_m_s: Option<f64>,
    G: Option<f64>,
    gamma: Option<f64>,
}

#[derive(Deserialize, Default)]
struct RawGyro {
    position_m: Option<[f64; 3]>,
    velocity_m_s: Option<[f64; 3]>,
}

#[derive(Deserialize)]
struct RawSource {
    mass_kg: f64,
    position_m: [f64; 3],
    #[serde(default)]
    velocity_m_s: [f64; 3],
    #[serde(default)]
    angular_momentum: [f64; 3],
}

#[derive(Deserialize, Default)]
struct RawInvariants {
    r_m: Option<f64>,
    tau_per_m: Option<f64>,
    ds_m: Option<f64>,
}

pub fn load_config(path: &Path) -> Result<Scenario, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Scenario, ConfigError> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    check_keys(&table)?;

    let scenario: Option<RawScenario> = section(&table, "scenario")?;
    let kind = scenario
        .and_then(|s| s.kind)
        .ok_or_else(|| ConfigError::Missing("scenario.kind".into()))?;
    let body: RawBody = section(&table, "body")?.unwrap_or_default();
    let motion: RawMotion = section(&table, "motion")?.unwrap_or_default();
    let gravity: RawGravity = section(&table, "gravity")?.unwrap_or_default();
    let numeric: RawNumeric = section(&table, "numeric")?.unwrap_or_default();
    let constants: RawConstants = section(&table, "constants")?.unwrap_or_default();
    let gyro: RawGyro = section(&table, "gyro")?.unwrap_or_default();
    let sources: Vec<RawSource> = section(&table, "sources")?.unwrap_or_default();
    let invariants: RawInvariants = section(&table, "invariants")?.unwrap_or_default();
    let seed = match table.get("seed") {
        None => 0,
        Some(toml::Value::Integer(s)) if *s >= 0 => *s as u64,
        Some(other) => {
            return Err(ConfigError::Type {
                path: "seed".into(),
                message: format!("expected a non-negative integer, got {other}"),
            })
        }
    };

    let default_shape = if kind == Kind::Disc { BodyShape::Hoop } else { BodyShape::Sphere };
    let sc = Scenario {
        kind,
        body: BodySpec {
            shape: body.shape.unwrap_or(default_shape),
            radius_m: positive("body.radius_m", body.radius_m.unwrap_or(1.0))?,
            mass_kg: positive("body.mass_kg", body.mass_kg.unwrap_or(1.0))?,
            n_rings: count("body.n_rings", body.n_rings.unwrap_or(16))?,
            n_per_ring: count("body.n_per_ring", body.n_per_ring.unwrap_or(32))?,
        },
        motion: MotionSpec {
            phi_rad: finite("motion.phi_rad", motion.phi_rad.unwrap_or(FRAC_PI_4))?,
            omega_big_rad_s: finite("motion.omega_big_rad_s", motion.omega_big_rad_s.unwrap_or(2.0))?,
            w_rad_s: positive("motion.w_rad_s", motion.w_rad_s.unwrap_or(50.0))?,
            w1_rad_s: nonzero("motion.w1_rad_s", motion.w1_rad_s.unwrap_or(100.0))?,
            w2_rad_s: nonzero("motion.w2_rad_s", motion.w2_rad_s.unwrap_or(50.0))?,
        },
        gravity: AxialVec3::new(
            finite("gravity.gx", gravity.gx.unwrap_or(0.0))?,
            finite("gravity.gy", gravity.gy.unwrap_or(0.0))?,
            finite("gravity.gz", gravity.gz.unwrap_or(-9.81))?,
        ),
        numeric: NumericSpec {
            h_s: numeric.h_s.map(|h| positive("numeric.h_s", h)).transpose()?,
            t_end_s: numeric.t_end_s.map(|t| positive("numeric.t_end_s", t)).transpose()?,
        },
        constants: PpnParams {
            c: positive("constants.c_m_s", constants.c_m_s.unwrap_or(299_792_458.0))?,
            g: positive("constants.G", constants.G.unwrap_or(6.674_30e-11))?,
            gamma: finite("constants.gamma", constants.gamma.unwrap_or(1.0))?,
        },
        seed,
        gyro: GyroState {
            position: AxialVec3::from(gyro.position_m.unwrap_or_default()),
            velocity: AxialVec3::from(gyro.velocity_m_s.unwrap_or_default()),
        },
        sources: sources
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(GravSource {
                    mass: positive(&format!("sources[{i}].mass_kg"), s.mass_kg)?,
                    position: AxialVec3::from(s.position_m),
                    velocity: AxialVec3::from(s.velocity_m_s),
                    angular_momentum: AxialVec3::from(s.angular_momentum),
                })
            })
            .collect::<Result<_, ConfigError>>()?,
        invariants: InvariantSpec {
            r_m: positive("invariants.r_m", invariants.r_m.unwrap_or(1.0))?,
            tau_per_m: finite("invariants.tau_per_m", invariants.tau_per_m.unwrap_or(0.5))?,
            ds_m: positive("invariants.ds_m", invariants.ds_m.unwrap_or(1e-3))?,
        },
    };

    if kind == Kind::Spindown && sc.motion.w1_rad_s.signum() != sc.motion.w2_rad_s.signum() {
        return Err(ConfigError::Invalid {
            path: "motion.w2_rad_s".into(),
            reason: "spin must keep its sign between w1 and w2".into(),
        });
    }
    if matches!(kind, Kind::Disc | Kind::Freefall) && sc.motion.omega_big_rad_s == 0.0 {
        return Err(ConfigError::Invalid {
            path: "motion.omega_big_rad_s".into(),
            reason: "the axis must move".into(),
        });
    }
    Ok(sc)
}

fn suggest<'a>(key: &str, candidates: impl IntoIterator<Item = &'a str>) -> Option<String> {
    candidates
        .into_iter()
        .map(|c| (strsim::levenshtein(key, c), c))
        .filter(|(d, _)| *d <= SUGGESTION_DISTANCE)
        .min_by_key(|(d, _)| *d)
        .map(|(_, c)| c.to_string())
}

fn check_keys(table: &toml::Table) -> Result<(), ConfigError> {
    for (key, value) in table {
        if TOP_LEVEL_KEYS.contains(&key.as_str()) {
            continue;
        }
        let Some((_, allowed)) = SECTIONS.iter().find(|(name, _)| name == key) else {
            let names = SECTIONS.iter().map(|(n, _)| *n).chain(TOP_LEVEL_KEYS.iter().copied());
            return Err(ConfigError::UnknownKey {
                path: key.clone(),
                suggestion: suggest(key, names),
            });
        };
        let tables: Vec<(String, &toml::Table)> = match value {
            toml::Value::Table(t) => vec![(key.clone(), t)],
            toml::Value::Array(items) if key == "sources" => items
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.as_table().map(|t| (format!("{key}[{i}]"), t)))
                .collect(),
            _ => {
                return Err(ConfigError::Type {
                    path: key.clone(),
                    message: "expected a table".into(),
                })
            }
        };
        for (prefix, t) in tables {
            if let Some(unknown) = t.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(ConfigError::UnknownKey {
                    path: format!("{prefix}.{unknown}"),
                    suggestion: suggest(unknown, allowed.iter().copied()).map(|s| format!("{prefix}.{s}")),
                });
            }
        }
    }
    Ok(())
}

fn section<T: DeserializeOwned>(table: &toml::Table, name: &str) -> Result<Option<T>, ConfigError> {
    table
        .get(name)
        .map(|v| {
            v.clone().try_into().map_err(|e: toml::de::Error| ConfigError::Type {
                path: name.to_string(),
                message: e.message().to_string(),
            })
        })
        .transpose()
}

fn finite(path: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::Invalid {
            path: path.into(),
            reason: format!("{x} is not finite"),
        })
    }
}

fn positive(path: &str, x: f64) -> Result<f64, ConfigError> {
    if finite(path, x)? > 0.0 {
        Ok(x)
    } else {
        Err(ConfigError::Invalid {
            path: path.into(),
            reason: format!("must be positive, got {x}"),
        })
    }
}

fn nonzero(path: &str, x: f64) -> Result<f64, ConfigError> {
    if finite(path, x)? != 0.0 {
        Ok(x)
    } else {
        Err(ConfigError::Invalid {
            path: path.into(),
            reason: "must be nonzero".into(),
        })
    }
}

fn count(path: &str, n: i64) -> Result<usize, ConfigError> {
    if n >= 1 {
        Ok(n as usize)
    } else {
        Err(ConfigError::Invalid {
            path: path.into(),
            reason: format!("must be at least 1, got {n}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_freefall_uses_defaults() {
        let sc = parse_config("[scenario]\nkind = \"freefall\"\n").unwrap();
        assert_eq!(sc.kind, Kind::Freefall);
        assert_eq!(sc.constants.c, 299_792_458.0);
        assert_eq!(sc.body.shape, BodyShape::Sphere);
        assert_eq!(sc.gravity, AxialVec3::new(0.0, 0.0, -9.81));
        assert_eq!(sc.numeric.h_s, None);
        assert_eq!(sc.seed, 0);
    }

    #[test]
    fn negative_step_names_the_key() {
        let err = parse_config("[scenario]\nkind = \"disc\"\n[numeric]\nh_s = -0.01\n").unwrap_err();
        assert!(err.to_string().contains("numeric.h_s"), "{err}");
    }

    #[test]
    fn misspelled_section_gets_suggestion() {
        let err = parse_config("[scenario]\nkind = \"disc\"\n[gravty]\ngz = -9.81\n").unwrap_err();
        assert_eq!(
            err,
            ConfigError::UnknownKey {
                path: "gravty".into(),
                suggestion: Some("gravity".into())
            }
        );
        assert!(err.to_string().contains("did you mean `gravity`"));
    }

    #[test]
    fn misspelled_key_gets_suggestion() {
        let err = parse_config("[scenario]\nkind = \"disc\"\n[motion]\nw_rad = 3.0\n").unwrap_err();
        assert_eq!(
            err,
            ConfigError::UnknownKey {
                path: "motion.w_rad".into(),
                suggestion: Some("motion.w_rad_s".into())
            }
        );
    }

    #[test]
    fn distant_key_gets_no_suggestion() {
        let err = parse_config("[scenario]\nkind = \"disc\"\n[telemetry]\n").unwrap_err();
        assert_eq!(
            err,
            ConfigError::UnknownKey {
                path: "telemetry".into(),
                suggestion: None
            }
        );
    }

    #[test]
    fn missing_kind() {
        assert_eq!(parse_config("seed = 3\n").unwrap_err(), ConfigError::Missing("scenario.kind".into()));
    }

    #[test]
    fn wrong_type_names_section() {
        let err = parse_config("[scenario]\nkind = \"disc\"\n[body]\nradius_m = \"big\"\n").unwrap_err();
        assert!(matches!(err, ConfigError::Type { ref path, .. } if path == "body"), "{err}");
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(matches!(
            parse_config("[scenario]\nkind = \"orbit\"\n"),
            Err(ConfigError::Type { .. })
        ));
    }

    #[test]
    fn sources_parse() {
        let text = r#"
            [scenario]
            kind = "precess"
            [[sources]]
            mass_kg = 2.0
            position_m = [1.0, 0.0, 0.0]
            [[sources]]
            mass_kg = 3.0
            position_m = [0.0, 1.0, 0.0]
            angular_momentum = [0.0, 0.0, 4.0]
        "#;
        let sc = parse_config(text).unwrap();
        assert_eq!(sc.sources.len(), 2);
        assert_eq!(sc.sources[1].angular_momentum, AxialVec3::new(0.0, 0.0, 4.0));
        let err = parse_config(&text.replace("angular_momentum", "angular_momentun")).unwrap_err();
        assert!(err.to_string().contains("sources[1].angular_momentum"), "{err}");
    }

    #[test]
    fn spin_sign_change_is_rejected() {
        let err = parse_config("[scenario]\nkind = \"spindown\"\n[motion]\nw1_rad_s = 10.0\nw2_rad_s = -5.0\n");
        assert!(matches!(err, Err(ConfigError::Invalid { .. })));
    }
}
