//! Profile and particle descriptions as read from TOML/JSON documents or
//! short inline strings such as `constant:E0=1` and `m=1,mu=1`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldProfile, FieldShape, Table, DEFAULT_CORE_RADIUS};
use crate::particle::ParticleParams;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ShapeSpec {
    Constant {
        #[serde(alias = "E0", alias = "b0", alias = "B0", alias = "value")]
        e0: f64,
    },
    Linear {
        beta: f64,
    },
    InverseR {
        kappa: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        core_radius: Option<f64>,
    },
    Tabulated {
        r: Vec<f64>,
        #[serde(alias = "E", alias = "values")]
        e: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParticleSpec {
    Preset(String),
    Explicit { mass: f64, moment: f64 },
}

/// One profile document: the electric shape flattened at top level, plus
/// optional `magnetic` and `particle` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSpec {
    #[serde(flatten)]
    pub electric: ShapeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magnetic: Option<ShapeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particle: Option<ParticleSpec>,
}

impl ProfileSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads a `.toml` or `.json` file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Self::from_json(&text),
            Some("toml") => Self::from_toml(&text),
            _ => Self::from_toml(&text).or_else(|_| Self::from_json(&text)),
        }
    }

    /// Parses `type:key=value,key=value`; list values are `;`-separated.
    pub fn from_inline(text: &str) -> Result<Self> {
        let (ty, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut obj = serde_json::Map::new();
        obj.insert("type".into(), serde_json::Value::String(ty.trim().to_ascii_lowercase()));
        for pair in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {pair:?}")))?;
            let key = match k.trim() {
                "E0" | "e0" => "e0".to_string(),
                "E" => "e".to_string(),
                other => other.to_ascii_lowercase(),
            };
            let value = if v.contains(';') {
                let items = v.split(';').map(|x| parse_number(x).map(serde_json::Value::from)).collect::<Result<Vec<_>>>()?;
                serde_json::Value::Array(items)
            } else {
                serde_json::Value::from(parse_number(v)?)
            };
            obj.insert(key, value);
        }
        let electric: ShapeSpec =
            serde_json::from_value(serde_json::Value::Object(obj)).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
        Ok(Self { electric, magnetic: None, particle: None })
    }
}

impl ParticleSpec {
    /// Parses a preset name or `m=<mass>,mu=<moment>`.
    pub fn from_inline(text: &str) -> Result<Self> {
        if !text.contains('=') {
            return Ok(ParticleSpec::Preset(text.trim().to_string()));
        }
        let mut mass = None;
        let mut moment = None;
        for pair in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {pair:?}")))?;
            match k.trim().to_ascii_lowercase().as_str() {
                "m" | "mass" => mass = Some(parse_number(v)?),
                "mu" | "moment" => moment = Some(parse_number(v)?),
                other => return Err(Error::Parse(format!("unknown particle key {other:?}"))),
            }
        }
        match (mass, moment) {
            (Some(mass), Some(moment)) => Ok(ParticleSpec::Explicit { mass, moment }),
            _ => Err(Error::Parse(format!("particle needs both m and mu: {text:?}"))),
        }
    }

    pub fn build<T: Real>(&self) -> Result<ParticleParams<T>> {
        match self {
            ParticleSpec::Preset(name) => ParticleParams::preset(name),
            ParticleSpec::Explicit { mass, moment } => ParticleParams::new(T::lit(*mass), T::lit(*moment)),
        }
    }
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("bad number {s:?}: {e}")))
}

fn build_shape<T: Real>(spec: &ShapeSpec) -> Result<FieldShape<T>> {
    Ok(match spec {
        ShapeSpec::Constant { e0 } => FieldShape::Constant { e0: T::lit(*e0) },
        ShapeSpec::Linear { beta } => FieldShape::Linear { beta: T::lit(*beta) },
        ShapeSpec::InverseR { kappa, core_radius } => FieldShape::InverseR {
            kappa: T::lit(*kappa),
            core_radius: T::lit(core_radius.unwrap_or(DEFAULT_CORE_RADIUS)),
        },
        ShapeSpec::Tabulated { r, e } => FieldShape::Tabulated(Table::new(
            r.iter().map(|x| T::lit(*x)).collect(),
            e.iter().map(|x| T::lit(*x)).collect(),
        )?),
    })
}

/// Validates a description and builds the profile.
pub fn make_field_profile<T: Real>(spec: &ProfileSpec) -> Result<FieldProfile<T>> {
    let electric = build_shape(&spec.electric)?;
    let magnetic = spec.magnetic.as_ref().map(build_shape).transpose()?;
    FieldProfile::new(electric, magnetic)
}
