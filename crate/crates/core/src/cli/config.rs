use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::diagnostics::{CheckMode, Tolerances};
use crate::error::{Error, Result};
use crate::harness::{StudyConfig, DEFAULT_DOMAIN, DEFAULT_LEVELS};
use crate::model::initial::{DEFAULT_DELTA, DEFAULT_X_LEFT, DEFAULT_X_RIGHT};
use crate::model::{builtin_model, flux::ADVECTION_SPEED, InitialCondition};
use crate::scheme::Boundary;

/// Output file format.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flat run configuration; every key has a default except `model` and `ic`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// `advection` or `burgers`.
    pub model: String,
    /// `regular`, `step` or `constant`.
    pub ic: String,
    #[serde(default = "default_s")]
    pub s: Vec<f64>,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_levels")]
    pub levels: Vec<usize>,
    #[serde(default = "default_xmin")]
    pub xmin: f64,
    #[serde(default = "default_xmax")]
    pub xmax: f64,
    #[serde(default)]
    pub boundary: Boundary,
    #[serde(default = "default_x_left")]
    pub x_left: f64,
    #[serde(default = "default_x_right")]
    pub x_right: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_speed")]
    pub advection_speed: f64,
    /// Value of the `constant` datum.
    #[serde(default = "default_ic_value")]
    pub ic_value: f64,
    /// Dump times; `t_end` alone when absent.
    #[serde(default)]
    pub output_times: Option<Vec<f64>>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub checks: CheckMode,
    #[serde(default)]
    pub unsafe_s: bool,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    /// Slack on every bound, scaled by `max(1, |bound|)`. Negative values demand headroom.
    #[serde(default = "default_tol")]
    pub tol_bound: f64,
    #[serde(default = "default_tol")]
    pub tol_entropy: f64,
}

fn default_s() -> Vec<f64> {
    vec![1.0]
}
fn default_lambda() -> f64 {
    1.0
}
fn default_t_end() -> f64 {
    0.1
}
fn default_levels() -> Vec<usize> {
    DEFAULT_LEVELS.to_vec()
}
fn default_xmin() -> f64 {
    DEFAULT_DOMAIN.0
}
fn default_xmax() -> f64 {
    DEFAULT_DOMAIN.1
}
fn default_x_left() -> f64 {
    DEFAULT_X_LEFT
}
fn default_x_right() -> f64 {
    DEFAULT_X_RIGHT
}
fn default_delta() -> f64 {
    DEFAULT_DELTA
}
fn default_speed() -> f64 {
    ADVECTION_SPEED
}
fn default_ic_value() -> f64 {
    0.5
}
fn default_out() -> PathBuf {
    PathBuf::from("out")
}
fn default_tol() -> f64 {
    1e-12
}

/// Reads a `--set` value: JSON first, then a comma list, then a bare string.
pub fn parse_override_value(raw: &str) -> Value {
    if let Ok(v) = serde_json::from_str::<Value>(raw) {
        return v;
    }
    if raw.contains(',') {
        return Value::Array(
            raw.split(',')
                .map(|item| {
                    let item = item.trim();
                    serde_json::from_str(item).unwrap_or_else(|_| Value::String(item.into()))
                })
                .collect(),
        );
    }
    Value::String(raw.into())
}

/// Splits `key=value`.
pub fn parse_override(arg: &str) -> Result<(String, Value)> {
    let (k, v) = arg
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("override '{arg}' is not key=value")))?;
    Ok((k.trim().to_string(), parse_override_value(v.trim())))
}

const LIST_KEYS: [&str; 3] = ["s", "levels", "output_times"];

/// Builds a config from an optional JSON file and `key=value` overrides, then validates it.
pub fn parse_config(path: Option<&Path>, overrides: &[(String, Value)]) -> Result<RunConfig> {
    let mut map = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(m)) => m,
                Ok(_) => return Err(Error::Parse(format!("{}: expected a JSON object", p.display()))),
                Err(e) => return Err(Error::Parse(format!("{}: {e}", p.display()))),
            }
        }
        None => Map::new(),
    };
    for (k, v) in overrides {
        map.insert(k.clone(), v.clone());
    }
    from_map(map)
}

/// Parses and validates an in-memory document.
pub fn from_map(mut map: Map<String, Value>) -> Result<RunConfig> {
    // a scalar where a list is expected means a one-element list
    for key in LIST_KEYS {
        if let Some(v) = map.get_mut(key) {
            if !v.is_array() && !v.is_null() {
                *v = Value::Array(vec![v.take()]);
            }
        }
    }
    let cfg: RunConfig =
        serde_json::from_value(Value::Object(map)).map_err(|e| Error::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    /// Minimal config with every default filled in; not yet validated.
    pub fn new(model: &str, ic: &str) -> Self {
        let mut map = Map::new();
        map.insert("model".into(), model.into());
        map.insert("ic".into(), ic.into());
        serde_json::from_value(Value::Object(map)).expect("defaults deserialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn initial_condition(&self) -> Result<InitialCondition> {
        match self.ic.as_str() {
            "regular" => InitialCondition::regular(self.x_left, self.x_right, self.delta),
            "step" => InitialCondition::step(self.x_left, self.x_right),
            "constant" => Ok(InitialCondition::constant(self.ic_value)),
            other => Err(Error::Validation(format!(
                "unknown ic '{other}' (expected 'regular', 'step' or 'constant')"
            ))),
        }
    }

    /// Output times, sorted; `[t_end]` when none were given.
    pub fn output_times(&self) -> Vec<f64> {
        self.output_times.clone().unwrap_or_else(|| vec![self.t_end])
    }

    pub fn study(&self) -> Result<StudyConfig> {
        let model = builtin_model(&self.model, self.advection_speed).ok_or_else(|| {
            Error::Validation(format!(
                "unknown model '{}' (expected 'advection' or 'burgers')",
                self.model
            ))
        })?;
        let mut cfg = StudyConfig::new(Arc::from(model), self.initial_condition()?)
            .with_s(self.s.clone())
            .with_levels(self.levels.clone())
            .with_lambda(self.lambda)
            .with_t_end(self.t_end)
            .with_domain(self.xmin, self.xmax)
            .with_boundary(self.boundary)
            .with_mode(self.checks);
        cfg.tolerances = Tolerances {
            bound: self.tol_bound,
            entropy: self.tol_entropy,
        };
        cfg.unsafe_s = self.unsafe_s;
        Ok(cfg)
    }

    /// Enforces the relaxation range, `λ ≥ M`, commensurable times and sane output times.
    pub fn validate(&self) -> Result<()> {
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Validation(format!("t_end={} must be >= 0", self.t_end)));
        }
        for (name, tol) in [("tol_bound", self.tol_bound), ("tol_entropy", self.tol_entropy)] {
            if !tol.is_finite() {
                return Err(Error::Validation(format!("{name}={tol} must be finite")));
            }
        }
        let study = self.study()?;
        study.validate()?;
        let times = self.output_times();
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Validation(format!("output_times must be sorted, got {times:?}")));
        }
        for &t in &times {
            if !(t >= 0.0 && t <= self.t_end) {
                return Err(Error::Validation(format!(
                    "output time {t} outside [0, t_end={}]",
                    self.t_end
                )));
            }
            for &j in &self.levels {
                study.grid(j)?.steps_to(t)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(json: &str) -> Map<String, Value> {
        serde_json::from_str::<Value>(json).unwrap().as_object().unwrap().clone()
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = from_map(doc(r#"{"model": "advection", "ic": "regular"}"#)).unwrap();
        assert_eq!(cfg.s, vec![1.0]);
        assert_eq!(cfg.lambda, 1.0);
        assert_eq!(cfg.t_end, 0.1);
        assert_eq!(cfg.levels, DEFAULT_LEVELS.to_vec());
        assert_eq!((cfg.xmin, cfg.xmax), DEFAULT_DOMAIN);
        assert_eq!(cfg.boundary, Boundary::Copy);
        assert_eq!(cfg.checks, CheckMode::Strict);
        assert_eq!(cfg.output_times(), vec![0.1]);
        assert_eq!(cfg, RunConfig::new("advection", "regular"));
    }

    #[test]
    fn assumption_messages() {
        let e = from_map(doc(r#"{"model": "advection", "ic": "regular", "s": 1.5}"#)).unwrap_err();
        assert!(e.to_string().starts_with("Assumption 1"), "{e}");
        let e = from_map(doc(r#"{"model": "advection", "ic": "regular", "lambda": 0.5}"#)).unwrap_err();
        assert_eq!(e.to_string(), "Assumption 2: lambda >= M violated: lambda=0.5, M=0.75");
        let ok = from_map(doc(r#"{"model": "advection", "ic": "step", "s": 1.5, "unsafe_s": true}"#));
        assert!(ok.is_ok());
    }

    #[test]
    fn malformed_documents() {
        let e = from_map(doc(r#"{"model": "advection", "ic": "regular", "lamda": 2}"#)).unwrap_err();
        assert!(matches!(e, Error::Parse(_)), "{e}");
        let e = from_map(doc(r#"{"ic": "regular"}"#)).unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
        let e = from_map(doc(r#"{"model": "navier", "ic": "regular"}"#)).unwrap_err();
        assert!(matches!(e, Error::Validation(_)));
        let e = from_map(doc(r#"{"model": "burgers", "ic": "step", "output_times": [0.2]}"#)).unwrap_err();
        assert!(matches!(e, Error::Validation(_)));
    }

    #[test]
    fn override_values() {
        assert_eq!(parse_override_value("0.5"), Value::from(0.5));
        assert_eq!(parse_override_value("burgers"), Value::from("burgers"));
        assert_eq!(parse_override_value("256,512"), serde_json::json!([256, 512]));
        assert_eq!(parse_override_value("[0.5, 1.0]"), serde_json::json!([0.5, 1.0]));
        assert_eq!(parse_override("s = 0.7").unwrap(), ("s".into(), Value::from(0.7)));
        assert!(parse_override("nothing").is_err());
    }

    #[test]
    fn round_trip() {
        let mut cfg = RunConfig::new("burgers", "step");
        cfg.s = vec![0.5, 0.75, 1.0];
        cfg.output_times = Some(vec![0.0, 0.05, 0.1]);
        cfg.format = Format::Json;
        cfg.checks = CheckMode::Warn;
        cfg.validate().unwrap();
        let back = from_map(serde_json::from_str(&cfg.to_json()).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }
}
