//! `key = value` configuration file named by `GTM_CONFIG`. Flags given on the
//! command line take precedence over file values, which take precedence
//! over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

pub const CONFIG_ENV: &str = "GTM_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("config line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("config key '{key}': {msg}")]
    Value { key: String, msg: String },
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
}

pub const KEYS: [&str; 12] = [
    "q",
    "max_period",
    "v_target_err",
    "bisect_tol",
    "validity_tol",
    "depth_cap",
    "grid",
    "resolution",
    "points",
    "iterations",
    "threads",
    "format",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q: u32,
    pub max_period: u32,
    pub v_target_err: f64,
    pub bisect_tol: f64,
    pub validity_tol: f64,
    pub depth_cap: usize,
    pub grid: usize,
    pub resolution: usize,
    pub points: usize,
    pub iterations: usize,
    pub threads: Option<usize>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 2,
            max_period: gelfond::gelfond::DEFAULT_MAX_PERIOD,
            v_target_err: gelfond::circle::DEFAULT_TARGET_ERR,
            bisect_tol: gelfond::gelfond::DEFAULT_LAMBDA_TOL,
            validity_tol: gelfond::gelfond::DEFAULT_VALIDITY_TOL,
            depth_cap: gelfond::circle::DEFAULT_DEPTH_CAP,
            grid: 200,
            resolution: 200,
            points: 2048,
            iterations: gelfond::sturmian::DEFAULT_ROTATION_ITERS,
            threads: None,
            format: Format::Csv,
        }
    }
}

pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or(ConfigError::Syntax { line: i + 1 })?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(ConfigError::UnknownKey(k.to_string()));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::Value {
        key: key.into(),
        msg: format!("cannot parse '{v}'"),
    })
}

impl RunConfig {
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self, ConfigError> {
        let mut c = Self::default();
        for (k, v) in pairs {
            match k.as_str() {
                "q" => c.q = parse(k, v)?,
                "max_period" => c.max_period = parse(k, v)?,
                "v_target_err" => c.v_target_err = parse(k, v)?,
                "bisect_tol" => c.bisect_tol = parse(k, v)?,
                "validity_tol" => c.validity_tol = parse(k, v)?,
                "depth_cap" => c.depth_cap = parse(k, v)?,
                "grid" => c.grid = parse(k, v)?,
                "resolution" => c.resolution = parse(k, v)?,
                "points" => c.points = parse(k, v)?,
                "iterations" => c.iterations = parse(k, v)?,
                "threads" => c.threads = Some(parse(k, v)?),
                "format" => {
                    c.format = match v.as_str() {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        _ => {
                            return Err(ConfigError::Value {
                                key: k.clone(),
                                msg: "expected csv or json".into(),
                            })
                        }
                    }
                }
                _ => return Err(ConfigError::UnknownKey(k.clone())),
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_pairs(&parse_pairs(&text)?)
    }

    /// Defaults, overridden by the file named in `GTM_CONFIG` if set.
    pub fn load() -> Result<Self, ConfigError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::from_file(Path::new(&p)),
            None => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, msg: &str| {
            Err(ConfigError::Value {
                key: key.into(),
                msg: msg.into(),
            })
        };
        if self.q < 2 {
            return bad("q", "must be at least 2");
        }
        for (k, v) in [
            ("v_target_err", self.v_target_err),
            ("bisect_tol", self.bisect_tol),
            ("validity_tol", self.validity_tol),
        ] {
            if !(v > 0.0) {
                return bad(k, "must be positive");
            }
        }
        Ok(())
    }
}
