use std::path::{Path, PathBuf};

use gjf_core::solvers::{Kind, SchemeParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::registry;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("unknown problem kind `{0}`")]
    UnknownKind(String),
    #[error("unknown right-hand side `{0}`")]
    UnknownRhs(String),
    #[error("unknown norm `{0}` (expected L2 or FracEnergy)")]
    UnknownNorm(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A single order or a list of orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Orders {
    One(f64),
    Many(Vec<f64>),
}

impl Orders {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Orders::One(v) => vec![*v],
            Orders::Many(v) => v.clone(),
        }
    }
}

fn default_norms() -> Vec<String> {
    vec!["L2".into(), "FracEnergy".into()]
}

fn default_quad_extra() -> usize {
    16
}

/// A study as read from TOML or JSON.
///
/// ```toml
/// kind = "fivp"
/// nu = [1.3, 1.7]
/// rhs = "(1-x^3)*(1-exp(1-x))"
/// N_list = [8, 16, 32, 64, 128]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub kind: String,
    pub nu: Orders,
    pub rhs: String,
    #[serde(rename = "N_list", alias = "n_list")]
    pub n_list: Vec<usize>,
    #[serde(default = "default_norms")]
    pub norms: Vec<String>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default = "default_quad_extra")]
    pub quad_extra: usize,
}

impl StudyConfig {
    /// Reads a `.json` file as JSON and anything else as TOML.
    pub fn load(path: &Path) -> Result<(StudyConfig, Vec<u8>), ConfigError> {
        let bytes = std::fs::read(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let text = String::from_utf8_lossy(&bytes);
        let parse_err = |msg: String| ConfigError::Parse {
            path: path.to_path_buf(),
            msg,
        };
        let cfg: StudyConfig = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?
        } else {
            toml::from_str(&text).map_err(|e| parse_err(e.to_string()))?
        };
        cfg.validate()?;
        Ok((cfg, bytes))
    }

    pub fn kind(&self) -> Result<Kind, ConfigError> {
        Kind::from_name(&self.kind).ok_or_else(|| ConfigError::UnknownKind(self.kind.clone()))
    }

    pub fn wants_l2(&self) -> bool {
        self.norms.iter().any(|n| n == "L2")
    }

    pub fn wants_frac(&self) -> bool {
        self.norms.iter().any(|n| n == "FracEnergy")
    }

    /// Truncation of the reference solution when no exact solution is known.
    pub fn n_ref(&self) -> usize {
        2 * self.n_list.iter().copied().max().unwrap_or(0) + 32
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let kind = self.kind()?;
        if registry::lookup(&self.rhs).is_none() {
            return Err(ConfigError::UnknownRhs(self.rhs.clone()));
        }
        if let Some(n) = self.norms.iter().find(|n| *n != "L2" && *n != "FracEnergy") {
            return Err(ConfigError::UnknownNorm(n.clone()));
        }
        if self.norms.is_empty() {
            return Err(ConfigError::Invalid("norms must not be empty".into()));
        }
        if self.n_list.is_empty() {
            return Err(ConfigError::Invalid("N_list must not be empty".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::Invalid("N_list must be strictly increasing".into()));
        }
        let nus = self.nu.values();
        if nus.is_empty() {
            return Err(ConfigError::Invalid("at least one order is required".into()));
        }
        for nu in nus {
            let p = SchemeParams::new(kind, nu).map_err(|e| ConfigError::Invalid(e.to_string()))?;
            p.degree_range(self.n_list[0])
                .map_err(|e| ConfigError::Invalid(format!("ν = {nu}: {e}")))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<StudyConfig, ConfigError> {
        let cfg: StudyConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: "inline".into(),
            msg: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    #[test]
    fn minimal_toml() {
        let cfg = parse("kind = \"fivp\"\nnu = 0.5\nrhs = \"one\"\nN_list = [4, 8]\n").unwrap();
        assert_eq!(cfg.nu.values(), vec![0.5]);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.quad_extra, 16);
        assert!(cfg.wants_l2() && cfg.wants_frac());
        assert_eq!(cfg.n_ref(), 48);
    }

    #[test]
    fn rejects_bad_values() {
        let base = |extra: &str| format!("kind = \"fivp\"\nrhs = \"one\"\n{extra}");
        assert!(matches!(parse(&base("nu = 0.5\nN_list = [8, 4]")), Err(ConfigError::Invalid(_))));
        assert!(matches!(parse(&base("nu = 2.0\nN_list = [4]")), Err(ConfigError::Invalid(_))));
        assert!(matches!(
            parse("kind = \"heat\"\nnu = 0.5\nrhs = \"one\"\nN_list = [4]"),
            Err(ConfigError::UnknownKind(_))
        ));
        assert!(matches!(
            parse("kind = \"fivp\"\nnu = 0.5\nrhs = \"tan(x)\"\nN_list = [4]"),
            Err(ConfigError::UnknownRhs(_))
        ));
        assert!(matches!(
            parse(&base("nu = 0.5\nN_list = [4]\nnorms = [\"H1\"]")),
            Err(ConfigError::UnknownNorm(_))
        ));
        assert!(matches!(parse(&base("nu = 0.5\nN_list = [4]\nbogus = 1")), Err(ConfigError::Parse { .. })));
    }
}
