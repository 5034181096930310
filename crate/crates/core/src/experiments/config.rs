//! Plain-text key=value experiment configuration with command-line
//! overrides. Unknown keys are rejected before any run starts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::core_model::{PhysParams, PotentialSign};
use crate::error::{Error, Result};

/// Every key any command understands. Anything else is a config error.
pub const KNOWN_KEYS: &[&str] = &[
    "lambda",
    "omega",
    "dim",
    "potential",
    "grid.L",
    "grid.N",
    "dt",
    "t_end",
    "reg",
    "record_every",
    "boundary_mass_limit",
    "x0",
    "v",
    "c",
    "eps",
    "nu",
    "eta",
    "eps_list",
    "n_orbits",
    "tau.min",
    "tau.max",
    "taudot.min",
    "taudot.max",
    "class_grid.n",
    "tau0",
    "taudot0",
    "perturb",
    "t_star_max",
    "branch",
    "output_dir",
    "negative_control",
    "plot",
];

#[derive(Debug, Clone, Default)]
pub struct ExperimentConfig {
    map: BTreeMap<String, String>,
}

impl ExperimentConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Load `key = value` lines; `#` starts a comment, blank lines are fine.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("{}:{}: expected key=value", path.display(), lineno + 1))
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    /// Apply one `key=value` override (the repeatable `--set` flag).
    pub fn apply_override(&mut self, kv: &str) -> Result<()> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set needs key=value, got '{kv}'")))?;
        self.set(k.trim(), v.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::Config(format!("unknown config key '{key}'")));
        }
        self.map.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("key '{key}': cannot parse '{v}' as a number"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("key '{key}': cannot parse '{v}' as an integer"))),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => match v.to_ascii_lowercase().as_str() {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(Error::Config(format!("key '{key}': cannot parse '{v}' as a bool"))),
            },
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.map.get(key).map(|s| s.as_str()).unwrap_or(default)
    }

    /// Comma-separated list of numbers.
    pub fn f64_list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.map.get(key) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|s| {
                    s.trim().parse::<f64>().map_err(|_| {
                        Error::Config(format!("key '{key}': cannot parse '{s}' in list"))
                    })
                })
                .collect(),
        }
    }

    /// Physical parameters with validation; defaults mirror the two-Gausson
    /// reference case λ = −2, ω = 1, d = 1, repulsive.
    pub fn phys_params(&self) -> Result<PhysParams> {
        let lambda = self.f64_or("lambda", -2.0)?;
        let omega = self.f64_or("omega", 1.0)?;
        let dim = self.usize_or("dim", 1)?;
        let sign = match self.str_or("potential", "repulsive") {
            "repulsive" => PotentialSign::Repulsive,
            "confining" => PotentialSign::Confining,
            "none" => PotentialSign::None,
            other => {
                return Err(Error::Config(format!(
                    "potential must be repulsive|confining|none, got '{other}'"
                )))
            }
        };
        PhysParams::new(lambda, omega, dim, sign)
    }

    pub fn output_dir(&self, explicit: Option<&Path>) -> PathBuf {
        explicit
            .map(|p| p.to_path_buf())
            .unwrap_or_else(|| PathBuf::from(self.str_or("output_dir", "out")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys() {
        let mut cfg = ExperimentConfig::new();
        assert!(cfg.set("lambda", "-2").is_ok());
        assert!(matches!(cfg.set("lambada", "-2"), Err(Error::Config(_))));
        assert!(cfg.apply_override("nonsense=1").is_err());
    }

    #[test]
    fn parses_file_with_comments() {
        let dir = std::env::temp_dir().join("lognls_cfg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exp.cfg");
        std::fs::write(&path, "# reference case\nlambda = -2.0\nomega=1\ngrid.N = 2048 # fine\n\n")
            .unwrap();
        let cfg = ExperimentConfig::from_file(&path).unwrap();
        assert_eq!(cfg.f64_or("lambda", 0.0).unwrap(), -2.0);
        assert_eq!(cfg.usize_or("grid.N", 0).unwrap(), 2048);
        let p = cfg.phys_params().unwrap();
        assert_eq!(p.omega, 1.0);
    }

    #[test]
    fn override_wins_over_file_value() {
        let mut cfg = ExperimentConfig::new();
        cfg.set("omega", "1").unwrap();
        cfg.apply_override("omega=2").unwrap();
        assert_eq!(cfg.f64_or("omega", 0.0).unwrap(), 2.0);
    }

    #[test]
    fn bad_values_are_config_errors() {
        let mut cfg = ExperimentConfig::new();
        cfg.set("omega", "fast").unwrap();
        assert!(matches!(cfg.f64_or("omega", 1.0), Err(Error::Config(_))));
        cfg.set("potential", "inverted").unwrap();
        assert!(cfg.phys_params().is_err());
    }

    #[test]
    fn list_parsing() {
        let mut cfg = ExperimentConfig::new();
        cfg.set("eps_list", "0.1, 0.01,0.001").unwrap();
        assert_eq!(cfg.f64_list_or("eps_list", &[]).unwrap(), vec![0.1, 0.01, 0.001]);
    }
}
