use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::DEFAULT_DEGREE_CAP;
use crate::automata::DEFAULT_STATE_CAP;
use crate::error::{Error, Result};
use crate::growth::{DEFAULT_CHARPOLY_CAP, DEFAULT_ITERATION_CAP};
use crate::oracle::{DEFAULT_ELEMENT_CAP, DEFAULT_ORACLE_DEPTH};
use crate::roots::DEFAULT_SIGMA_CAP;

/// Environment variable naming a TOML file with default settings.
pub const CONFIG_ENV: &str = "COXGROWTH_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub degree: usize,
    pub sigma: usize,
    pub states: usize,
    pub charpoly: usize,
    pub elements: usize,
    pub iterations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            degree: DEFAULT_DEGREE_CAP,
            sigma: DEFAULT_SIGMA_CAP,
            states: DEFAULT_STATE_CAP,
            charpoly: DEFAULT_CHARPOLY_CAP,
            elements: DEFAULT_ELEMENT_CAP,
            iterations: DEFAULT_ITERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub input: Option<PathBuf>,
    /// Counting horizon.
    pub k: usize,
    /// Width target for growth-rate enclosures.
    pub tol: f64,
    pub caps: Caps,
    pub format: OutputFormat,
    pub oracle: bool,
    pub oracle_depth: usize,
    pub dot: bool,
    pub corroborate: bool,
    /// Significant digits for decimal renderings.
    pub digits: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            input: None,
            k: 30,
            tol: 1e-9,
            caps: Caps::default(),
            format: OutputFormat::Text,
            oracle: false,
            oracle_depth: DEFAULT_ORACLE_DEPTH,
            dot: false,
            corroborate: false,
            digits: 30,
        }
    }
}

impl AnalysisConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: AnalysisConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Defaults, overridden by the file named in [`CONFIG_ENV`] if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.caps;
        for (name, v) in [
            ("caps.degree", c.degree),
            ("caps.sigma", c.sigma),
            ("caps.states", c.states),
            ("caps.charpoly", c.charpoly),
            ("caps.elements", c.elements),
            ("caps.iterations", c.iterations),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config(format!("tolerance {} must lie in (0, 1)", self.tol)));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> BigRational {
        BigRational::from_float(self.tol).expect("validated finite tolerance")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_overrides() {
        let c = AnalysisConfig::from_toml("k = 12\ntol = 1e-6\nformat = \"json\"\n[caps]\nstates = 500\n").unwrap();
        assert_eq!(c.k, 12);
        assert_eq!(c.format, OutputFormat::Json);
        assert_eq!(c.caps.states, 500);
        assert_eq!(c.caps.sigma, DEFAULT_SIGMA_CAP);
    }

    #[test]
    fn validation() {
        assert!(AnalysisConfig::from_toml("tol = 2.0").is_err());
        assert!(AnalysisConfig::from_toml("[caps]\ndegree = 0").is_err());
        assert!(AnalysisConfig::from_toml("bogus = 1").is_err());
        assert!(AnalysisConfig::default().validate().is_ok());
    }
}
