//! TOML generator configurations.
//!
//! ```toml
//! name = "nrp-1"
//! seed = 7
//! customers = 100
//! requests = [1, 5]
//! profit = [1, 50]
//!
//! [[levels]]
//! count = 20
//! cost = [1, 5]
//! max_parents = 8
//! ```

use nrp_core::instgen::ConfigError;
use nrp_core::{GeneratorConfig, LevelSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelFile {
    pub count: usize,
    pub cost: [u64; 2],
    pub max_parents: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub name: Option<String>,
    pub seed: u64,
    pub customers: usize,
    pub requests: [u64; 2],
    pub profit: [u64; 2],
    pub levels: Vec<LevelFile>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigFileError {
    #[error("invalid configuration: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid configuration: {0}")]
    Invalid(#[from] ConfigError),
}

impl ConfigFile {
    pub fn to_config(&self) -> GeneratorConfig {
        GeneratorConfig {
            levels: self
                .levels
                .iter()
                .map(|l| LevelSpec::new(l.count, l.cost[0], l.cost[1], l.max_parents))
                .collect(),
            customer_count: self.customers,
            requests_per_customer: (self.requests[0], self.requests[1]),
            profit_range: (self.profit[0], self.profit[1]),
            seed: self.seed,
        }
    }

    pub fn from_config(name: Option<String>, config: &GeneratorConfig) -> Self {
        Self {
            name,
            seed: config.seed,
            customers: config.customer_count,
            requests: [config.requests_per_customer.0, config.requests_per_customer.1],
            profit: [config.profit_range.0, config.profit_range.1],
            levels: config
                .levels
                .iter()
                .map(|l| LevelFile { count: l.count, cost: [l.cost_min, l.cost_max], max_parents: l.max_parents })
                .collect(),
        }
    }
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<(Option<String>, GeneratorConfig), ConfigFileError> {
    let file: ConfigFile = toml::from_str(text)?;
    let config = file.to_config();
    config.validate()?;
    Ok((file.name, config))
}

pub fn write_config(name: Option<String>, config: &GeneratorConfig) -> String {
    toml::to_string(&ConfigFile::from_config(name, config)).expect("config serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use nrp_core::instgen::PRESETS;

    fn shipped(name: &str) -> &'static str {
        match name {
            "nrp-1" => include_str!("../presets/nrp-1.toml"),
            "nrp-2" => include_str!("../presets/nrp-2.toml"),
            "nrp-3" => include_str!("../presets/nrp-3.toml"),
            "nrp-4" => include_str!("../presets/nrp-4.toml"),
            "nrp-5" => include_str!("../presets/nrp-5.toml"),
            _ => unreachable!(),
        }
    }

    #[test]
    fn shipped_presets_match_builtins() {
        for name in PRESETS {
            let (n, cfg) = parse_config(shipped(name)).unwrap();
            assert_eq!(n.as_deref(), Some(name));
            assert_eq!(cfg, GeneratorConfig::preset(name, cfg.seed).unwrap(), "{name}");
        }
    }

    #[test]
    fn round_trip() {
        let cfg = GeneratorConfig::preset("nrp-2", 3).unwrap();
        let text = write_config(Some("x".into()), &cfg);
        assert_eq!(parse_config(&text).unwrap(), (Some("x".into()), cfg));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(parse_config("seed = 1").is_err());
        let bad_range = "seed = 1\ncustomers = 2\nrequests = [1, 1]\nprofit = [5, 1]\n[[levels]]\ncount = 2\ncost = [1, 1]\nmax_parents = 0\n";
        assert!(matches!(parse_config(bad_range), Err(ConfigFileError::Invalid(_))));
        let unknown = "seed = 1\ncustomers = 2\nrequests = [1, 1]\nprofit = [1, 1]\ncolour = 1\n[[levels]]\ncount = 2\ncost = [1, 1]\nmax_parents = 0\n";
        assert!(matches!(parse_config(unknown), Err(ConfigFileError::Toml(_))));
    }
}
