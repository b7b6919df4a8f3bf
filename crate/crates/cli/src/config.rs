use std::path::Path;

use ramsey_rates::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub optimizer: OptimizerDefaults,
    #[serde(default)]
    pub verify: VerifyDefaults,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerDefaults {
    pub starts: Option<usize>,
    pub tolerance: Option<f64>,
    pub max_iter: Option<usize>,
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDefaults {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub max_vertices: Option<usize>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
}
