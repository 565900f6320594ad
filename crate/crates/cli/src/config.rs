//! Flat key=value config file for global settings; command-line flags win.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<String>,
    pub output_format: Option<String>,
    pub output: Option<String>,
}

pub fn load(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let mut map: HashMap<String, String> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {} is not key=value: {line:?}", lineno + 1);
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    let mut cfg = FileConfig::default();
    for (key, value) in map {
        match key.as_str() {
            "seed" => cfg.seed = Some(value.parse().context("seed must be an integer")?),
            "threads" => cfg.threads = Some(value),
            "output_format" => cfg.output_format = Some(value),
            "output" => cfg.output = Some(value),
            other => bail!("unknown config key {other:?}"),
        }
    }
    Ok(cfg)
}
