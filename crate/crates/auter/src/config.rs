//! Configuration file: plain `key = value` lines.
//!
//! Recognized keys: `cache_dir` (string), `truncation` (integer word
//! count for norm contexts), `parallelism` (accepted for forward
//! compatibility; the driver is single-threaded and deterministic).
//! Lines starting with `#` are comments.  Command-line flags override
//! the file; the cache-dir environment variable overrides only the
//! cache directory.

use std::path::{Path, PathBuf};

pub const CACHE_ENV_VAR: &str = "AUTER_CACHE_DIR";
pub const DEFAULT_CONFIG_FILE: &str = "auter.toml";

#[derive(Debug, Clone)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub truncation: usize,
    pub parallelism: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: None,
            truncation: 64,
            parallelism: 1,
        }
    }
}

impl Config {
    /// Loads the file when present; unknown keys are ignored.
    pub fn load(path: Option<&Path>) -> Config {
        let mut config = Config::default();
        let candidate = path
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CONFIG_FILE));
        let Ok(text) = std::fs::read_to_string(&candidate) else {
            return config;
        };
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('[') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                continue;
            };
            let key = key.trim();
            let value = value.trim().trim_matches('"');
            match key {
                "cache_dir" => config.cache_dir = Some(PathBuf::from(value)),
                "truncation" => {
                    if let Ok(n) = value.parse() {
                        config.truncation = n;
                    }
                }
                "parallelism" => {
                    if let Ok(n) = value.parse() {
                        config.parallelism = n;
                    }
                }
                _ => {}
            }
        }
        config
    }

    /// Cache directory resolution: flag, then environment, then config
    /// file, then a per-user temp directory.
    pub fn cache_dir(&self, flag: Option<&Path>) -> PathBuf {
        if let Some(dir) = flag {
            return dir.to_path_buf();
        }
        if let Ok(dir) = std::env::var(CACHE_ENV_VAR) {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        if let Some(dir) = &self.cache_dir {
            return dir.clone();
        }
        std::env::temp_dir().join("auter-cache")
    }
}
