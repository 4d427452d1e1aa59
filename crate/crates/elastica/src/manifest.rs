use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{AppError, AppResult};

pub const MANIFEST_VERSION: u32 = 1;
pub const FILE_NAME: &str = "run_manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub manifest_version: u32,
    pub tool: String,
    pub version: String,
    /// `git describe` of the build tree, when it was available.
    pub build: String,
    pub config: RunConfig,
    pub started_unix: f64,
    pub wall_clock_seconds: f64,
    /// grad_tol, t_end, max_steps or error.
    pub termination: String,
    pub error: Option<String>,
    pub t_final: f64,
    pub steps_accepted: u64,
    pub steps_rejected: u64,
}

impl RunManifest {
    pub fn new(config: RunConfig) -> Self {
        RunManifest {
            manifest_version: MANIFEST_VERSION,
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            build: option_env!("ELASTICA_GIT_DESCRIBE").unwrap_or("unknown").into(),
            config,
            started_unix: 0.0,
            wall_clock_seconds: 0.0,
            termination: String::new(),
            error: None,
            t_final: 0.0,
            steps_accepted: 0,
            steps_rejected: 0,
        }
    }

    pub fn write(&self, dir: &Path) -> AppResult<()> {
        let path = dir.join(FILE_NAME);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(AppError::io(path))
    }

    pub fn read(path: &Path) -> AppResult<Self> {
        let text = fs::read_to_string(path).map_err(AppError::io(path))?;
        serde_json::from_str(&text).map_err(|e| AppError::format(path, e))
    }
}
