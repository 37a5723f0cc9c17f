use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use hankel_core::{ClassSpec, SearchConfig};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigRecord {
    pub grid_per_axis: usize,
    pub refine_iters: usize,
    pub refine_tol: f64,
    pub starts_kept: usize,
    pub seed_layout: &'static str,
}

impl From<&SearchConfig> for ConfigRecord {
    fn from(c: &SearchConfig) -> Self {
        Self {
            grid_per_axis: c.grid_per_axis,
            refine_iters: c.refine_iters,
            refine_tol: c.refine_tol,
            starts_kept: c.starts_kept,
            seed_layout: c.seed_layout.name(),
        }
    }
}

/// Everything needed to reproduce a report. Rerunning `hankel` with `args`
/// rewrites the report byte for byte; only `created_unix` changes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub specs: Vec<String>,
    pub config: ConfigRecord,
    pub tool_version: &'static str,
    pub created_unix: u64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        specs: &[ClassSpec],
        config: &SearchConfig,
        outputs: Vec<PathBuf>,
    ) -> Self {
        Self {
            command: command.to_owned(),
            args: std::env::args().skip(1).collect(),
            specs: specs.iter().map(ToString::to_string).collect(),
            config: config.into(),
            tool_version: env!("CARGO_PKG_VERSION"),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            outputs,
        }
    }
}

/// `report.csv` → `report.csv.manifest.json`.
pub fn sidecar_path(report: &Path) -> PathBuf {
    let mut name = report.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes the report body and its manifest sidecar.
pub fn write_with_manifest(path: &Path, body: &str, manifest: &RunManifest) -> io::Result<()> {
    std::fs::write(path, body)?;
    let json = serde_json::to_string_pretty(manifest).map_err(io::Error::other)?;
    std::fs::write(sidecar_path(path), json + "\n")
}
