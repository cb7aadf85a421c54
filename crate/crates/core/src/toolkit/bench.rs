//! Benchmark suites and the results table.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::costing::feet_around;
use crate::geometry::Pose2;
use crate::planner::{plan, PlannerError, PlannerParams, PlannerRequest, PlannerStatus};
use crate::toolkit::plan_file::{load_params, read_json, FileError};
use crate::world::{Environment, WorldError};

pub const CSV_HEADER: [&str; 6] =
    ["Plan", "Number of Steps", "Plan Distance (m)", "Planning Duration (s)", "Nodes Expanded", "Percent Rejected"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub name: String,
    /// Environment file, relative to the suite file.
    pub environment: PathBuf,
    /// Start midstance; the feet stand at the nominal width around it.
    pub start: Pose2,
    pub goal: Pose2,
    /// Parameters file, relative to the suite file; defaults when absent.
    #[serde(default)]
    pub params: Option<PathBuf>,
    /// Seconds.
    pub timeout: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkSuite {
    pub entries: Vec<SuiteEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error("{path}: {source}")]
    Environment { path: String, source: WorldError },
    #[error("entry '{name}': {source}")]
    Planner { name: String, source: PlannerError },
    #[error("entry '{name}': timeout must be positive")]
    BadTimeout { name: String },
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

/// A suite entry with its files loaded.
#[derive(Debug, Clone)]
pub struct LoadedEntry {
    pub name: String,
    pub request: PlannerRequest,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub status: PlannerStatus,
    pub steps: usize,
    pub distance_m: f64,
    pub duration_s: f64,
    pub nodes_expanded: u64,
    pub percent_rejected: f64,
}

impl BenchmarkSuite {
    /// Reads the suite and every file it names.
    pub fn load(path: impl AsRef<Path>) -> Result<Vec<LoadedEntry>, BenchError> {
        let path = path.as_ref();
        let suite: BenchmarkSuite = read_json(path)?;
        suite.resolve(path.parent().unwrap_or(Path::new(".")))
    }

    pub fn resolve(&self, base: &Path) -> Result<Vec<LoadedEntry>, BenchError> {
        self.entries
            .iter()
            .map(|e| {
                if !(e.timeout > 0.0 && e.timeout.is_finite()) {
                    return Err(BenchError::BadTimeout { name: e.name.clone() });
                }
                let env_path = base.join(&e.environment);
                let env = Environment::load(&env_path)
                    .map_err(|source| BenchError::Environment { path: env_path.display().to_string(), source })?;
                let params = match &e.params {
                    Some(p) => load_params(base.join(p))?,
                    None => PlannerParams::default(),
                };
                let (start_left, start_right) = feet_around(&e.start, params.cost.nominal_stance_width);
                let request = PlannerRequest {
                    env: Arc::new(env),
                    start_left,
                    start_right,
                    goal: e.goal,
                    timeout: Duration::from_secs_f64(e.timeout),
                    params,
                };
                Ok(LoadedEntry { name: e.name.clone(), request })
            })
            .collect()
    }
}

pub fn run_benchmark(entries: &[LoadedEntry]) -> Result<Vec<BenchRow>, BenchError> {
    entries
        .iter()
        .map(|e| {
            let result = plan(&e.request).map_err(|source| BenchError::Planner { name: e.name.clone(), source })?;
            log::info!("{}: {} in {:.3} s", e.name, result.status.as_str(), result.stats.duration_s);
            Ok(BenchRow {
                name: e.name.clone(),
                status: result.status,
                steps: result.steps().len(),
                distance_m: result.stats.path_distance_m,
                duration_s: result.stats.duration_s,
                nodes_expanded: result.stats.nodes_expanded,
                percent_rejected: result.stats.percent_rejected,
            })
        })
        .collect()
}

/// Table with [`CSV_HEADER`] columns, numbers at full precision.
/// `redact_timing` writes zero durations.
pub fn to_csv(rows: &[BenchRow], redact_timing: bool) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let duration = if redact_timing { 0.0 } else { r.duration_s };
        w.write_record([
            r.name.clone(),
            r.steps.to_string(),
            r.distance_m.to_string(),
            duration.to_string(),
            r.nodes_expanded.to_string(),
            r.percent_rejected.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
}
