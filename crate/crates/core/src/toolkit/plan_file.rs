//! JSON plan files and parameter files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;
use crate::lattice::Side;
use crate::planner::{PlanStats, PlannedStep, PlannerParams, PlannerResult, PlannerStatus};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub side: Side,
    pub translation: [f64; 3],
    pub rotation: [f64; 9],
    pub area_fraction: f64,
    /// Supported part of the sole in the foot frame; empty when none.
    pub foothold: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsDocument {
    pub nodes_expanded: u64,
    pub children_considered: u64,
    pub percent_rejected: f64,
    pub duration_s: f64,
    pub path_cost: f64,
    pub path_distance_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDocument {
    pub status: PlannerStatus,
    pub steps: Vec<StepDocument>,
    pub stats: StatsDocument,
}

impl From<&PlannedStep> for StepDocument {
    fn from(step: &PlannedStep) -> Self {
        let t = &step.snap.foothold_pose;
        Self {
            side: step.side,
            translation: t.translation_array(),
            rotation: t.rotation_row_major(),
            area_fraction: step.snap.area_fraction,
            foothold: step.snap.cropped_foothold.as_ref().map(|c| c.vertices().to_vec()).unwrap_or_default(),
        }
    }
}

impl StatsDocument {
    /// With `redact_timing` the duration is written as zero so that files
    /// from identical inputs compare equal.
    pub fn new(stats: &PlanStats, redact_timing: bool) -> Self {
        Self {
            nodes_expanded: stats.nodes_expanded,
            children_considered: stats.children_considered,
            percent_rejected: stats.percent_rejected,
            duration_s: if redact_timing { 0.0 } else { stats.duration_s },
            path_cost: stats.path_cost,
            path_distance_m: stats.path_distance_m,
        }
    }
}

impl PlanDocument {
    /// `steps` excludes the initial stance foot; pass wiggled steps here to
    /// write a post-processed plan.
    pub fn new(status: PlannerStatus, steps: &[PlannedStep], stats: &PlanStats, redact_timing: bool) -> Self {
        Self { status, steps: steps.iter().map(StepDocument::from).collect(), stats: StatsDocument::new(stats, redact_timing) }
    }

    pub fn from_result(result: &PlannerResult, redact_timing: bool) -> Self {
        Self::new(result.status, result.steps(), &result.stats, redact_timing)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes") + "\n"
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        read_json(path.as_ref())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), FileError> {
        write_text(path.as_ref(), &self.to_json_string())
    }
}

pub fn load_params(path: impl AsRef<Path>) -> Result<PlannerParams, FileError> {
    let path = path.as_ref();
    let params: PlannerParams = read_json(path)?;
    params.validate().map_err(|message| FileError::Invalid { path: path.display().to_string(), message })?;
    Ok(params)
}

pub fn save_params(params: &PlannerParams, path: impl AsRef<Path>) -> Result<(), FileError> {
    write_text(path.as_ref(), &(serde_json::to_string_pretty(params).expect("params serialize") + "\n"))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json { path: path.display().to_string(), source })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), FileError> {
    std::fs::write(path, text).map_err(|source| FileError::Io { path: path.display().to_string(), source })
}
