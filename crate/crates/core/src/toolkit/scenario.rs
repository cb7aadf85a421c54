//! Anytime replanning against a changing world. The simulated robot takes
//! exactly one step of the current plan per tick.

use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::geometry::Pose2;
use crate::lattice::Side;
use crate::planner::{plan, verify_path, PlannerError, PlannerParams, PlannerRequest, PlannerResult, PlannerStatus};
use crate::toolkit::generators::{flat_region, vertical_box};
use crate::toolkit::plan_file::{read_json, FileError, PlanDocument, StepDocument};
use crate::validity::RejectionReason;
use crate::world::{Environment, PlanarRegion, WorldError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScenarioEvent {
    AddRegion { time: f64, regions: Vec<PlanarRegion> },
    RemoveRegion { time: f64, ids: Vec<i64> },
}

impl ScenarioEvent {
    pub fn time(&self) -> f64 {
        match self {
            Self::AddRegion { time, .. } | Self::RemoveRegion { time, .. } => *time,
        }
    }

    fn apply(&self, env: &Environment) -> Result<Environment, WorldError> {
        match self {
            Self::AddRegion { regions, .. } => regions.iter().try_fold(env.clone(), |e, r| e.with_region(r.clone())),
            Self::RemoveRegion { ids, .. } => ids.iter().try_fold(env.clone(), |e, id| e.without_region(*id)),
        }
    }
}

fn default_max_ticks() -> usize {
    60
}

fn default_plan_timeout() -> f64 {
    5.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioScript {
    pub environment: Environment,
    #[serde(default)]
    pub events: Vec<ScenarioEvent>,
    /// Seconds of simulated time per tick.
    pub replan_period: f64,
    pub start_left: Pose2,
    pub start_right: Pose2,
    pub goal: Pose2,
    #[serde(default)]
    pub params: PlannerParams,
    /// Wall-clock budget of each replan, seconds.
    #[serde(default = "default_plan_timeout")]
    pub plan_timeout: f64,
    #[serde(default = "default_max_ticks")]
    pub max_ticks: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("replan period and plan timeout must be positive")]
    BadPeriod,
    #[error("event {index} at t = {time} comes before the previous event")]
    EventsOutOfOrder { index: usize, time: f64 },
    #[error("event {index}: {source}")]
    BadEvent { index: usize, source: WorldError },
    #[error(transparent)]
    Planner(#[from] PlannerError),
    #[error(transparent)]
    File(#[from] FileError),
}

impl ScenarioScript {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        Ok(read_json(path.as_ref())?)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.replan_period > 0.0 && self.plan_timeout > 0.0) {
            return Err(ScenarioError::BadPeriod);
        }
        let mut env = self.environment.clone();
        let mut last = f64::NEG_INFINITY;
        for (index, e) in self.events.iter().enumerate() {
            if !(e.time() >= last) {
                return Err(ScenarioError::EventsOutOfOrder { index, time: e.time() });
            }
            last = e.time();
            env = e.apply(&env).map_err(|source| ScenarioError::BadEvent { index, source })?;
        }
        self.params.validate().map_err(PlannerError::InvalidParams)?;
        Ok(())
    }

    /// World after every event up to and including time `t`.
    pub fn environment_at(&self, t: f64) -> Result<Environment, ScenarioError> {
        let mut env = self.environment.clone();
        for (index, e) in self.events.iter().enumerate().take_while(|(_, e)| e.time() <= t) {
            env = e.apply(&env).map_err(|source| ScenarioError::BadEvent { index, source })?;
        }
        Ok(env)
    }
}

/// One replan and what came of it.
#[derive(Debug, Clone)]
pub struct TickOutcome {
    pub tick: usize,
    pub time: f64,
    pub env: Arc<Environment>,
    pub result: PlannerResult,
    /// First edge of the plan that fails re-verification, if any.
    pub verification: Result<(), (usize, RejectionReason)>,
    /// The step taken after this replan.
    pub executed: Option<crate::planner::PlannedStep>,
}

impl TickOutcome {
    pub fn best_effort_monotone(&self) -> bool {
        self.result.best_effort_history.windows(2).all(|w| w[1] <= w[0])
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub ticks: Vec<TickOutcome>,
    pub reached_goal: bool,
}

pub fn run_scenario(script: &ScenarioScript) -> Result<ScenarioRun, ScenarioError> {
    script.validate()?;
    let mut left = script.start_left;
    let mut right = script.start_right;
    let mut ticks = Vec::new();
    let mut reached_goal = false;
    for tick in 0..script.max_ticks {
        let time = tick as f64 * script.replan_period;
        let env = Arc::new(script.environment_at(time)?);
        let request = PlannerRequest {
            env: env.clone(),
            start_left: left,
            start_right: right,
            goal: script.goal,
            timeout: Duration::from_secs_f64(script.plan_timeout),
            params: script.params.clone(),
        };
        let result = plan(&request)?;
        let verification = verify_path(&result.path, &env, &script.params);
        let executed = result.steps().first().cloned();
        log::info!("tick {tick}: {} with {} steps", result.status.as_str(), result.steps().len());
        if let Some(step) = &executed {
            match step.side {
                Side::Left => left = step.snap.pose,
                Side::Right => right = step.snap.pose,
            }
        }
        let done = result.status == PlannerStatus::FoundSolution && result.steps().is_empty();
        ticks.push(TickOutcome { tick, time, env, result, verification, executed: executed.clone() });
        if done {
            reached_goal = true;
            break;
        }
        if executed.is_none() {
            break;
        }
    }
    Ok(ScenarioRun { ticks, reached_goal })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationFailure {
    pub edge: usize,
    pub reason: RejectionReason,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TickDocument {
    pub tick: usize,
    pub time: f64,
    pub region_ids: Vec<i64>,
    pub plan: PlanDocument,
    pub verification_failure: Option<VerificationFailure>,
    pub best_effort_monotone: bool,
    pub executed: Option<StepDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub reached_goal: bool,
    pub ticks: Vec<TickDocument>,
}

impl ScenarioRun {
    pub fn trace(&self, redact_timing: bool) -> TraceDocument {
        let ticks = self
            .ticks
            .iter()
            .map(|t| TickDocument {
                tick: t.tick,
                time: t.time,
                region_ids: t.env.regions().iter().map(|r| r.id()).collect(),
                plan: PlanDocument::from_result(&t.result, redact_timing),
                verification_failure: t.verification.err().map(|(edge, reason)| VerificationFailure { edge, reason }),
                best_effort_monotone: t.best_effort_monotone(),
                executed: t.executed.as_ref().map(StepDocument::from),
            })
            .collect();
        TraceDocument { reached_goal: self.reached_goal, ticks }
    }
}

/// Ids of the pillar added in [`dynamic_obstacle_script`].
pub const PILLAR_IDS: [i64; 4] = [101, 102, 103, 104];
/// Ids of the second pillar, added when the first one is removed.
pub const SECOND_PILLAR_IDS: [i64; 4] = [201, 202, 203, 204];

/// Walk across open ground while a pillar appears just right of the path,
/// then moves ahead and to the left.
pub fn dynamic_obstacle_script() -> ScenarioScript {
    let mut params = PlannerParams::default();
    params.max_expansions = Some(4000);
    let nominal = params.cost.nominal_stance_width / 2.0;
    ScenarioScript {
        environment: Environment::new(vec![flat_region(1, (-1.0, -2.0), (5.0, 2.0), 0.0)]).expect("single region"),
        events: vec![
            ScenarioEvent::AddRegion { time: 2.0, regions: vertical_box(PILLAR_IDS[0], (1.8, -0.45), (2.2, 0.05), 0.0, 1.8) },
            ScenarioEvent::RemoveRegion { time: 5.0, ids: PILLAR_IDS.to_vec() },
            ScenarioEvent::AddRegion { time: 5.0, regions: vertical_box(SECOND_PILLAR_IDS[0], (3.0, 0.3), (3.4, 0.8), 0.0, 1.8) },
        ],
        replan_period: 1.0,
        start_left: Pose2::new(0.0, nominal, 0.0),
        start_right: Pose2::new(0.0, -nominal, 0.0),
        goal: Pose2::new(4.2, 0.0, 0.0),
        params,
        plan_timeout: default_plan_timeout(),
        max_ticks: default_max_ticks(),
    }
}
