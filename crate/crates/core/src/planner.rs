//! Weighted A* over the footstep lattice with an anytime best-effort path.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::costing::{edge_cost, foot_heuristic, nominal_midstance, CostParams};
use crate::geometry::{wrap_angle, Pose2};
use crate::lattice::{expand_node, pose_to_node, ExpansionParams, FootstepNode, LatticeParams, Side};
use crate::snapper::{snap_node, FootPolygon, SnapResult};
use crate::validity::{validate_edge, CheckStats, CheckerParams, RejectionReason};
use crate::wiggler::WiggleParams;
use crate::world::Environment;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GoalTolerance {
    pub xy: f64,
    pub yaw: f64,
}

impl Default for GoalTolerance {
    fn default() -> Self {
        Self { xy: 0.05, yaw: 10f64.to_radians() }
    }
}

/// Every tunable of a planning run; this is also the parameters file layout.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerParams {
    pub lattice: LatticeParams,
    pub expansion: ExpansionParams,
    pub foot: FootPolygon,
    pub checker: CheckerParams,
    pub cost: CostParams,
    pub goal_tolerance: GoalTolerance,
    pub wiggle: WiggleParams,
    /// Stop after this many expansions; unlike the timeout this is reproducible.
    pub max_expansions: Option<u64>,
}

impl PlannerParams {
    pub fn validate(&self) -> Result<(), String> {
        self.lattice.validate()?;
        self.expansion.validate()?;
        self.checker.validate()?;
        self.cost.validate()?;
        self.wiggle.validate(&self.lattice)?;
        if !(self.goal_tolerance.xy >= 0.0 && self.goal_tolerance.yaw >= 0.0) {
            return Err("goal tolerances must be non-negative".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PlannerRequest {
    pub env: Arc<Environment>,
    pub start_left: Pose2,
    pub start_right: Pose2,
    /// Desired midstance at the end of the plan.
    pub goal: Pose2,
    pub timeout: Duration,
    pub params: PlannerParams,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlannerError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("timeout must be positive")]
    InvalidTimeout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PlannerStatus {
    FoundSolution,
    TimedOutBestEffort,
    NoPathExists,
    InvalidStart,
}

impl PlannerStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FoundSolution => "FOUND_SOLUTION",
            Self::TimedOutBestEffort => "TIMED_OUT_BEST_EFFORT",
            Self::NoPathExists => "NO_PATH_EXISTS",
            Self::InvalidStart => "INVALID_START",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannedStep {
    pub side: Side,
    pub node: FootstepNode,
    pub snap: SnapResult,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PlanStats {
    pub nodes_expanded: u64,
    pub children_considered: u64,
    pub children_rejected: BTreeMap<RejectionReason, u64>,
    pub percent_rejected: f64,
    pub duration_s: f64,
    pub path_cost: f64,
    pub path_distance_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerResult {
    pub status: PlannerStatus,
    /// Parent chain starting with the start foot that stands first; empty
    /// for an invalid start.
    pub path: Vec<PlannedStep>,
    pub stats: PlanStats,
    /// Best-effort heuristic after each expansion.
    pub best_effort_history: Vec<f64>,
}

impl PlannerResult {
    /// Footsteps to take, excluding the initial stance foot.
    pub fn steps(&self) -> &[PlannedStep] {
        self.path.get(1..).unwrap_or(&[])
    }
}

/// Best-effort state published while a search runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BestEffortSnapshot {
    pub nodes_expanded: u64,
    pub heuristic: f64,
    pub path: Vec<PlannedStep>,
}

/// Shared handle for watching or cancelling a search from another thread.
#[derive(Debug, Clone, Default)]
pub struct SearchMonitor {
    inner: Arc<MonitorInner>,
}

#[derive(Debug, Default)]
struct MonitorInner {
    snapshot: Mutex<Option<Arc<BestEffortSnapshot>>>,
    cancelled: AtomicBool,
}

impl SearchMonitor {
    pub fn latest(&self) -> Option<Arc<BestEffortSnapshot>> {
        self.inner.snapshot.lock().expect("monitor lock").clone()
    }

    pub fn cancel(&self) {
        self.inner.cancelled.store(true, AtomicOrdering::Relaxed);
    }

    fn is_cancelled(&self) -> bool {
        self.inner.cancelled.load(AtomicOrdering::Relaxed)
    }

    fn publish(&self, snapshot: BestEffortSnapshot) {
        *self.inner.snapshot.lock().expect("monitor lock") = Some(Arc::new(snapshot));
    }
}

#[derive(Debug, Clone, Copy)]
struct NodeRecord {
    g: f64,
    h: f64,
    parent: Option<FootstepNode>,
    edge_cost: f64,
}

/// Search state: best parents, costs, expanded set and memoized snaps.
#[derive(Debug, Default)]
pub struct SearchGraph {
    records: HashMap<FootstepNode, NodeRecord>,
    expanded: HashSet<FootstepNode>,
    snaps: HashMap<FootstepNode, Option<Arc<SnapResult>>>,
}

impl SearchGraph {
    pub fn g_cost(&self, node: &FootstepNode) -> Option<f64> {
        self.records.get(node).map(|r| r.g)
    }

    pub fn heuristic(&self, node: &FootstepNode) -> Option<f64> {
        self.records.get(node).map(|r| r.h)
    }

    /// Best parent and the cost of the edge from it.
    pub fn parent(&self, node: &FootstepNode) -> Option<(FootstepNode, f64)> {
        self.records.get(node).and_then(|r| r.parent.map(|p| (p, r.edge_cost)))
    }

    pub fn is_expanded(&self, node: &FootstepNode) -> bool {
        self.expanded.contains(node)
    }

    pub fn expanded_count(&self) -> usize {
        self.expanded.len()
    }

    pub fn scored_nodes(&self) -> impl Iterator<Item = &FootstepNode> {
        self.records.keys()
    }

    pub fn snap(&self, node: &FootstepNode) -> Option<&SnapResult> {
        self.snaps.get(node).and_then(|s| s.as_deref())
    }

    /// Parent chain from a start foot to `end`, inclusive.
    pub fn extract_path(&self, end: &FootstepNode) -> Vec<FootstepNode> {
        let mut chain = Vec::new();
        let mut cursor = self.records.contains_key(end).then_some(*end);
        while let Some(node) = cursor {
            chain.push(node);
            cursor = self.records.get(&node).and_then(|r| r.parent);
        }
        chain.reverse();
        chain
    }
}

#[derive(Debug, Clone, Copy)]
struct FrontierEntry {
    f: f64,
    h: f64,
    g: f64,
    seq: u64,
    node: FootstepNode,
}

impl PartialEq for FrontierEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FrontierEntry {}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FrontierEntry {
    // reversed so the max-heap pops the lowest f, then lowest h, then oldest
    fn cmp(&self, other: &Self) -> Ordering {
        other.f.total_cmp(&self.f).then(other.h.total_cmp(&self.h)).then(other.seq.cmp(&self.seq))
    }
}

/// One search over a request. Most callers want [`plan`].
pub struct Planner<'a> {
    request: &'a PlannerRequest,
    graph: SearchGraph,
    frontier: BinaryHeap<FrontierEntry>,
    seq: u64,
    checks: CheckStats,
    best: Option<FootstepNode>,
    history: Vec<f64>,
}

impl<'a> Planner<'a> {
    pub fn new(request: &'a PlannerRequest) -> Result<Self, PlannerError> {
        request.params.validate().map_err(PlannerError::InvalidParams)?;
        if request.timeout.is_zero() {
            return Err(PlannerError::InvalidTimeout);
        }
        Ok(Self {
            request,
            graph: SearchGraph::default(),
            frontier: BinaryHeap::new(),
            seq: 0,
            checks: CheckStats::default(),
            best: None,
            history: Vec::new(),
        })
    }

    pub fn graph(&self) -> &SearchGraph {
        &self.graph
    }

    fn params(&self) -> &'a PlannerParams {
        &self.request.params
    }

    fn snap(&mut self, node: &FootstepNode) -> Option<Arc<SnapResult>> {
        if let Some(s) = self.graph.snaps.get(node) {
            return s.clone();
        }
        let p = self.params();
        let s = snap_node(node, &self.request.env, &p.foot, &p.lattice).ok().map(Arc::new);
        self.graph.snaps.insert(*node, s.clone());
        s
    }

    fn heuristic(&self, node: &FootstepNode) -> f64 {
        let p = self.params();
        foot_heuristic(&node.pose(&p.lattice), node.side, &self.request.goal, &p.cost)
    }

    /// A node finishes the plan when its nominal midstance is within tolerance of the goal.
    pub fn is_goal(&self, node: &FootstepNode) -> bool {
        let p = self.params();
        let mid = nominal_midstance(&node.pose(&p.lattice), node.side, p.cost.nominal_stance_width);
        mid.position().distance(self.request.goal.position()) <= p.goal_tolerance.xy + 1e-9
            && wrap_angle(mid.yaw - self.request.goal.yaw).abs() <= p.goal_tolerance.yaw + 1e-9
    }

    fn track(&mut self, node: FootstepNode) {
        let record = self.graph.records[&node];
        let better = match self.best.and_then(|b| self.graph.records.get(&b)) {
            None => true,
            Some(b) => record.h < b.h || (record.h == b.h && record.g < b.g),
        };
        if better {
            self.best = Some(node);
        }
    }

    fn push(&mut self, node: FootstepNode) {
        let r = self.graph.records[&node];
        self.seq += 1;
        self.frontier.push(FrontierEntry { f: r.g + r.h, h: r.h, g: r.g, seq: self.seq, node });
    }

    fn steps_for(&self, chain: &[FootstepNode]) -> Vec<PlannedStep> {
        chain
            .iter()
            .map(|n| PlannedStep { side: n.side, node: *n, snap: self.graph.snap(n).expect("path nodes are snapped").clone() })
            .collect()
    }

    fn publish(&self, monitor: Option<&SearchMonitor>) {
        let (Some(monitor), Some(best)) = (monitor, self.best) else { return };
        monitor.publish(BestEffortSnapshot {
            nodes_expanded: self.graph.expanded.len() as u64,
            heuristic: self.graph.records[&best].h,
            path: self.steps_for(&self.graph.extract_path(&best)),
        });
    }

    /// Runs the search to completion, timeout, expansion budget or cancellation.
    pub fn run(&mut self, monitor: Option<&SearchMonitor>) -> PlannerResult {
        let started = Instant::now();
        let p = self.params();
        let lattice = p.lattice;
        let starts = [
            pose_to_node(&self.request.start_left, Side::Left, &lattice),
            pose_to_node(&self.request.start_right, Side::Right, &lattice),
        ];
        for node in starts {
            if self.snap(&node).is_none() {
                log::info!("start foot {node:?} does not snap");
                return self.finish(PlannerStatus::InvalidStart, None, started);
            }
        }
        for node in starts {
            let h = self.heuristic(&node);
            self.graph.records.insert(node, NodeRecord { g: 0.0, h, parent: None, edge_cost: 0.0 });
            self.push(node);
            self.track(node);
        }
        self.publish(monitor);

        while let Some(entry) = self.frontier.pop() {
            let node = entry.node;
            if self.graph.expanded.contains(&node) || entry.g > self.graph.records[&node].g + 1e-12 {
                continue;
            }
            if self.is_goal(&node) {
                log::info!("goal reached after {} expansions", self.graph.expanded.len());
                return self.finish(PlannerStatus::FoundSolution, Some(node), started);
            }
            let out_of_time = started.elapsed() >= self.request.timeout
                || p.max_expansions.is_some_and(|m| self.graph.expanded.len() as u64 >= m)
                || monitor.is_some_and(|m| m.is_cancelled());
            if out_of_time {
                log::info!("search stopped after {} expansions", self.graph.expanded.len());
                return self.finish(PlannerStatus::TimedOutBestEffort, self.best, started);
            }
            self.expand(node);
            self.publish(monitor);
        }
        log::info!("frontier exhausted after {} expansions", self.graph.expanded.len());
        self.finish(PlannerStatus::NoPathExists, self.best, started)
    }

    fn expand(&mut self, node: FootstepNode) {
        let p = self.params();
        self.graph.expanded.insert(node);
        let stance = self.snap(&node).expect("frontier nodes are snapped");
        let g = self.graph.records[&node].g;
        for child in expand_node(&node, &p.lattice, &p.expansion) {
            let swing = self.snap(&child);
            let verdict = validate_edge(&stance, node.side, swing.as_deref(), &self.request.env, &p.foot, &p.checker);
            self.checks.record(verdict);
            let (Ok(()), Some(swing)) = (verdict, swing) else { continue };
            if self.graph.expanded.contains(&child) {
                continue;
            }
            let cost = edge_cost(&stance, node.side, &swing, &p.cost);
            let candidate = g + cost;
            let improves = self.graph.records.get(&child).is_none_or(|r| candidate < r.g - 1e-12);
            if improves {
                let h = match self.graph.records.get(&child) {
                    Some(r) => r.h,
                    None => self.heuristic(&child),
                };
                self.graph.records.insert(child, NodeRecord { g: candidate, h, parent: Some(node), edge_cost: cost });
                self.push(child);
                self.track(child);
            }
        }
        let best_h = self.best.map_or(f64::INFINITY, |b| self.graph.records[&b].h);
        self.history.push(best_h);
    }

    fn finish(&mut self, status: PlannerStatus, end: Option<FootstepNode>, started: Instant) -> PlannerResult {
        let chain = end.map(|e| self.graph.extract_path(&e)).unwrap_or_default();
        let path = self.steps_for(&chain);
        let nominal_width = self.params().cost.nominal_stance_width;
        let path_distance_m = path
            .windows(2)
            .map(|w| {
                let a = nominal_midstance(&w[0].snap.pose, w[0].side, nominal_width);
                let b = nominal_midstance(&w[1].snap.pose, w[1].side, nominal_width);
                let dz = w[1].snap.z() - w[0].snap.z();
                (a.position().distance(b.position()).powi(2) + dz * dz).sqrt()
            })
            .sum();
        let stats = PlanStats {
            nodes_expanded: self.graph.expanded.len() as u64,
            children_considered: self.checks.considered,
            children_rejected: self.checks.rejected.clone(),
            percent_rejected: self.checks.percent_rejected(),
            duration_s: started.elapsed().as_secs_f64(),
            path_cost: end.and_then(|e| self.graph.g_cost(&e)).unwrap_or(0.0),
            path_distance_m,
        };
        PlannerResult { status, path, stats, best_effort_history: std::mem::take(&mut self.history) }
    }
}

pub fn plan(request: &PlannerRequest) -> Result<PlannerResult, PlannerError> {
    Ok(Planner::new(request)?.run(None))
}

/// Like [`plan`], publishing best-effort snapshots to `monitor` as it goes.
pub fn plan_monitored(request: &PlannerRequest, monitor: &SearchMonitor) -> Result<PlannerResult, PlannerError> {
    Ok(Planner::new(request)?.run(Some(monitor)))
}

/// Re-checks every consecutive pair of a plan against the edge checks.
pub fn verify_path(path: &[PlannedStep], env: &Environment, params: &PlannerParams) -> Result<(), (usize, RejectionReason)> {
    for (i, w) in path.windows(2).enumerate() {
        if w[0].side == w[1].side {
            return Err((i + 1, RejectionReason::BadStanceGeometry));
        }
        let swing = snap_node(&w[1].node, env, &params.foot, &params.lattice).ok();
        let stance = snap_node(&w[0].node, env, &params.foot, &params.lattice).ok();
        let Some(stance) = stance else { return Err((i, RejectionReason::Unsnappable)) };
        validate_edge(&stance, w[0].side, swing.as_ref(), env, &params.foot, &params.checker).map_err(|r| (i + 1, r))?;
    }
    Ok(())
}
