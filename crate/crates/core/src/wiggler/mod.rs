//! Foothold wiggling: nudge each planned foothold a small distance inside its
//! region by translating and rotating it, found with a three-variable QP.
//!
//! The decision variable q = (vx, vy, θ) is the total offset from the
//! footstep's lattice pose: rotation by θ about the sole centroid, then a
//! world-xy translation. The QP is the small-angle linearization around the
//! current iterate; re-linearizing until q stops moving makes the final pose
//! satisfy the inset constraints exactly rather than only to first order.

mod qp;

pub use qp::{kkt_residuals, solve_qp3, Infeasible, KktResiduals, QpSolution, WiggleQp, FEASIBILITY_TOL};

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexPolygon2, Point2, Pose2};
use crate::lattice::{LatticeParams, Side};
use crate::planner::PlannedStep;
use crate::snapper::{snap_to_region, FootPolygon, SnapResult};
use crate::world::{Environment, PlanarRegion};

const MAX_REFINEMENTS: usize = 30;
const CONVERGED_STEP: f64 = 1e-12;
/// Below this the halving schedule jumps straight to zero inset.
const MIN_INSET: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WiggleParams {
    pub inset_distance: f64,
    /// Limit on the translation magnitude.
    pub max_translation: f64,
    pub max_rotation: f64,
    /// Diagonal of Q for (vx, vy, θ).
    pub weights: [f64; 3],
}

impl Default for WiggleParams {
    fn default() -> Self {
        Self { inset_distance: 0.02, max_translation: 0.02, max_rotation: 5f64.to_radians(), weights: [1.0, 1.0, 0.05] }
    }
}

impl WiggleParams {
    pub fn validate(&self, lattice: &LatticeParams) -> Result<(), String> {
        if !(self.inset_distance >= 0.0 && self.inset_distance < lattice.xy_resolution) {
            return Err(format!(
                "inset_distance {} must be non-negative and below the lattice resolution {}",
                self.inset_distance, lattice.xy_resolution
            ));
        }
        if !(self.max_translation > 0.0 && self.max_rotation > 0.0) {
            return Err("wiggle bounds must be positive".into());
        }
        if self.weights.iter().any(|w| !(*w > 0.0)) {
            return Err("wiggle weights must be positive".into());
        }
        Ok(())
    }

    fn q_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_diagonal(&Vector3::from(self.weights))
    }
}

/// QP for moving `foothold` (world xy) to lie `d` inside `piece`, linearized
/// at zero offset about the foothold's centroid.
pub fn build_wiggle_qp(foothold: &ConvexPolygon2, piece: &ConvexPolygon2, d: f64, params: &WiggleParams) -> WiggleQp {
    linearized_qp(foothold.vertices(), foothold.centroid(), &Vector3::zeros(), piece, d, params)
}

/// Constraints for vertices currently at `vertices`, reached with offset
/// `q_now`, written in the total offset q.
fn linearized_qp(
    vertices: &[Point2],
    centroid: Point2,
    q_now: &Vector3<f64>,
    piece: &ConvexPolygon2,
    d: f64,
    params: &WiggleParams,
) -> WiggleQp {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let rows = piece.inset_half_planes(d).rows;
    for vertex in vertices {
        let r = *vertex - centroid;
        for row in &rows {
            // A_p J_i with J_i = [[1, 0, -r_y], [0, 1, r_x]]
            let coeffs = Vector3::new(row.normal.x, row.normal.y, row.normal.y * r.x - row.normal.x * r.y);
            b.push(row.offset - row.normal.dot(*vertex) + coeffs.dot(q_now));
            a.push(coeffs);
        }
    }
    // keep |v| within the limit through an inscribed octagon
    let t = params.max_translation;
    for k in 0..8 {
        let angle = (2 * k + 1) as f64 * PI / 8.0;
        a.push(Vector3::new(angle.cos(), angle.sin(), 0.0));
        b.push(t * (PI / 8.0).cos());
    }
    let bound = Vector3::new(t, t, params.max_rotation);
    WiggleQp { q: params.q_matrix(), a, b, lower: -bound, upper: bound }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WiggleOutcome {
    pub snap: SnapResult,
    /// Offset applied relative to the lattice pose: (vx, vy, θ).
    pub offset: Vector3<f64>,
    /// Inset distance that was achieved, `None` when the foothold was left alone.
    pub inset: Option<f64>,
}

impl WiggleOutcome {
    pub fn unchanged(snap: &SnapResult) -> Self {
        Self { snap: snap.clone(), offset: Vector3::zeros(), inset: None }
    }
}

fn projected(snap: &SnapResult, foot: &FootPolygon, side: Side) -> Vec<Point2> {
    snap.world_sole(foot, side).iter().map(|v| Point2::new(v.x, v.y)).collect()
}

struct Frame<'a> {
    original: Pose2,
    side: Side,
    region: &'a PlanarRegion,
    foot: &'a FootPolygon,
    centroid: Point2,
}

impl Frame<'_> {
    fn pose(&self, q: &Vector3<f64>) -> Pose2 {
        let about = self.original.position() - self.centroid;
        let center = self.centroid + Point2::new(q.x, q.y) + about.rotated(q.z);
        Pose2::new(center.x, center.y, self.original.yaw + q.z)
    }

    fn snap(&self, q: &Vector3<f64>) -> Option<SnapResult> {
        snap_to_region(&self.pose(q), self.side, self.region, self.foot)
    }

    /// Sequential QP for inset `d`; `None` when infeasible.
    fn solve(&self, piece: &ConvexPolygon2, d: f64, params: &WiggleParams) -> Option<(Vector3<f64>, SnapResult)> {
        let mut q = Vector3::zeros();
        let mut snap = self.snap(&q)?;
        for _ in 0..MAX_REFINEMENTS {
            let vertices = projected(&snap, self.foot, self.side);
            let centroid = self.centroid + Point2::new(q.x, q.y);
            let next = solve_qp3(&linearized_qp(&vertices, centroid, &q, piece, d, params)).ok()?.q;
            let step = (next - q).amax();
            q = next;
            snap = self.snap(&q)?;
            if step < CONVERGED_STEP {
                break;
            }
        }
        Some((q, snap))
    }
}

/// Wiggle one foothold that was planned at lattice pose `original`. The
/// result depends only on `original` and the bound region, so wiggling an
/// already wiggled foothold gives it back unchanged.
pub fn wiggle_foothold(
    original: &Pose2,
    side: Side,
    current: &SnapResult,
    env: &Environment,
    foot: &FootPolygon,
    params: &WiggleParams,
) -> WiggleOutcome {
    let Some(region) = env.region(current.region_id) else { return WiggleOutcome::unchanged(current) };
    let Some(start) = snap_to_region(original, side, region, foot) else { return WiggleOutcome::unchanged(current) };
    let Ok(outline) = ConvexPolygon2::new(projected(&start, foot, side)) else { return WiggleOutcome::unchanged(current) };
    let piece = region
        .projected_pieces()
        .iter()
        .map(|p| (outline.intersection_area(p), p))
        .filter(|(area, _)| *area > 0.0)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, p)| p);
    let Some(piece) = piece else { return WiggleOutcome::unchanged(current) };

    let frame = Frame { original: *original, side, region, foot, centroid: outline.centroid() };
    let mut d = params.inset_distance;
    loop {
        if let Some((offset, snap)) = frame.solve(piece, d, params) {
            return WiggleOutcome { snap, offset, inset: Some(d) };
        }
        if d == 0.0 {
            return WiggleOutcome::unchanged(current);
        }
        d = if d / 2.0 > MIN_INSET { d / 2.0 } else { 0.0 };
    }
}

pub fn wiggle_step(
    step: &PlannedStep,
    env: &Environment,
    foot: &FootPolygon,
    lattice: &LatticeParams,
    params: &WiggleParams,
) -> WiggleOutcome {
    wiggle_foothold(&step.node.pose(lattice), step.side, &step.snap, env, foot, params)
}

/// Wiggles every step independently. Reachability is not re-checked; the
/// shifts are bounded by the wiggle limits.
pub fn wiggle_plan(
    steps: &[PlannedStep],
    env: &Environment,
    foot: &FootPolygon,
    lattice: &LatticeParams,
    params: &WiggleParams,
) -> (Vec<PlannedStep>, Vec<WiggleOutcome>) {
    let outcomes: Vec<WiggleOutcome> = steps.iter().map(|s| wiggle_step(s, env, foot, lattice, params)).collect();
    let wiggled = steps
        .iter()
        .zip(&outcomes)
        .map(|(s, o)| PlannedStep { side: s.side, node: s.node, snap: o.snap.clone() })
        .collect();
    (wiggled, outcomes)
}
