//! Edge checks: decide whether stepping from a stance foot to a candidate
//! swing foothold is feasible, and report the first reason it is not.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::geometry::{rot_z, tol, ConvexPolygon2, OrientedBox3, Point2, Pose2};
use crate::lattice::Side;
use crate::snapper::{FootPolygon, SnapResult};
use crate::world::Environment;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BodyBox {
    /// Lateral extent.
    pub width: f64,
    /// Extent along the heading.
    pub depth: f64,
    /// Heights above the midstance.
    pub bottom: f64,
    pub top: f64,
}

impl Default for BodyBox {
    fn default() -> Self {
        Self { width: 0.6, depth: 0.4, bottom: 0.3, top: 1.5 }
    }
}

/// Limits for the edge checks. Stance bounds are expressed in the stance
/// foot frame with the lateral axis pointing toward the swing side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckerParams {
    pub max_incline: f64,
    pub min_area_fraction: f64,
    /// Keep-out polygon around a left stance foot; mirrored for a right one.
    pub stance_clearance: ConvexPolygon2,
    pub max_forward: f64,
    pub max_backward: f64,
    pub min_width: f64,
    pub max_width: f64,
    pub max_reach: f64,
    pub max_step_up: f64,
    pub max_step_down: f64,
    pub tall_step_height: f64,
    pub tall_step_max_length: f64,
    pub tall_step_max_width: f64,
    pub cliff_height: f64,
    pub cliff_clearance: f64,
    pub step_over_height: f64,
    pub body_box: BodyBox,
}

impl Default for CheckerParams {
    fn default() -> Self {
        Self {
            max_incline: 40f64.to_radians(),
            min_area_fraction: 0.75,
            stance_clearance: ConvexPolygon2::rectangle(0.30, 0.16).expect("valid clearance"),
            max_forward: 0.5,
            max_backward: 0.2,
            min_width: 0.15,
            max_width: 0.40,
            max_reach: 0.55,
            max_step_up: 0.35,
            max_step_down: 0.35,
            tall_step_height: 0.2,
            tall_step_max_length: 0.3,
            tall_step_max_width: 0.3,
            cliff_height: 0.1,
            cliff_clearance: 0.05,
            step_over_height: 0.35,
            body_box: BodyBox::default(),
        }
    }
}

impl CheckerParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.min_area_fraction > 0.0 && self.min_area_fraction <= 1.0) {
            return Err(format!("min_area_fraction must be in (0, 1], got {}", self.min_area_fraction));
        }
        let positive = [
            ("max_incline", self.max_incline),
            ("max_reach", self.max_reach),
            ("tall_step_height", self.tall_step_height),
            ("cliff_height", self.cliff_height),
            ("step_over_height", self.step_over_height),
            ("body_box.width", self.body_box.width),
            ("body_box.depth", self.body_box.depth),
        ];
        for (name, value) in positive {
            if !(value > 0.0) {
                return Err(format!("{name} must be positive, got {value}"));
            }
        }
        let non_negative = [
            ("max_forward", self.max_forward),
            ("max_backward", self.max_backward),
            ("max_width", self.max_width),
            ("max_step_up", self.max_step_up),
            ("max_step_down", self.max_step_down),
            ("tall_step_max_length", self.tall_step_max_length),
            ("tall_step_max_width", self.tall_step_max_width),
            ("cliff_clearance", self.cliff_clearance),
        ];
        for (name, value) in non_negative {
            if !(value >= 0.0) {
                return Err(format!("{name} must be non-negative, got {value}"));
            }
        }
        if self.min_width > self.max_width {
            return Err("min_width exceeds max_width".into());
        }
        if !(self.body_box.top > self.body_box.bottom) {
            return Err("body_box.top must exceed body_box.bottom".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, thiserror::Error)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectionReason {
    #[error("UNSNAPPABLE")]
    Unsnappable,
    #[error("TOO_STEEP")]
    TooSteep,
    #[error("INSUFFICIENT_AREA")]
    InsufficientArea,
    #[error("BAD_STANCE_GEOMETRY")]
    BadStanceGeometry,
    #[error("STEP_TOO_HIGH_OR_LOW")]
    StepTooHighOrLow,
    #[error("TALL_STEP_TOO_LONG")]
    TallStepTooLong,
    #[error("CLIFF_TOO_CLOSE")]
    CliffTooClose,
    #[error("STEP_OVER_OBSTACLE")]
    StepOverObstacle,
    #[error("BODY_BOX_COLLISION")]
    BodyBoxCollision,
    #[error("SELF_OVERLAP")]
    SelfOverlap,
}

impl RejectionReason {
    pub const ALL: [RejectionReason; 10] = [
        Self::Unsnappable,
        Self::TooSteep,
        Self::InsufficientArea,
        Self::BadStanceGeometry,
        Self::StepTooHighOrLow,
        Self::TallStepTooLong,
        Self::CliffTooClose,
        Self::StepOverObstacle,
        Self::BodyBoxCollision,
        Self::SelfOverlap,
    ];
}

/// Per-search tally of checked children.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    pub considered: u64,
    pub rejected: BTreeMap<RejectionReason, u64>,
}

impl CheckStats {
    pub fn record(&mut self, verdict: Result<(), RejectionReason>) {
        self.considered += 1;
        if let Err(reason) = verdict {
            *self.rejected.entry(reason).or_default() += 1;
        }
    }

    pub fn total_rejected(&self) -> u64 {
        self.rejected.values().sum()
    }

    pub fn percent_rejected(&self) -> f64 {
        if self.considered == 0 {
            0.0
        } else {
            100.0 * self.total_rejected() as f64 / self.considered as f64
        }
    }

    pub fn merge(&mut self, other: &CheckStats) {
        self.considered += other.considered;
        for (reason, count) in &other.rejected {
            *self.rejected.entry(*reason).or_default() += count;
        }
    }
}

/// Midstance of two snapped feet: mean position, circular-mean yaw.
pub fn midstance(a: &SnapResult, b: &SnapResult) -> (Pose2, f64) {
    (a.pose.midpoint(&b.pose), 0.5 * (a.z() + b.z()))
}

pub fn check_incline(snap: &SnapResult, p: &CheckerParams) -> Result<(), RejectionReason> {
    if snap.incline() <= p.max_incline + 1e-12 {
        Ok(())
    } else {
        Err(RejectionReason::TooSteep)
    }
}

pub fn check_area(snap: &SnapResult, p: &CheckerParams) -> Result<(), RejectionReason> {
    if snap.area_fraction >= p.min_area_fraction - 1e-12 {
        Ok(())
    } else {
        Err(RejectionReason::InsufficientArea)
    }
}

/// Where the swing foot lands relative to the stance foot: forward distance,
/// lateral distance toward the swing side, and height change.
pub fn stance_offset(stance: &SnapResult, stance_side: Side, swing: &SnapResult) -> (f64, f64, f64) {
    let local = stance.pose.inverse_transform_point(swing.pose.position());
    (local.x, -stance_side.sign() * local.y, swing.z() - stance.z())
}

pub fn check_step_geometry(
    stance: &SnapResult,
    stance_side: Side,
    swing: &SnapResult,
    foot: &FootPolygon,
    p: &CheckerParams,
) -> Result<(), RejectionReason> {
    let eps = tol::LINEAR;
    let clearance = match stance_side {
        Side::Left => p.stance_clearance.clone(),
        Side::Right => p.stance_clearance.mirrored_y(),
    };
    let relative = stance.pose.relative(&swing.pose);
    let swing_in_stance = foot.footprint(stance_side.opposite(), &relative);
    if clearance.intersection_area(&swing_in_stance) > tol::MIN_AREA {
        return Err(RejectionReason::SelfOverlap);
    }

    let (forward, lateral, dz) = stance_offset(stance, stance_side, swing);
    if forward > p.max_forward + eps
        || forward < -p.max_backward - eps
        || lateral < p.min_width - eps
        || lateral > p.max_width + eps
        || forward.hypot(lateral) > p.max_reach + eps
    {
        return Err(RejectionReason::BadStanceGeometry);
    }
    if dz > p.max_step_up + eps || -dz > p.max_step_down + eps {
        return Err(RejectionReason::StepTooHighOrLow);
    }
    if dz.abs() >= p.tall_step_height - eps
        && (forward.abs() > p.tall_step_max_length + eps || lateral > p.tall_step_max_width + eps)
    {
        return Err(RejectionReason::TallStepTooLong);
    }
    Ok(())
}

pub fn check_cliff_clearance(
    swing: &SnapResult,
    swing_side: Side,
    env: &Environment,
    foot: &FootPolygon,
    p: &CheckerParams,
) -> Result<(), RejectionReason> {
    let center = swing.pose.position();
    let outline: Vec<Point2> =
        swing.world_sole(foot, swing_side).iter().map(|v| Point2::new(v.x, v.y)).collect();
    for region in env.regions_near(center, foot.radius() + p.cliff_clearance) {
        if region.id() == swing.region_id {
            continue;
        }
        if region.obstacle_height_at(center.x, center.y) - swing.z() < p.cliff_height {
            continue;
        }
        if region.projected_distance(&outline) < p.cliff_clearance - tol::LINEAR {
            return Err(RejectionReason::CliffTooClose);
        }
    }
    Ok(())
}

/// The flat rectangle between the foot centers, raised above the higher foot.
pub fn step_over_rectangle(stance: &SnapResult, swing: &SnapResult, foot: &FootPolygon, p: &CheckerParams) -> OrientedBox3 {
    let a = stance.pose.position();
    let b = swing.pose.position();
    let span = b - a;
    let heading = if span.norm() > tol::LINEAR { span.y.atan2(span.x) } else { stance.pose.yaw };
    let mid = (a + b) * 0.5;
    OrientedBox3 {
        center: Vector3::new(mid.x, mid.y, stance.z().max(swing.z()) + p.step_over_height),
        axes: rot_z(heading),
        half_extents: Vector3::new(0.5 * span.norm(), 0.5 * foot.width(), 0.0),
    }
}

pub fn check_step_over_obstacle(
    stance: &SnapResult,
    swing: &SnapResult,
    env: &Environment,
    foot: &FootPolygon,
    p: &CheckerParams,
) -> Result<(), RejectionReason> {
    let rect = step_over_rectangle(stance, swing, foot, p);
    if collides(&rect, env) {
        Err(RejectionReason::StepOverObstacle)
    } else {
        Ok(())
    }
}

pub fn body_box(stance: &SnapResult, swing: &SnapResult, p: &CheckerParams) -> OrientedBox3 {
    let (mid, z) = midstance(stance, swing);
    let b = &p.body_box;
    OrientedBox3 {
        center: Vector3::new(mid.x, mid.y, z + 0.5 * (b.bottom + b.top)),
        axes: rot_z(mid.yaw),
        half_extents: Vector3::new(0.5 * b.depth, 0.5 * b.width, 0.5 * (b.top - b.bottom)),
    }
}

pub fn check_body_box(
    stance: &SnapResult,
    swing: &SnapResult,
    env: &Environment,
    p: &CheckerParams,
) -> Result<(), RejectionReason> {
    if collides(&body_box(stance, swing, p), env) {
        Err(RejectionReason::BodyBoxCollision)
    } else {
        Ok(())
    }
}

fn collides(shape: &OrientedBox3, env: &Environment) -> bool {
    // pad like the separating-axis test so touching still counts
    let pad = Vector3::repeat(tol::LINEAR);
    let (lo, hi) = shape.aabb();
    env.regions_in_box(lo - pad, hi + pad).any(|r| r.world_pieces().iter().any(|piece| shape.intersects_polygon(piece)))
}

/// Runs every check in order and returns the first failure. `swing` is `None`
/// when the child could not be snapped.
pub fn validate_edge(
    stance: &SnapResult,
    stance_side: Side,
    swing: Option<&SnapResult>,
    env: &Environment,
    foot: &FootPolygon,
    p: &CheckerParams,
) -> Result<(), RejectionReason> {
    let swing = swing.ok_or(RejectionReason::Unsnappable)?;
    check_incline(swing, p)?;
    check_area(swing, p)?;
    check_step_geometry(stance, stance_side, swing, foot, p)?;
    check_cliff_clearance(swing, stance_side.opposite(), env, foot, p)?;
    check_step_over_obstacle(stance, swing, env, foot, p)?;
    check_body_box(stance, swing, env, p)
}
