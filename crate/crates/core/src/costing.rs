//! Edge cost and the inflated cost-to-go heuristic.
//!
//! Distances are measured between nominal midstances: the point half a
//! nominal stance width from a foot toward where the other foot would stand.
//! Summing those displacements telescopes, so the straight-line distance to
//! the goal midstance never overestimates the distance part of the path cost.

use serde::{Deserialize, Serialize};

use crate::geometry::{wrap_angle, Point2, Pose2};
use crate::lattice::Side;
use crate::snapper::SnapResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostParams {
    pub w_distance: f64,
    pub w_height: f64,
    pub w_yaw: f64,
    pub w_area: f64,
    pub w_roll_pitch: f64,
    pub cost_per_step: f64,
    pub inflation: f64,
    pub final_turn_radius: f64,
    pub max_step_length_for_heuristic: f64,
    pub nominal_stance_width: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            w_distance: 1.0,
            w_height: 1.0,
            w_yaw: 0.5,
            w_area: 1.0,
            w_roll_pitch: 0.5,
            cost_per_step: 0.15,
            inflation: 1.5,
            final_turn_radius: 1.0,
            max_step_length_for_heuristic: 0.6,
            nominal_stance_width: 0.2,
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<(), String> {
        let weights = [
            ("w_distance", self.w_distance),
            ("w_height", self.w_height),
            ("w_yaw", self.w_yaw),
            ("w_area", self.w_area),
            ("w_roll_pitch", self.w_roll_pitch),
            ("cost_per_step", self.cost_per_step),
            ("nominal_stance_width", self.nominal_stance_width),
        ];
        for (name, value) in weights {
            if !(value >= 0.0) {
                return Err(format!("{name} must be non-negative, got {value}"));
            }
        }
        if !(self.inflation >= 1.0) {
            return Err(format!("inflation must be at least 1, got {}", self.inflation));
        }
        if !(self.final_turn_radius > 0.0) || !(self.max_step_length_for_heuristic > 0.0) {
            return Err("final_turn_radius and max_step_length_for_heuristic must be positive".into());
        }
        Ok(())
    }
}

/// Midstance implied by one foot alone, assuming the other foot stands
/// beside it at the nominal width.
pub fn nominal_midstance(foot: &Pose2, side: Side, nominal_width: f64) -> Pose2 {
    let center = foot.transform_point(Point2::new(0.0, -side.sign() * 0.5 * nominal_width));
    Pose2::new(center.x, center.y, foot.yaw)
}

/// Poses of the two feet standing nominally around a midstance.
pub fn feet_around(midstance: &Pose2, nominal_width: f64) -> (Pose2, Pose2) {
    let place = |side: Side| {
        let p = midstance.transform_point(Point2::new(0.0, side.sign() * 0.5 * nominal_width));
        Pose2::new(p.x, p.y, midstance.yaw)
    };
    (place(Side::Left), place(Side::Right))
}

/// Cost of stepping onto `child` while standing on `parent`.
pub fn edge_cost(parent: &SnapResult, parent_side: Side, child: &SnapResult, p: &CostParams) -> f64 {
    let from = nominal_midstance(&parent.pose, parent_side, p.nominal_stance_width);
    let to = nominal_midstance(&child.pose, parent_side.opposite(), p.nominal_stance_width);
    p.w_distance * from.position().distance(to.position())
        + p.w_height * (child.z() - parent.z()).abs()
        + p.w_yaw * wrap_angle(to.yaw - from.yaw).abs()
        + p.w_area * (1.0 - child.area_fraction).max(0.0)
        + p.w_roll_pitch * (child.surface_roll.abs() + child.surface_pitch.abs())
        + p.cost_per_step
}

/// Heading the robot should have at `position`: toward the goal when far,
/// blending to the goal yaw inside the final turn radius.
pub fn reference_yaw(position: Point2, goal: &Pose2, p: &CostParams) -> f64 {
    let offset = goal.position() - position;
    let distance = offset.norm();
    if distance < 1e-12 {
        return goal.yaw;
    }
    let heading = offset.y.atan2(offset.x);
    if distance >= p.final_turn_radius {
        return heading;
    }
    let blend = 1.0 - distance / p.final_turn_radius;
    wrap_angle(heading + blend * wrap_angle(goal.yaw - heading))
}

/// Inflated estimate of the cost from a midstance to the goal midstance.
pub fn heuristic_cost(midstance: &Pose2, goal: &Pose2, p: &CostParams) -> f64 {
    let distance = midstance.position().distance(goal.position());
    let yaw_error = wrap_angle(midstance.yaw - reference_yaw(midstance.position(), goal, p)).abs();
    let steps = (distance / p.max_step_length_for_heuristic - 1e-9).ceil().max(0.0);
    p.inflation * (p.w_distance * distance + p.w_yaw * yaw_error + steps * p.cost_per_step)
}

/// Heuristic for a single foot, through its nominal midstance.
pub fn foot_heuristic(foot: &Pose2, side: Side, goal: &Pose2, p: &CostParams) -> f64 {
    heuristic_cost(&nominal_midstance(foot, side, p.nominal_stance_width), goal, p)
}
