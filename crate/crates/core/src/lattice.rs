//! Footstep lattice: graph vertices and the node-expansion action set.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry::{tol, Point2, Pose2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// +1 for left, −1 for right: the left foot sits on the +y side of the right one.
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "LEFT",
            Side::Right => "RIGHT",
        }
    }
}

/// A lattice vertex: integer position and yaw indices plus the foot it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FootstepNode {
    pub x: i32,
    pub y: i32,
    pub yaw: i32,
    pub side: Side,
}

impl FootstepNode {
    pub fn new(x: i32, y: i32, yaw: i32, side: Side) -> Self {
        Self { x, y, yaw, side }
    }

    pub fn pose(&self, lattice: &LatticeParams) -> Pose2 {
        node_to_pose(self, lattice)
    }

    pub fn position(&self, lattice: &LatticeParams) -> Point2 {
        Point2::new(self.x as f64 * lattice.xy_resolution, self.y as f64 * lattice.xy_resolution)
    }

    /// The same node reflected across the world x axis, on the other side.
    pub fn mirrored(&self, lattice: &LatticeParams) -> Self {
        Self { x: self.x, y: -self.y, yaw: (-self.yaw).rem_euclid(lattice.yaw_count()), side: self.side.opposite() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeParams {
    /// Grid spacing in x and y, meters.
    pub xy_resolution: f64,
    /// Yaw spacing, radians; must divide a full turn.
    pub yaw_resolution: f64,
}

impl Default for LatticeParams {
    fn default() -> Self {
        Self { xy_resolution: 0.05, yaw_resolution: PI / 18.0 }
    }
}

impl LatticeParams {
    pub fn yaw_count(&self) -> i32 {
        (TAU / self.yaw_resolution).round() as i32
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.xy_resolution > 0.0) || !(self.yaw_resolution > 0.0) {
            return Err("lattice resolutions must be positive".into());
        }
        if (self.yaw_count() as f64 * self.yaw_resolution - TAU).abs() > 1e-9 {
            return Err(format!("yaw resolution {} does not divide a full turn", self.yaw_resolution));
        }
        Ok(())
    }
}

/// Reachability box, expressed in the stance foot's frame. Widths are
/// measured toward the swing side, so the same numbers serve both feet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpansionParams {
    pub min_length: f64,
    pub max_length: f64,
    pub min_width: f64,
    pub max_width: f64,
    /// Yaw change bounds; positive turns the swing toe outward.
    pub min_yaw_delta: f64,
    pub max_yaw_delta: f64,
    pub max_reach: f64,
}

impl Default for ExpansionParams {
    fn default() -> Self {
        Self {
            min_length: -0.20,
            max_length: 0.50,
            min_width: 0.15,
            max_width: 0.40,
            min_yaw_delta: -30f64.to_radians(),
            max_yaw_delta: 30f64.to_radians(),
            max_reach: 0.60,
        }
    }
}

impl ExpansionParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.min_length > self.max_length || self.min_width > self.max_width || self.min_yaw_delta > self.max_yaw_delta {
            return Err("expansion bounds must satisfy min <= max".into());
        }
        if !(self.max_reach > 0.0) {
            return Err("expansion max_reach must be positive".into());
        }
        if self.max_yaw_delta - self.min_yaw_delta >= TAU {
            return Err("expansion yaw range must be narrower than a full turn".into());
        }
        Ok(())
    }
}

pub fn node_to_pose(node: &FootstepNode, lattice: &LatticeParams) -> Pose2 {
    Pose2::new(
        node.x as f64 * lattice.xy_resolution,
        node.y as f64 * lattice.xy_resolution,
        node.yaw as f64 * lattice.yaw_resolution,
    )
}

/// Nearest lattice vertex, rounding half away from zero on every axis.
pub fn pose_to_node(pose: &Pose2, side: Side, lattice: &LatticeParams) -> FootstepNode {
    FootstepNode {
        x: (pose.x / lattice.xy_resolution).round() as i32,
        y: (pose.y / lattice.xy_resolution).round() as i32,
        yaw: ((pose.yaw / lattice.yaw_resolution).round() as i32).rem_euclid(lattice.yaw_count()),
        side,
    }
}

/// Every lattice vertex inside the parent's reachability box, with every
/// allowed yaw, on the opposite side. Sorted by stance-frame
/// (Δx, Δy, Δyaw); deterministic and duplicate-free.
pub fn expand_node(parent: &FootstepNode, lattice: &LatticeParams, expansion: &ExpansionParams) -> Vec<FootstepNode> {
    let stance = node_to_pose(parent, lattice);
    let s = parent.side.sign();
    let res = lattice.xy_resolution;
    let eps = tol::LINEAR;

    let corners = [
        (expansion.min_length, expansion.min_width),
        (expansion.min_length, expansion.max_width),
        (expansion.max_length, expansion.min_width),
        (expansion.max_length, expansion.max_width),
    ]
    .map(|(l, w)| stance.transform_point(Point2::new(l, -s * w)));
    let min_x = corners.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = corners.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = corners.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = corners.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);

    let k_min = (expansion.min_yaw_delta / lattice.yaw_resolution - eps).ceil() as i32;
    let k_max = (expansion.max_yaw_delta / lattice.yaw_resolution + eps).floor() as i32;
    let yaw_count = lattice.yaw_count();

    let mut children: Vec<(f64, f64, f64, FootstepNode)> = Vec::new();
    for ix in ((min_x / res) - eps).floor() as i32..=((max_x / res) + eps).ceil() as i32 {
        for iy in ((min_y / res) - eps).floor() as i32..=((max_y / res) + eps).ceil() as i32 {
            let local = stance.inverse_transform_point(Point2::new(ix as f64 * res, iy as f64 * res));
            let length = local.x;
            let width = -s * local.y;
            if length < expansion.min_length - eps
                || length > expansion.max_length + eps
                || width < expansion.min_width - eps
                || width > expansion.max_width + eps
                || length.hypot(width) > expansion.max_reach + eps
            {
                continue;
            }
            for k in k_min..=k_max {
                let yaw_change = -s * k as f64 * lattice.yaw_resolution;
                let yaw = (parent.yaw - (s as i32) * k).rem_euclid(yaw_count);
                children.push((local.x, local.y, yaw_change, FootstepNode::new(ix, iy, yaw, parent.side.opposite())));
            }
        }
    }
    children.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)));
    children.into_iter().map(|c| c.3).collect()
}
