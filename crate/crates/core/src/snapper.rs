//! Node snapping: lift a lattice node to a full 6-DoF foothold.
//!
//! The foot polygon is dropped vertically onto every region below it and the
//! candidate whose highest sole vertex ends up highest wins. The sole keeps
//! the node's yaw about world z and tilts to lie in the region plane; its
//! center stays on the vertical line through the node position.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::geometry::{convex_hull, rot_x, rot_y, rot_z, tol, ConvexPolygon2, GeometryError, Point2, Pose2, RigidTransform3};
use crate::lattice::{FootstepNode, LatticeParams, Side};
use crate::world::{Environment, PlanarRegion};

/// Sole polygon of the left foot in its own frame (origin at sole center,
/// x forward). The right sole is its mirror image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConvexPolygon2", into = "ConvexPolygon2")]
pub struct FootPolygon {
    sole: ConvexPolygon2,
    mirrored: ConvexPolygon2,
}

impl Default for FootPolygon {
    fn default() -> Self {
        Self::rectangle(0.22, 0.11).expect("default sole is valid")
    }
}

impl TryFrom<ConvexPolygon2> for FootPolygon {
    type Error = GeometryError;

    fn try_from(sole: ConvexPolygon2) -> Result<Self, Self::Error> {
        FootPolygon::new(sole)
    }
}

impl From<FootPolygon> for ConvexPolygon2 {
    fn from(foot: FootPolygon) -> Self {
        foot.sole
    }
}

impl FootPolygon {
    pub fn new(sole: ConvexPolygon2) -> Result<Self, GeometryError> {
        if !sole.contains(Point2::ORIGIN) {
            return Err(GeometryError::Degenerate("sole must contain the foot-frame origin"));
        }
        let mirrored = sole.mirrored_y();
        Ok(Self { sole, mirrored })
    }

    pub fn rectangle(length: f64, width: f64) -> Result<Self, GeometryError> {
        Self::new(ConvexPolygon2::rectangle(length, width)?)
    }

    pub fn sole(&self, side: Side) -> &ConvexPolygon2 {
        match side {
            Side::Left => &self.sole,
            Side::Right => &self.mirrored,
        }
    }

    pub fn area(&self) -> f64 {
        self.sole.area()
    }

    /// Extent along the foot-frame y axis.
    pub fn width(&self) -> f64 {
        let (min, max) = self.sole.bounds();
        max.y - min.y
    }

    pub fn length(&self) -> f64 {
        let (min, max) = self.sole.bounds();
        max.x - min.x
    }

    /// Largest distance from the foot origin to a sole vertex.
    pub fn radius(&self) -> f64 {
        self.sole.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Sole outline in world xy for a planar pose.
    pub fn footprint(&self, side: Side, pose: &Pose2) -> ConvexPolygon2 {
        self.sole(side).transformed(pose)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapResult {
    /// Full world pose of the foot frame.
    pub foothold_pose: RigidTransform3,
    pub region_id: i64,
    /// Planar pose the snap was computed for (sole center xy, yaw).
    pub pose: Pose2,
    /// Part of the sole supported by the region, foot frame. `None` when
    /// nothing is supported.
    pub cropped_foothold: Option<ConvexPolygon2>,
    pub area_fraction: f64,
    pub surface_roll: f64,
    pub surface_pitch: f64,
    /// Highest world z among the snapped sole vertices.
    pub highest_vertex_z: f64,
}

impl SnapResult {
    pub fn z(&self) -> f64 {
        self.foothold_pose.translation.z
    }

    /// World position of the sole center.
    pub fn position(&self) -> Vector3<f64> {
        self.foothold_pose.translation
    }

    /// Angle between the supporting surface normal and world z.
    pub fn incline(&self) -> f64 {
        self.foothold_pose.z_axis().z.clamp(-1.0, 1.0).acos()
    }

    /// Snapped sole vertices in the world.
    pub fn world_sole(&self, foot: &FootPolygon, side: Side) -> Vec<Vector3<f64>> {
        foot.sole(side).vertices().iter().map(|v| self.foothold_pose.transform_planar(*v)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, thiserror::Error)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SnapFailure {
    #[error("no region under the foot")]
    NoRegionUnderFoot,
    #[error("only near-vertical regions under the foot")]
    RegionNearlyVertical,
}

/// Yaw–pitch–roll factorization of a sole aligned with `normal` while
/// keeping `yaw` about world z. Returns `(roll, pitch, rotation)`.
pub fn surface_alignment(normal: &Vector3<f64>, yaw: f64) -> (f64, f64, Matrix3<f64>) {
    let n = rot_z(-yaw) * normal.normalize();
    let pitch = n.x.atan2(n.z);
    let roll = (-n.y).atan2(n.x.hypot(n.z));
    (roll, pitch, rot_z(yaw) * rot_y(pitch) * rot_x(roll))
}

/// Intersection of the snapped sole with the region's pieces, in the foot
/// frame. The fraction sums every piece; the polygon is the convex union when
/// the pieces join convexly, otherwise the largest piece.
pub fn crop_foothold(
    foothold_pose: &RigidTransform3,
    region: &PlanarRegion,
    sole: &ConvexPolygon2,
) -> (Option<ConvexPolygon2>, f64) {
    let region_to_foot = foothold_pose.inverse().compose(region.transform_to_world());
    let mut pieces: Vec<ConvexPolygon2> = Vec::new();
    for piece in region.pieces() {
        let mapped: Vec<Point2> = piece
            .vertices()
            .iter()
            .map(|v| {
                let p = region_to_foot.transform_point(&Vector3::new(v.x, v.y, 0.0));
                Point2::new(p.x, p.y)
            })
            .collect();
        let Ok(mapped) = ConvexPolygon2::new(mapped) else { continue };
        if let Some(overlap) = sole.clip(&mapped) {
            pieces.push(overlap);
        }
    }
    let total: f64 = pieces.iter().map(|p| p.area()).sum();
    let fraction = (total / sole.area()).clamp(0.0, 1.0);
    let cropped = match pieces.len() {
        0 => None,
        1 => pieces.pop(),
        _ => {
            let all: Vec<Point2> = pieces.iter().flat_map(|p| p.vertices().iter().copied()).collect();
            match ConvexPolygon2::new(convex_hull(&all)) {
                Ok(hull) if hull.area() - total <= 1e-9 => Some(hull),
                _ => pieces.into_iter().max_by(|a, b| a.area().total_cmp(&b.area())),
            }
        }
    };
    (cropped, fraction)
}

/// Snap a planar pose onto one specific region; `None` for near-vertical regions.
pub fn snap_to_region(pose: &Pose2, side: Side, region: &PlanarRegion, foot: &FootPolygon) -> Option<SnapResult> {
    let height = region.plane_height_at(pose.x, pose.y)?;
    let (roll, pitch, rotation) = surface_alignment(&region.normal(), pose.yaw);
    let foothold_pose = RigidTransform3 { rotation, translation: Vector3::new(pose.x, pose.y, height) };
    let sole = foot.sole(side);
    let highest_vertex_z = sole
        .vertices()
        .iter()
        .map(|v| foothold_pose.transform_planar(*v).z)
        .fold(f64::NEG_INFINITY, f64::max);
    let (cropped_foothold, area_fraction) = crop_foothold(&foothold_pose, region, sole);
    Some(SnapResult {
        foothold_pose,
        region_id: region.id(),
        pose: *pose,
        cropped_foothold,
        area_fraction,
        surface_roll: roll,
        surface_pitch: pitch,
        highest_vertex_z,
    })
}

/// Snap a planar foot pose onto the environment.
pub fn snap_pose(pose: &Pose2, side: Side, env: &Environment, foot: &FootPolygon) -> Result<SnapResult, SnapFailure> {
    let footprint = foot.footprint(side, pose);
    let mut best: Option<SnapResult> = None;
    let mut touched_vertical = false;
    for region in env.regions_near(pose.position(), foot.radius()) {
        if !region.is_snappable() {
            touched_vertical |= region.projected_distance(footprint.vertices()) <= tol::LINEAR;
            continue;
        }
        if !region.projected_pieces().iter().any(|p| footprint.intersection_area(p) > tol::MIN_AREA) {
            continue;
        }
        let Some(candidate) = snap_to_region(pose, side, region, foot) else { continue };
        let better = match &best {
            None => true,
            Some(b) => {
                let dz = candidate.highest_vertex_z - b.highest_vertex_z;
                dz > tol::SNAP_HEIGHT_TIE || (dz.abs() <= tol::SNAP_HEIGHT_TIE && candidate.region_id < b.region_id)
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    best.ok_or(if touched_vertical { SnapFailure::RegionNearlyVertical } else { SnapFailure::NoRegionUnderFoot })
}

pub fn snap_node(
    node: &FootstepNode,
    env: &Environment,
    foot: &FootPolygon,
    lattice: &LatticeParams,
) -> Result<SnapResult, SnapFailure> {
    snap_pose(&node.pose(lattice), node.side, env, foot)
}
