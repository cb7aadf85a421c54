//! Planar convex geometry and rigid transforms shared by every other module.
//!
//! Everything here is pure. Boundary points count as inside, using the slack
//! in [`tol::LINEAR`].

mod obb;
mod point;
mod polygon;
mod transform;

pub use obb::OrientedBox3;
pub use point::{wrap_angle, Point2, Pose2};
pub use polygon::{
    convex_hull, hull_distance, point_segment_distance, segment_distance, ConvexPolygon2, HalfPlane,
    HalfPlaneSet,
};
pub use transform::{rot_x, rot_y, rot_z, RigidTransform3};

/// Numerical tolerances used across the crate.
pub mod tol {
    /// Linear slack for containment and convexity tests, meters.
    pub const LINEAR: f64 = 1e-9;
    /// Polygons (and clip results) below this area are treated as empty, m².
    pub const MIN_AREA: f64 = 1e-10;
    /// Allowed deviation of a rotation matrix from orthonormality.
    pub const ORTHONORMAL: f64 = 1e-9;
    /// Regions whose world normal has |z| at or below this are not snappable.
    pub const VERTICAL_NORMAL_Z: f64 = 1e-6;
    /// Two snap candidates whose highest vertices are closer than this tie.
    pub const SNAP_HEIGHT_TIE: f64 = 1e-6;
    /// Maximum interior overlap between pieces of one region, m².
    pub const PIECE_OVERLAP_AREA: f64 = 1e-8;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("degenerate polygon: {0}")]
    Degenerate(&'static str),
    #[error("polygon is not convex")]
    NonConvex,
    #[error("rotation matrix is not orthonormal (det {det:.3e}, deviation {deviation:.3e})")]
    NotOrthonormal { det: f64, deviation: f64 },
}
