//! Planar-region world model.
//!
//! The environment is a list of planar regions. Each region is a rigid frame
//! whose local z = 0 plane carries one or more convex pieces. Concave
//! surfaces are represented as several pieces of the same region.

use std::collections::HashMap;
use std::path::Path;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::geometry::{convex_hull, hull_distance, tol, ConvexPolygon2, GeometryError, Point2, RigidTransform3};

#[derive(Debug, thiserror::Error)]
pub enum WorldError {
    #[error("environment file is not valid: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("cannot read or write environment file: {0}")]
    Io(#[from] std::io::Error),
    #[error("region {id}: {source}")]
    Geometry { id: i64, source: GeometryError },
    #[error("region {id}: has no pieces")]
    NoPieces { id: i64 },
    #[error("region {id}: pieces {a} and {b} overlap by {area:.3e} m²")]
    PieceOverlap { id: i64, a: usize, b: usize, area: f64 },
    #[error("duplicate region id {0}")]
    DuplicateId(i64),
    #[error("no region with id {0}")]
    UnknownRegion(i64),
}

/// A bounded planar surface patch posed in the world.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RegionDocument", into = "RegionDocument")]
pub struct PlanarRegion {
    id: i64,
    transform_to_world: RigidTransform3,
    pieces: Vec<ConvexPolygon2>,
    world_pieces: Vec<Vec<Vector3<f64>>>,
    projected_hulls: Vec<Vec<Point2>>,
    projected_pieces: Vec<ConvexPolygon2>,
    aabb_min: Vector3<f64>,
    aabb_max: Vector3<f64>,
}

impl PlanarRegion {
    pub fn new(id: i64, transform_to_world: RigidTransform3, pieces: Vec<ConvexPolygon2>) -> Result<Self, WorldError> {
        if pieces.is_empty() {
            return Err(WorldError::NoPieces { id });
        }
        for a in 0..pieces.len() {
            for b in a + 1..pieces.len() {
                let area = pieces[a].intersection_area(&pieces[b]);
                if area >= tol::PIECE_OVERLAP_AREA {
                    return Err(WorldError::PieceOverlap { id, a, b, area });
                }
            }
        }
        let world_pieces: Vec<Vec<Vector3<f64>>> = pieces
            .iter()
            .map(|p| p.vertices().iter().map(|v| transform_to_world.transform_planar(*v)).collect())
            .collect();
        let projected_hulls: Vec<Vec<Point2>> = world_pieces
            .iter()
            .map(|w| convex_hull(&w.iter().map(|v| Point2::new(v.x, v.y)).collect::<Vec<_>>()))
            .collect();
        let snappable = transform_to_world.z_axis().z.abs() > tol::VERTICAL_NORMAL_Z;
        let projected_pieces = if snappable {
            projected_hulls.iter().filter_map(|h| ConvexPolygon2::new(h.clone()).ok()).collect()
        } else {
            Vec::new()
        };
        let mut aabb_min = Vector3::repeat(f64::INFINITY);
        let mut aabb_max = Vector3::repeat(f64::NEG_INFINITY);
        for v in world_pieces.iter().flatten() {
            aabb_min = aabb_min.inf(v);
            aabb_max = aabb_max.sup(v);
        }
        Ok(Self { id, transform_to_world, pieces, world_pieces, projected_hulls, projected_pieces, aabb_min, aabb_max })
    }

    pub fn id(&self) -> i64 {
        self.id
    }

    pub fn transform_to_world(&self) -> &RigidTransform3 {
        &self.transform_to_world
    }

    /// Convex pieces in the region frame.
    pub fn pieces(&self) -> &[ConvexPolygon2] {
        &self.pieces
    }

    /// Piece vertices mapped into the world.
    pub fn world_pieces(&self) -> &[Vec<Vector3<f64>>] {
        &self.world_pieces
    }

    /// Vertical projections of the pieces onto the world xy plane. Empty for
    /// regions that cannot be snapped to.
    pub fn projected_pieces(&self) -> &[ConvexPolygon2] {
        &self.projected_pieces
    }

    /// Convex hulls of the projected pieces; segments for vertical regions.
    pub fn projected_hulls(&self) -> &[Vec<Point2>] {
        &self.projected_hulls
    }

    pub fn aabb(&self) -> (Vector3<f64>, Vector3<f64>) {
        (self.aabb_min, self.aabb_max)
    }

    /// Plane normal pointing up (or sideways for vertical regions).
    pub fn normal(&self) -> Vector3<f64> {
        let n = self.transform_to_world.z_axis();
        if n.z < 0.0 {
            -n
        } else {
            n
        }
    }

    pub fn is_snappable(&self) -> bool {
        self.normal().z > tol::VERTICAL_NORMAL_Z
    }

    /// Height of the region's infinite plane above `(x, y)`; `None` for
    /// near-vertical regions.
    pub fn plane_height_at(&self, x: f64, y: f64) -> Option<f64> {
        let n = self.normal();
        if n.z <= tol::VERTICAL_NORMAL_Z {
            return None;
        }
        let t = &self.transform_to_world.translation;
        Some(t.z - (n.x * (x - t.x) + n.y * (y - t.y)) / n.z)
    }

    /// Height used when judging whether the region towers over a point:
    /// the plane height for sloped regions, the top vertex for walls.
    pub fn obstacle_height_at(&self, x: f64, y: f64) -> f64 {
        self.plane_height_at(x, y).unwrap_or(self.aabb_max.z)
    }

    /// Horizontal distance from a convex hull of world xy points to the region's projection.
    pub fn projected_distance(&self, hull: &[Point2]) -> f64 {
        self.projected_hulls.iter().map(|h| hull_distance(hull, h)).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionDocument {
    id: i64,
    translation: [f64; 3],
    rotation: [f64; 9],
    pieces: Vec<Vec<Point2>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentDocument {
    regions: Vec<RegionDocument>,
}

impl TryFrom<RegionDocument> for PlanarRegion {
    type Error = WorldError;

    fn try_from(r: RegionDocument) -> Result<Self, WorldError> {
        let geometry = |source| WorldError::Geometry { id: r.id, source };
        let transform = RigidTransform3::from_row_major(&r.rotation, r.translation).map_err(geometry)?;
        let pieces = r.pieces.into_iter().map(ConvexPolygon2::new).collect::<Result<Vec<_>, _>>().map_err(geometry)?;
        PlanarRegion::new(r.id, transform, pieces)
    }
}

impl From<PlanarRegion> for RegionDocument {
    fn from(r: PlanarRegion) -> Self {
        RegionDocument {
            id: r.id,
            translation: r.transform_to_world.translation_array(),
            rotation: r.transform_to_world.rotation_row_major(),
            pieces: r.pieces.iter().map(|p| p.vertices().to_vec()).collect(),
        }
    }
}

impl TryFrom<EnvironmentDocument> for Environment {
    type Error = WorldError;

    fn try_from(doc: EnvironmentDocument) -> Result<Self, WorldError> {
        Self::new(doc.regions.into_iter().map(PlanarRegion::try_from).collect::<Result<_, _>>()?)
    }
}

impl From<Environment> for EnvironmentDocument {
    fn from(env: Environment) -> Self {
        EnvironmentDocument { regions: env.regions.into_iter().map(RegionDocument::from).collect() }
    }
}

/// Immutable collection of planar regions with per-region cached bounds.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "EnvironmentDocument", into = "EnvironmentDocument")]
pub struct Environment {
    regions: Vec<PlanarRegion>,
    index: HashMap<i64, usize>,
}

impl Environment {
    pub fn new(regions: Vec<PlanarRegion>) -> Result<Self, WorldError> {
        let mut index = HashMap::with_capacity(regions.len());
        for (i, r) in regions.iter().enumerate() {
            if index.insert(r.id, i).is_some() {
                return Err(WorldError::DuplicateId(r.id));
            }
        }
        let env = Self { regions, index };
        env.warn_on_duplicated_surfaces();
        Ok(env)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn regions(&self) -> &[PlanarRegion] {
        &self.regions
    }

    pub fn region(&self, id: i64) -> Option<&PlanarRegion> {
        self.index.get(&id).map(|&i| &self.regions[i])
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// A new environment with `region` appended.
    pub fn with_region(&self, region: PlanarRegion) -> Result<Self, WorldError> {
        let mut regions = self.regions.clone();
        regions.push(region);
        Self::new(regions)
    }

    /// A new environment without region `id`.
    pub fn without_region(&self, id: i64) -> Result<Self, WorldError> {
        if !self.index.contains_key(&id) {
            return Err(WorldError::UnknownRegion(id));
        }
        Self::new(self.regions.iter().filter(|r| r.id != id).cloned().collect())
    }

    /// Ids of regions whose projected pieces come within `radius` of `center`.
    pub fn regions_overlapping_disc(&self, center: Point2, radius: f64) -> Vec<i64> {
        self.regions_near(center, radius).map(|r| r.id).collect()
    }

    pub(crate) fn regions_near(&self, center: Point2, radius: f64) -> impl Iterator<Item = &PlanarRegion> + '_ {
        let point = [center];
        self.regions.iter().filter(move |r| {
            let (lo, hi) = r.aabb();
            if center.x + radius < lo.x || center.x - radius > hi.x || center.y + radius < lo.y || center.y - radius > hi.y {
                return false;
            }
            r.projected_hulls.iter().any(|h| hull_distance(&point, h) <= radius)
        })
    }

    /// Regions whose world bounding box intersects the given box.
    pub fn regions_in_box(&self, min: Vector3<f64>, max: Vector3<f64>) -> impl Iterator<Item = &PlanarRegion> + '_ {
        self.regions.iter().filter(move |r| {
            let (lo, hi) = r.aabb();
            lo.x <= max.x && hi.x >= min.x && lo.y <= max.y && hi.y >= min.y && lo.z <= max.z && hi.z >= min.z
        })
    }

    /// World bounding box of everything, or `None` when empty.
    pub fn bounds(&self) -> Option<(Vector3<f64>, Vector3<f64>)> {
        self.regions.iter().map(|r| r.aabb()).reduce(|(a0, a1), (b0, b1)| (a0.inf(&b0), a1.sup(&b1)))
    }

    fn warn_on_duplicated_surfaces(&self) {
        for (i, a) in self.regions.iter().enumerate() {
            for b in &self.regions[i + 1..] {
                for pa in a.projected_pieces() {
                    for pb in b.projected_pieces() {
                        let Some(overlap) = pa.clip(pb) else { continue };
                        let c = overlap.centroid();
                        let (Some(za), Some(zb)) = (a.plane_height_at(c.x, c.y), b.plane_height_at(c.x, c.y)) else {
                            continue;
                        };
                        if overlap.area() > 0.5 * pa.area().min(pb.area()) && (za - zb).abs() < 0.02 {
                            log::warn!("regions {} and {} overlap heavily at nearly the same height", a.id, b.id);
                        }
                    }
                }
            }
        }
    }

    pub fn from_json_str(document: &str) -> Result<Self, WorldError> {
        let doc: EnvironmentDocument = serde_json::from_str(document)?;
        Self::try_from(doc)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("environment serializes") + "\n"
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, WorldError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), WorldError> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rot_x, rot_y};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square_region(id: i64, cx: f64, cy: f64, z: f64, size: f64) -> PlanarRegion {
        let t = RigidTransform3::translation_only(Vector3::new(cx, cy, z));
        PlanarRegion::new(id, t, vec![ConvexPolygon2::rectangle(size, size).unwrap()]).unwrap()
    }

    #[test]
    fn loads_single_flat_region() {
        let doc = r#"{"regions":[{"id":7,"translation":[0,0,0],"rotation":[1,0,0,0,1,0,0,0,1],
            "pieces":[[[-5,-5],[5,-5],[5,5],[-5,5]]]}]}"#;
        let env = Environment::from_json_str(doc).unwrap();
        assert_eq!(env.len(), 1);
        assert_eq!(env.regions()[0].normal(), Vector3::new(0.0, 0.0, 1.0));
        assert_relative_eq!(env.regions()[0].pieces()[0].area(), 100.0);
    }

    #[test]
    fn load_errors_name_the_region() {
        let two_vertices = r#"{"regions":[{"id":3,"translation":[0,0,0],"rotation":[1,0,0,0,1,0,0,0,1],
            "pieces":[[[0,0],[1,0]]]}]}"#;
        let err = Environment::from_json_str(two_vertices).unwrap_err();
        assert!(matches!(err, WorldError::Geometry { id: 3, .. }), "{err}");

        let skewed = r#"{"regions":[{"id":4,"translation":[0,0,0],"rotation":[1,0.1,0,0,1,0,0,0,1],
            "pieces":[[[0,0],[1,0],[0,1]]]}]}"#;
        assert!(matches!(Environment::from_json_str(skewed).unwrap_err(), WorldError::Geometry { id: 4, .. }));

        let extra = r#"{"regions":[{"id":1,"translation":[0,0,0],"rotation":[1,0,0,0,1,0,0,0,1],
            "pieces":[[[0,0],[1,0],[0,1]]],"color":"red"}]}"#;
        assert!(matches!(Environment::from_json_str(extra).unwrap_err(), WorldError::Schema(_)));

        let dup = r#"{"regions":[
            {"id":1,"translation":[0,0,0],"rotation":[1,0,0,0,1,0,0,0,1],"pieces":[[[0,0],[1,0],[0,1]]]},
            {"id":1,"translation":[5,0,0],"rotation":[1,0,0,0,1,0,0,0,1],"pieces":[[[0,0],[1,0],[0,1]]]}]}"#;
        assert!(matches!(Environment::from_json_str(dup).unwrap_err(), WorldError::DuplicateId(1)));
    }

    #[test]
    fn overlapping_pieces_are_rejected() {
        let sq = ConvexPolygon2::rectangle(1.0, 1.0).unwrap();
        let err = PlanarRegion::new(1, RigidTransform3::identity(), vec![sq.clone(), sq.translated(Point2::new(0.5, 0.0))]);
        assert!(matches!(err, Err(WorldError::PieceOverlap { .. })));
        let ok = PlanarRegion::new(1, RigidTransform3::identity(), vec![sq.clone(), sq.translated(Point2::new(1.0, 0.0))]);
        assert!(ok.is_ok());
    }

    #[test]
    fn disc_query_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut regions = Vec::new();
        for id in 0..40 {
            let r = rot_y(rng.random_range(-0.5..0.5)) * rot_x(rng.random_range(-0.5..0.5));
            let t = RigidTransform3::new(
                r,
                Vector3::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), rng.random_range(0.0..1.0)),
            )
            .unwrap();
            let piece = ConvexPolygon2::rectangle(rng.random_range(0.2..1.0), rng.random_range(0.2..1.0)).unwrap();
            regions.push(PlanarRegion::new(id, t, vec![piece]).unwrap());
        }
        let env = Environment::new(regions).unwrap();
        assert!(env.regions_overlapping_disc(Point2::new(100.0, 100.0), 1.0).is_empty());
        for _ in 0..100 {
            let c = Point2::new(rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0));
            let radius = rng.random_range(0.05..1.5);
            let fast = env.regions_overlapping_disc(c, radius);
            // brute force: sample-free exact test on every piece, no bounding boxes
            let brute: Vec<i64> = env
                .regions()
                .iter()
                .filter(|r| {
                    r.world_pieces().iter().any(|w| {
                        let pts: Vec<Point2> = w.iter().map(|v| Point2::new(v.x, v.y)).collect();
                        let poly = ConvexPolygon2::new(pts.clone()).unwrap();
                        poly.contains(c)
                            || (0..pts.len()).any(|i| {
                                crate::geometry::point_segment_distance(c, pts[i], pts[(i + 1) % pts.len()]) <= radius
                            })
                    })
                })
                .map(|r| r.id())
                .collect();
            assert_eq!(fast, brute);
        }
        let hit = env.regions()[5].transform_to_world().translation;
        assert!(env.regions_overlapping_disc(Point2::new(hit.x, hit.y), 0.01).contains(&5));
    }

    #[test]
    fn plane_height_cases() {
        let flat = square_region(1, 0.0, 0.0, 0.3, 2.0);
        assert_eq!(flat.plane_height_at(12.0, -3.0), Some(0.3));

        let wall_rot = nalgebra::Matrix3::new(0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
        let wall = PlanarRegion::new(
            2,
            RigidTransform3::new(wall_rot, Vector3::zeros()).unwrap(),
            vec![ConvexPolygon2::rectangle(1.0, 1.0).unwrap()],
        )
        .unwrap();
        assert_eq!(wall.plane_height_at(0.0, 0.0), None);
        assert!(!wall.is_snappable());
        assert!(wall.projected_pieces().is_empty());

        let pitch = 10f64.to_radians();
        let t = RigidTransform3::new(rot_y(pitch), Vector3::new(1.0, 2.0, 0.5)).unwrap();
        let ramp = PlanarRegion::new(3, t, vec![ConvexPolygon2::rectangle(2.0, 2.0).unwrap()]).unwrap();
        for (x, y) in [(1.0, 2.0), (1.5, 0.0), (0.2, 7.0)] {
            // plane through (1, 2, 0.5) with normal (sin p, 0, cos p)
            let expected = 0.5 - (x - 1.0) * pitch.tan();
            assert_relative_eq!(ramp.plane_height_at(x, y).unwrap(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn plane_height_is_affine() {
        let t = RigidTransform3::new(rot_y(0.3) * rot_x(-0.2), Vector3::new(0.4, -0.1, 0.7)).unwrap();
        let r = PlanarRegion::new(1, t, vec![ConvexPolygon2::rectangle(1.0, 1.0).unwrap()]).unwrap();
        let h = |x, y| r.plane_height_at(x, y).unwrap();
        let (a, b) = ((0.3, -1.2), (2.0, 0.7));
        assert_relative_eq!(h(a.0, a.1) + h(b.0, b.1), h(a.0 + b.0, a.1 + b.1) + h(0.0, 0.0), epsilon = 1e-9);
    }

    #[test]
    fn world_round_trip_through_region_frame() {
        let t = RigidTransform3::new(rot_y(0.3) * rot_x(-0.2), Vector3::new(0.4, -0.1, 0.7)).unwrap();
        let p = Point2::new(0.2, -0.3);
        let w = t.transform_planar(p);
        let back = t.inverse_transform_point(&w);
        assert_relative_eq!(back, Vector3::new(p.x, p.y, 0.0), epsilon = 1e-9);
    }
}
