use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{tol, GeometryError, Point2, Pose2};

/// A strictly convex polygon with counter-clockwise winding.
///
/// Construction normalizes the vertex list: clockwise input is reversed,
/// repeated and collinear vertices are dropped. What remains must have at
/// least three vertices and more than [`tol::MIN_AREA`] of area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct ConvexPolygon2 {
    vertices: Vec<Point2>,
}

impl TryFrom<Vec<Point2>> for ConvexPolygon2 {
    type Error = GeometryError;

    fn try_from(vertices: Vec<Point2>) -> Result<Self, Self::Error> {
        ConvexPolygon2::new(vertices)
    }
}

impl From<ConvexPolygon2> for Vec<Point2> {
    fn from(poly: ConvexPolygon2) -> Self {
        poly.vertices
    }
}

fn signed_area2(pts: &[Point2]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum()
}

impl ConvexPolygon2 {
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let mut pts: Vec<Point2> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if pts.last().map_or(true, |q: &Point2| q.distance(p) > 1e-12) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts[0].distance(pts[pts.len() - 1]) <= 1e-12 {
            pts.pop();
        }
        if pts.len() < 3 {
            return Err(GeometryError::Degenerate("fewer than three distinct vertices"));
        }
        if signed_area2(&pts) < 0.0 {
            pts[1..].reverse();
        }

        // Drop collinear vertices; anything turning clockwise beyond the slack is a hard error.
        loop {
            let n = pts.len();
            if n < 3 {
                return Err(GeometryError::Degenerate("collinear vertices"));
            }
            let mut removed = false;
            for i in 0..n {
                let prev = pts[(i + n - 1) % n];
                let cur = pts[i];
                let next = pts[(i + 1) % n];
                let base = next - prev;
                let len = base.norm();
                let offset = if len > 0.0 { (cur - prev).cross(base) / len } else { 0.0 };
                if offset.abs() <= tol::LINEAR {
                    pts.remove(i);
                    removed = true;
                    break;
                }
                if offset < 0.0 {
                    return Err(GeometryError::NonConvex);
                }
            }
            if !removed {
                break;
            }
        }

        let n = pts.len();
        let turning: f64 = (0..n)
            .map(|i| {
                let e0 = pts[(i + 1) % n] - pts[i];
                let e1 = pts[(i + 2) % n] - pts[(i + 1) % n];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (turning - TAU).abs() > 1e-6 {
            return Err(GeometryError::NonConvex);
        }
        let area = 0.5 * signed_area2(&pts);
        if area <= tol::MIN_AREA {
            return Err(GeometryError::Degenerate("area below tolerance"));
        }
        Ok(Self { vertices: pts })
    }

    /// Axis-aligned rectangle centered on the origin.
    pub fn rectangle(length: f64, width: f64) -> Result<Self, GeometryError> {
        Self::from_bounds(Point2::new(-0.5 * length, -0.5 * width), Point2::new(0.5 * length, 0.5 * width))
    }

    pub fn from_bounds(min: Point2, max: Point2) -> Result<Self, GeometryError> {
        Self::new(vec![min, Point2::new(max.x, min.y), max, Point2::new(min.x, max.y)])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(start, end)` in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        0.5 * signed_area2(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        let origin = self.vertices[0];
        let mut acc = Point2::ORIGIN;
        let mut area2 = 0.0;
        for (a, b) in self.edges() {
            let (a, b) = (a - origin, b - origin);
            let c = a.cross(b);
            area2 += c;
            acc += (a + b) * c;
        }
        origin + acc * (1.0 / (3.0 * area2))
    }

    pub fn bounds(&self) -> (Point2, Point2) {
        let mut min = self.vertices[0];
        let mut max = self.vertices[0];
        for p in &self.vertices[1..] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        (min, max)
    }

    /// Boundary-inclusive containment.
    pub fn contains(&self, p: Point2) -> bool {
        self.signed_distance_inside(p) >= -tol::LINEAR
    }

    /// Minimum over edges of the signed distance to the edge's supporting line,
    /// positive inside. Inside the polygon this is the distance to the boundary.
    pub fn signed_distance_inside(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let dir = b - a;
                dir.cross(p - a) / dir.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Edge constraints `normal · p ≤ offset` with outward unit normals.
    pub fn half_planes(&self) -> HalfPlaneSet {
        let rows = self
            .edges()
            .map(|(a, b)| {
                let dir = b - a;
                let normal = Point2::new(dir.y, -dir.x) * (1.0 / dir.norm());
                HalfPlane { normal, offset: normal.dot(a) }
            })
            .collect();
        HalfPlaneSet { rows }
    }

    /// Half-planes of the region lying at least `d` inside this polygon.
    pub fn inset_half_planes(&self, d: f64) -> HalfPlaneSet {
        self.half_planes().inset(d)
    }

    /// The polygon shrunk by `d`, or `None` if nothing is that far inside.
    pub fn inset(&self, d: f64) -> Option<ConvexPolygon2> {
        let mut pts = self.vertices.clone();
        for row in &self.inset_half_planes(d).rows {
            pts = clip_against(&pts, row);
            if pts.len() < 3 {
                return None;
            }
        }
        ConvexPolygon2::new(pts).ok()
    }

    /// Intersection of two convex polygons; `None` when the interiors are
    /// disjoint or the overlap is a sliver below [`tol::MIN_AREA`].
    pub fn clip(&self, other: &ConvexPolygon2) -> Option<ConvexPolygon2> {
        let mut pts = self.vertices.clone();
        for row in &other.half_planes().rows {
            pts = clip_against(&pts, row);
            if pts.len() < 3 {
                return None;
            }
        }
        ConvexPolygon2::new(pts).ok()
    }

    pub fn intersection_area(&self, other: &ConvexPolygon2) -> f64 {
        self.clip(other).map_or(0.0, |p| p.area())
    }

    /// Rotates by `pose.yaw` about the origin, then translates.
    pub fn transformed(&self, pose: &Pose2) -> ConvexPolygon2 {
        ConvexPolygon2 { vertices: self.vertices.iter().map(|p| pose.transform_point(*p)).collect() }
    }

    /// Maps a world polygon into `pose`'s local frame.
    pub fn inverse_transformed(&self, pose: &Pose2) -> ConvexPolygon2 {
        ConvexPolygon2 { vertices: self.vertices.iter().map(|p| pose.inverse_transform_point(*p)).collect() }
    }

    pub fn translated(&self, offset: Point2) -> ConvexPolygon2 {
        ConvexPolygon2 { vertices: self.vertices.iter().map(|p| *p + offset).collect() }
    }

    /// Reflection across the x axis, winding restored to counter-clockwise.
    pub fn mirrored_y(&self) -> ConvexPolygon2 {
        let mut vertices: Vec<Point2> = self.vertices.iter().map(|p| Point2::new(p.x, -p.y)).collect();
        vertices[1..].reverse();
        ConvexPolygon2 { vertices }
    }

    /// Minimum over `points` of their distance inside this polygon.
    pub fn min_distance_inside(&self, points: &[Point2]) -> f64 {
        points.iter().map(|p| self.signed_distance_inside(*p)).fold(f64::INFINITY, f64::min)
    }
}

fn clip_against(pts: &[Point2], row: &HalfPlane) -> Vec<Point2> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        let sp = row.slack(p);
        let sq = row.slack(q);
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp >= 0.0) != (sq >= 0.0) {
            let t = sp / (sp - sq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Constraint `normal · p ≤ offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub normal: Point2,
    pub offset: f64,
}

impl HalfPlane {
    /// `offset − normal·p`; non-negative inside.
    pub fn slack(&self, p: Point2) -> f64 {
        self.offset - self.normal.dot(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneSet {
    pub rows: Vec<HalfPlane>,
}

impl HalfPlaneSet {
    pub fn inset(&self, d: f64) -> HalfPlaneSet {
        HalfPlaneSet {
            rows: self.rows.iter().map(|r| HalfPlane { normal: r.normal, offset: r.offset - d }).collect(),
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.min_slack(p) >= -tol::LINEAR
    }

    pub fn min_slack(&self, p: Point2) -> f64 {
        self.rows.iter().map(|r| r.slack(p)).fold(f64::INFINITY, f64::min)
    }
}

/// Counter-clockwise convex hull without collinear points. Degenerate inputs
/// yield one or two points.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.distance(*b) <= 1e-12);
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - a) <= 1e-15 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        // all collinear: keep the extremes
        return vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

fn segments_intersect(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> bool {
    let d1 = (a1 - a0).cross(b0 - a0);
    let d2 = (a1 - a0).cross(b1 - a0);
    let d3 = (b1 - b0).cross(a0 - b0);
    let d4 = (b1 - b0).cross(a1 - b0);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

pub fn segment_distance(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> f64 {
    if segments_intersect(a0, a1, b0, b1) {
        return 0.0;
    }
    point_segment_distance(a0, b0, b1)
        .min(point_segment_distance(a1, b0, b1))
        .min(point_segment_distance(b0, a0, a1))
        .min(point_segment_distance(b1, a0, a1))
}

fn hull_edges(h: &[Point2]) -> Vec<(Point2, Point2)> {
    match h.len() {
        0 => Vec::new(),
        1 => vec![(h[0], h[0])],
        2 => vec![(h[0], h[1])],
        n => (0..n).map(|i| (h[i], h[(i + 1) % n])).collect(),
    }
}

fn hull_contains(h: &[Point2], p: Point2) -> bool {
    h.len() >= 3 && (0..h.len()).all(|i| (h[(i + 1) % h.len()] - h[i]).cross(p - h[i]) >= 0.0)
}

/// Euclidean distance between two convex hulls as returned by [`convex_hull`]
/// (zero when they overlap). Handles point and segment hulls.
pub fn hull_distance(a: &[Point2], b: &[Point2]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    if hull_contains(a, b[0]) || hull_contains(b, a[0]) {
        return 0.0;
    }
    let eb = hull_edges(b);
    hull_edges(a)
        .iter()
        .flat_map(|&(a0, a1)| eb.iter().map(move |&(b0, b1)| segment_distance(a0, a1, b0, b1)))
        .fold(f64::INFINITY, f64::min)
}
