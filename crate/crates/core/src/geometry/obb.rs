use nalgebra::{Matrix3, Vector3};

use super::tol;

/// Oriented box; a zero half extent gives a flat rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedBox3 {
    pub center: Vector3<f64>,
    /// Columns are the box axes.
    pub axes: Matrix3<f64>,
    pub half_extents: Vector3<f64>,
}

impl OrientedBox3 {
    pub fn corners(&self) -> [Vector3<f64>; 8] {
        let mut out = [Vector3::zeros(); 8];
        for (i, c) in out.iter_mut().enumerate() {
            let sign = |bit: usize| if i & bit == 0 { -1.0 } else { 1.0 };
            let local = Vector3::new(sign(1) * self.half_extents.x, sign(2) * self.half_extents.y, sign(4) * self.half_extents.z);
            *c = self.center + self.axes * local;
        }
        out
    }

    /// World axis-aligned bounds.
    pub fn aabb(&self) -> (Vector3<f64>, Vector3<f64>) {
        let r = self.axes.abs() * self.half_extents;
        (self.center - r, self.center + r)
    }

    pub fn contains(&self, p: &Vector3<f64>) -> bool {
        let local = self.axes.transpose() * (p - self.center);
        (0..3).all(|i| local[i].abs() <= self.half_extents[i] + tol::LINEAR)
    }

    /// Separating-axis test against a planar convex polygon given by its world
    /// vertices. Touching contact counts as intersection.
    pub fn intersects_polygon(&self, polygon: &[Vector3<f64>]) -> bool {
        if polygon.is_empty() {
            return false;
        }
        let separated_along = |axis: Vector3<f64>| -> bool {
            let len = axis.norm();
            if len < 1e-12 {
                return false;
            }
            let axis = axis / len;
            let c = self.center.dot(&axis);
            let r: f64 = (0..3).map(|i| self.half_extents[i] * self.axes.column(i).dot(&axis).abs()).sum();
            let (lo, hi) = polygon
                .iter()
                .map(|v| v.dot(&axis))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p), hi.max(p)));
            lo > c + r + tol::LINEAR || hi < c - r - tol::LINEAR
        };

        let box_axes: [Vector3<f64>; 3] = [0, 1, 2].map(|i| self.axes.column(i).into_owned());
        if box_axes.iter().any(|a| separated_along(*a)) {
            return false;
        }
        if separated_along(newell_normal(polygon)) {
            return false;
        }
        let n = polygon.len();
        for i in 0..n {
            let edge = polygon[(i + 1) % n] - polygon[i];
            if box_axes.iter().any(|a| separated_along(edge.cross(a))) {
                return false;
            }
        }
        true
    }
}

fn newell_normal(polygon: &[Vector3<f64>]) -> Vector3<f64> {
    let n = polygon.len();
    let mut normal = Vector3::zeros();
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        normal += Vector3::new((a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y));
    }
    normal
}
