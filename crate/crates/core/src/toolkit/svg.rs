//! Top-down SVG drawings of a world and a plan.

use std::fmt::Write;

use crate::geometry::{Point2, Pose2};
use crate::lattice::Side;
use crate::planner::PlannedStep;
use crate::snapper::FootPolygon;
use crate::world::Environment;

const PX_PER_M: f64 = 100.0;
const MARGIN_M: f64 = 0.25;

#[derive(Debug, Clone, Default)]
pub struct SvgAnnotations {
    pub start: Option<Pose2>,
    pub goal: Option<Pose2>,
}

struct Frame {
    min: Point2,
    max: Point2,
}

impl Frame {
    fn px(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.min.x) * PX_PER_M, (self.max.y - p.y) * PX_PER_M)
    }

    fn points(&self, pts: &[Point2]) -> String {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.px(*p);
            if i > 0 {
                s.push(' ');
            }
            write!(s, "{x:.2},{y:.2}").unwrap();
        }
        s
    }
}

/// Blue for the lowest surface through to orange for the highest.
fn height_color(z: f64, lo: f64, hi: f64) -> String {
    let t = if hi - lo > 1e-9 { ((z - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 };
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(70.0, 240.0), lerp(120.0, 160.0), lerp(200.0, 60.0))
}

fn bounds(env: &Environment, plan: &[PlannedStep], notes: &SvgAnnotations) -> Frame {
    let mut pts: Vec<Point2> = Vec::new();
    if let Some((lo, hi)) = env.bounds() {
        pts.push(Point2::new(lo.x, lo.y));
        pts.push(Point2::new(hi.x, hi.y));
    }
    pts.extend(plan.iter().map(|s| s.snap.pose.position()));
    pts.extend(notes.start.iter().chain(&notes.goal).map(|p| p.position()));
    if pts.is_empty() {
        return Frame { min: Point2::new(-1.0, -1.0), max: Point2::new(1.0, 1.0) };
    }
    let min = pts.iter().fold(Point2::new(f64::INFINITY, f64::INFINITY), |a, p| Point2::new(a.x.min(p.x), a.y.min(p.y)));
    let max = pts.iter().fold(Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| Point2::new(a.x.max(p.x), a.y.max(p.y)));
    Frame { min: Point2::new(min.x - MARGIN_M, min.y - MARGIN_M), max: Point2::new(max.x + MARGIN_M, max.y + MARGIN_M) }
}

fn marker(out: &mut String, frame: &Frame, pose: &Pose2, class: &str, color: &str) {
    let (x, y) = frame.px(pose.position());
    let tip = Point2::new(pose.x + 0.2 * pose.yaw.cos(), pose.y + 0.2 * pose.yaw.sin());
    let (tx, ty) = frame.px(tip);
    writeln!(
        out,
        r#"  <g class="marker {class}"><circle cx="{x:.2}" cy="{y:.2}" r="8" fill="{color}"/><line x1="{x:.2}" y1="{y:.2}" x2="{tx:.2}" y2="{ty:.2}" stroke="{color}" stroke-width="3"/></g>"#
    )
    .unwrap();
}

/// Renders regions colored by height, each step's sole outline and its
/// supported part, and optional start and goal markers. Output depends only
/// on the inputs.
pub fn render_svg(env: &Environment, plan: &[PlannedStep], foot: &FootPolygon, notes: &SvgAnnotations) -> String {
    let frame = bounds(env, plan, notes);
    let width = (frame.max.x - frame.min.x) * PX_PER_M;
    let height = (frame.max.y - frame.min.y) * PX_PER_M;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    writeln!(out, r##"  <rect class="frame" x="0" y="0" width="{width:.2}" height="{height:.2}" fill="#ffffff" stroke="#333333"/>"##).unwrap();

    let (zlo, zhi) = env.bounds().map_or((0.0, 0.0), |(lo, hi)| (lo.z, hi.z));
    for region in env.regions() {
        if region.is_snappable() {
            let mut d = String::new();
            for piece in region.projected_pieces() {
                write!(d, "M{}Z", frame.points(piece.vertices())).unwrap();
            }
            let z = region.transform_to_world().translation_array()[2];
            writeln!(
                out,
                r##"  <path class="region" data-id="{}" d="{d}" fill="{}" stroke="#222222" stroke-width="1"/>"##,
                region.id(),
                height_color(z, zlo, zhi)
            )
            .unwrap();
        } else {
            let mut d = String::new();
            for hull in region.projected_hulls() {
                write!(d, "M{}Z", frame.points(hull)).unwrap();
            }
            writeln!(out, r##"  <path class="region wall" data-id="{}" d="{d}" fill="none" stroke="#000000" stroke-width="4"/>"##, region.id())
                .unwrap();
        }
    }

    for step in plan {
        let sole: Vec<Point2> = step.snap.world_sole(foot, step.side).iter().map(|v| Point2::new(v.x, v.y)).collect();
        let (class, color) = match step.side {
            Side::Left => ("foot left", "#d62728"),
            Side::Right => ("foot right", "#2ca02c"),
        };
        writeln!(out, r#"  <polygon class="{class}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, frame.points(&sole))
            .unwrap();
        if let Some(c) = &step.snap.cropped_foothold {
            let pts: Vec<Point2> = c
                .vertices()
                .iter()
                .map(|v| {
                    let w = step.snap.foothold_pose.transform_planar(*v);
                    Point2::new(w.x, w.y)
                })
                .collect();
            writeln!(out, r#"  <polygon class="foothold" points="{}" fill="{color}" fill-opacity="0.35" stroke="none"/>"#, frame.points(&pts))
                .unwrap();
        }
    }

    if let Some(start) = &notes.start {
        marker(&mut out, &frame, start, "start", "#1f77b4");
    }
    if let Some(goal) = &notes.goal {
        marker(&mut out, &frame, goal, "goal", "#9467bd");
    }
    out.push_str("</svg>\n");
    out
}
