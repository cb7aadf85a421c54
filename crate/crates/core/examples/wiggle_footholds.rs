// Nudge a lattice foothold inside a small region. The region is 3 cm larger
// than the sole on each side but sits half a lattice cell off, so the
// lattice pose is only 5 mm from the edge.
//
//     cargo run --example wiggle_footholds

use fsp::geometry::{ConvexPolygon2, Point2, RigidTransform3};
use fsp::lattice::{FootstepNode, LatticeParams, Side};
use fsp::planner::PlannedStep;
use fsp::snapper::{snap_node, FootPolygon};
use fsp::wiggler::{wiggle_step, WiggleParams};
use fsp::world::{Environment, PlanarRegion};

pub fn main() {
    let piece = ConvexPolygon2::from_bounds(Point2::new(-0.115, -0.085), Point2::new(0.165, 0.085)).expect("rectangle");
    let region = PlanarRegion::new(1, RigidTransform3::identity(), vec![piece.clone()]).expect("valid region");
    let env = Environment::new(vec![region]).expect("one region");
    let foot = FootPolygon::default();
    let lattice = LatticeParams::default();
    let params = WiggleParams::default();

    let node = FootstepNode::new(0, 0, 0, Side::Left);
    let snap = snap_node(&node, &env, &foot, &lattice).expect("snaps");
    let inside = |s: &fsp::snapper::SnapResult| piece.min_distance_inside(foot.footprint(Side::Left, &s.pose).vertices());
    println!("lattice pose  {:?}, {:.4} m inside", snap.pose, inside(&snap));

    let out = wiggle_step(&PlannedStep { side: Side::Left, node, snap }, &env, &foot, &lattice, &params);
    println!("wiggled pose  {:?}, {:.4} m inside", out.snap.pose, inside(&out.snap));
    println!("offset (vx, vy, theta) = {:?}, inset reached {:?}", out.offset.as_slice(), out.inset);
}
