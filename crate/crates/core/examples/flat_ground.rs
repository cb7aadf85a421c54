// Plan a walk across open ground and print the footsteps.
//
//     cargo run --example flat_ground

use std::sync::Arc;
use std::time::Duration;

use fsp::costing::feet_around;
use fsp::geometry::Pose2;
use fsp::planner::{plan, PlannerParams, PlannerRequest};
use fsp::toolkit::generators::flat_region;
use fsp::world::Environment;

pub fn main() {
    let env = Environment::new(vec![flat_region(1, (-1.0, -2.0), (5.0, 2.0), 0.0)]).expect("one region");
    let params = PlannerParams::default();
    let (start_left, start_right) = feet_around(&Pose2::default(), params.cost.nominal_stance_width);
    let request = PlannerRequest {
        env: Arc::new(env),
        start_left,
        start_right,
        goal: Pose2::new(3.0, 1.0, 0.5),
        timeout: Duration::from_secs(5),
        params,
    };
    let result = plan(&request).expect("valid request");
    println!("{} after {} expansions", result.status.as_str(), result.stats.nodes_expanded);
    for (i, step) in result.steps().iter().enumerate() {
        let p = step.snap.pose;
        println!("{i:>3} {:<5} x={:6.3} y={:6.3} yaw={:6.1} deg", step.side.as_str(), p.x, p.y, p.yaw.to_degrees());
    }
    println!(
        "cost {:.3}, {:.2} m, {:.1}% of children rejected",
        result.stats.path_cost, result.stats.path_distance_m, result.stats.percent_rejected
    );
}
