// Cross a 4 inch beam between two platforms. The sole is wider than the
// beam, so every step on it is a partial foothold.
//
//     cargo run --example beam_partial_footholds

use std::sync::Arc;
use std::time::Duration;

use fsp::costing::feet_around;
use fsp::planner::{plan, PlannerRequest};
use fsp::toolkit::generators::{generate, params_for, WorldKind, WorldOptions, BEAM_WIDTH};

pub fn main() {
    let world = generate(WorldKind::Beam, 0, &WorldOptions::default());
    let params = params_for(WorldKind::Beam);
    let (start_left, start_right) = feet_around(&world.start, params.cost.nominal_stance_width);
    let request = PlannerRequest {
        env: Arc::new(world.env),
        start_left,
        start_right,
        goal: world.goal,
        timeout: Duration::from_secs(5),
        params,
    };
    let result = plan(&request).expect("valid request");
    println!("beam width {BEAM_WIDTH} m, sole width {} m", request.params.foot.width());
    println!("{} in {:.3} s", result.status.as_str(), result.stats.duration_s);
    for step in result.steps() {
        let tag = if step.snap.area_fraction < 0.75 { "partial" } else { "" };
        println!(
            "{:<5} x={:5.2} y={:5.2} region {} area {:.3} {tag}",
            step.side.as_str(),
            step.snap.pose.x,
            step.snap.pose.y,
            step.snap.region_id,
            step.snap.area_fraction
        );
    }
    println!(
        "{} steps, {:.2} m, {} expanded, {:.1}% rejected",
        result.steps().len(),
        result.stats.path_distance_m,
        result.stats.nodes_expanded,
        result.stats.percent_rejected
    );
}
