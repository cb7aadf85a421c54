// Walk between two bollards. With 0.5 m between them the 0.6 m wide body
// only fits sideways; with 0.35 m nothing fits and the search returns its
// best effort.
//
//     cargo run --example narrow_gap

use std::sync::Arc;
use std::time::Duration;

use fsp::costing::feet_around;
use fsp::planner::{plan, PlannerRequest};
use fsp::toolkit::generators::{generate, params_for, WorldKind, WorldOptions};

pub fn main() {
    for (spacing, budget) in [(0.5, None), (0.35, Some(3000))] {
        let world = generate(WorldKind::NarrowGap, 0, &WorldOptions { bollard_spacing: spacing, ..WorldOptions::default() });
        let mut params = params_for(WorldKind::NarrowGap);
        params.max_expansions = budget;
        let (start_left, start_right) = feet_around(&world.start, params.cost.nominal_stance_width);
        let request = PlannerRequest {
            env: Arc::new(world.env),
            start_left,
            start_right,
            goal: world.goal,
            timeout: Duration::from_secs(30),
            params,
        };
        let result = plan(&request).expect("valid request");
        println!("spacing {spacing} m: {} after {} expansions", result.status.as_str(), result.stats.nodes_expanded);
        for w in result.path.windows(2) {
            let (mid, _) = fsp::validity::midstance(&w[0].snap, &w[1].snap);
            println!("  midstance x={:5.2} y={:5.2} yaw={:5.0} deg", mid.x, mid.y, mid.yaw.to_degrees());
        }
    }
}
