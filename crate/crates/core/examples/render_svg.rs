// Plan across a cinder-block field and draw the result as SVG.
//
//     cargo run --example render_svg

use std::sync::Arc;
use std::time::Duration;

use fsp::costing::feet_around;
use fsp::planner::{plan, PlannerRequest};
use fsp::toolkit::generators::{generate, params_for, WorldKind, WorldOptions};
use fsp::toolkit::{render_svg, SvgAnnotations};
use fsp::wiggler::wiggle_plan;

pub fn main() {
    let world = generate(WorldKind::CinderField, 2, &WorldOptions::default());
    let params = params_for(WorldKind::CinderField);
    let (start_left, start_right) = feet_around(&world.start, params.cost.nominal_stance_width);
    let request = PlannerRequest {
        env: Arc::new(world.env),
        start_left,
        start_right,
        goal: world.goal,
        timeout: Duration::from_secs(10),
        params,
    };
    let result = plan(&request).expect("valid request");
    let p = &request.params;
    let (steps, _) = wiggle_plan(result.steps(), &request.env, &p.foot, &p.lattice, &p.wiggle);
    let svg = render_svg(&request.env, &steps, &p.foot, &SvgAnnotations { start: Some(world.start), goal: Some(world.goal) });

    let dir = std::env::temp_dir().join("fsp-examples");
    std::fs::create_dir_all(&dir).expect("output directory");
    let path = dir.join("cinder_field.svg");
    std::fs::write(&path, &svg).expect("write svg");
    println!("{} with {} steps, drawing written to {}", result.status.as_str(), steps.len(), path.display());
}
