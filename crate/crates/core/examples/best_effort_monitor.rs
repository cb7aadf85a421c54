// Watch a search from another thread and stop it early. The planner keeps
// publishing the path to the node closest to the goal.
//
//     cargo run --example best_effort_monitor

use std::sync::Arc;
use std::time::Duration;

use fsp::costing::feet_around;
use fsp::geometry::Pose2;
use fsp::planner::{plan_monitored, PlannerParams, PlannerRequest, SearchMonitor};
use fsp::toolkit::generators::flat_region;
use fsp::world::Environment;

pub fn main() {
    // the far platform is out of reach, so the search would run until timeout
    let env = Environment::new(vec![flat_region(1, (-3.0, -3.0), (1.0, 3.0), 0.0), flat_region(2, (2.0, -1.0), (3.0, 1.0), 0.0)])
        .expect("two regions");
    let params = PlannerParams::default();
    let (start_left, start_right) = feet_around(&Pose2::default(), params.cost.nominal_stance_width);
    let request = PlannerRequest {
        env: Arc::new(env),
        start_left,
        start_right,
        goal: Pose2::new(2.5, 0.0, 0.0),
        timeout: Duration::from_secs(60),
        params,
    };
    let monitor = SearchMonitor::default();
    let watcher = monitor.clone();
    let search = std::thread::spawn(move || plan_monitored(&request, &watcher).expect("valid request"));

    let mut last = 0;
    while last < 40 && !search.is_finished() {
        std::thread::sleep(Duration::from_millis(5));
        if let Some(s) = monitor.latest().filter(|s| s.nodes_expanded >= last + 10) {
            let end = s.path.last().map(|p| p.snap.pose.x).unwrap_or_default();
            println!("{:>4} expanded, best h {:.3}, best-effort path reaches x = {end:.2}", s.nodes_expanded, s.heuristic);
            last = s.nodes_expanded;
        }
    }
    monitor.cancel();
    let result = search.join().expect("search thread");
    println!("{} with {} best-effort steps", result.status.as_str(), result.steps().len());
}
