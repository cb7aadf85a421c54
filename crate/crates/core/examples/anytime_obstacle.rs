// Replan once per step while pillars appear in the way. Writes the trace
// as JSON next to the other example outputs.
//
//     cargo run --example anytime_obstacle

use fsp::toolkit::scenario::{dynamic_obstacle_script, run_scenario};

pub fn main() {
    let script = dynamic_obstacle_script();
    let run = run_scenario(&script).expect("valid script");
    for t in &run.ticks {
        let lateral: Vec<String> = t.result.steps().iter().map(|s| format!("{:+.2}", s.snap.pose.y)).collect();
        println!(
            "t={:>4.1} s  {:<14} {:>2} steps  verified={}  y: {}",
            t.time,
            t.result.status.as_str(),
            t.result.steps().len(),
            t.verification.is_ok(),
            lateral.join(" ")
        );
    }
    println!("reached goal: {}", run.reached_goal);

    let dir = std::env::temp_dir().join("fsp-examples");
    std::fs::create_dir_all(&dir).expect("output directory");
    let path = dir.join("anytime_trace.json");
    std::fs::write(&path, serde_json::to_string_pretty(&run.trace(true)).expect("trace serializes")).expect("write trace");
    println!("trace written to {}", path.display());
}
