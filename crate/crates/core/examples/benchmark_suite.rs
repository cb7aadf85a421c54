// Write a small suite of generated worlds, run it and print the results
// table.
//
//     cargo run --example benchmark_suite

use fsp::toolkit::bench::{run_benchmark, to_csv, BenchmarkSuite, SuiteEntry};
use fsp::toolkit::generators::{generate, params_for, WorldKind, WorldOptions};
use fsp::toolkit::save_params;

pub fn main() {
    let dir = std::env::temp_dir().join("fsp-examples").join("bench");
    std::fs::create_dir_all(&dir).expect("output directory");
    let mut entries = Vec::new();
    for kind in [WorldKind::Flat, WorldKind::Beam, WorldKind::SteppingStones, WorldKind::CinderField, WorldKind::PlatformGap] {
        let world = generate(kind, 1, &WorldOptions::default());
        let env_file = format!("{kind}.json");
        let params_file = format!("{kind}_params.json");
        world.env.save(dir.join(&env_file)).expect("write world");
        save_params(&params_for(kind), dir.join(&params_file)).expect("write params");
        entries.push(SuiteEntry {
            name: kind.to_string(),
            environment: env_file.into(),
            start: world.start,
            goal: world.goal,
            params: Some(params_file.into()),
            timeout: 10.0,
        });
    }
    let suite_path = dir.join("suite.json");
    std::fs::write(&suite_path, serde_json::to_string_pretty(&BenchmarkSuite { entries }).expect("suite serializes"))
        .expect("write suite");

    let loaded = BenchmarkSuite::load(&suite_path).expect("suite loads");
    let rows = run_benchmark(&loaded).expect("benchmark runs");
    print!("{}", to_csv(&rows, false).expect("csv"));
}
