// Generate every world kind with matching parameters, a benchmark suite
// over them and the moving-pillar scenario. `data/` was written this way.
//
//     cargo run --example generate_worlds -- [output-dir] [seed]

use std::path::Path;

use fsp::toolkit::bench::{BenchmarkSuite, SuiteEntry};
use fsp::toolkit::generators::{generate, params_for, WorldKind, WorldOptions};
use fsp::toolkit::save_params;
use fsp::toolkit::scenario::dynamic_obstacle_script;

pub fn main() {
    let mut args = std::env::args().skip(1);
    let dir = args.next().map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("fsp-examples").join("worlds"));
    let seed: u64 = args.next().map(|s| s.parse().expect("seed is an integer")).unwrap_or(0);
    run(&dir, seed);
}

pub fn run(dir: &Path, seed: u64) {
    std::fs::create_dir_all(dir).expect("output directory");
    let mut entries = Vec::new();
    for kind in WorldKind::ALL {
        let world = generate(kind, seed, &WorldOptions::default());
        let (env_file, params_file) = (format!("{kind}.json"), format!("{kind}_params.json"));
        world.env.save(dir.join(&env_file)).expect("write world");
        save_params(&params_for(kind), dir.join(&params_file)).expect("write params");
        let (s, g) = (world.start, world.goal);
        println!(
            "{:<16} {:>3} regions  start ({:.2}, {:.2})  goal ({:.2}, {:.2})",
            kind.as_str(),
            world.env.len(),
            s.x,
            s.y,
            g.x,
            g.y
        );
        entries.push(SuiteEntry {
            name: kind.to_string(),
            environment: env_file.into(),
            start: s,
            goal: g,
            params: Some(params_file.into()),
            timeout: 30.0,
        });
    }
    let suite = serde_json::to_string_pretty(&BenchmarkSuite { entries }).expect("suite serializes") + "\n";
    std::fs::write(dir.join("suite.json"), suite).expect("write suite");
    let script = serde_json::to_string_pretty(&dynamic_obstacle_script()).expect("script serializes") + "\n";
    std::fs::write(dir.join("dynamic_obstacle.json"), script).expect("write scenario");
    println!("written to {}", dir.display());
}
