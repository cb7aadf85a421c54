use std::path::Path;
use std::process::{Command, Output};

use fsp::planner::PlannerParams;
use fsp::toolkit::generators::flat_region;
use fsp::toolkit::{save_params, PlanDocument};
use fsp::world::Environment;

fn fsp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsp")).args(args).current_dir(dir).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write_env(dir: &Path, name: &str, env: &Environment) {
    env.save(dir.join(name)).unwrap();
}

#[test]
fn gen_writes_loadable_worlds() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["flat", "beam", "stepping-stones", "cinder-field", "narrow-gap", "platform-gap"] {
        let out = fsp(dir.path(), &["gen", "--kind", kind, "--seed", "3", "--out", "w.json", "--params-out", "p.json"]);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        Environment::load(dir.path().join("w.json")).unwrap();
        fsp::toolkit::load_params(dir.path().join("p.json")).unwrap();
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(stdout.starts_with("start ") && stdout.contains("\ngoal "));
    }
    let out = fsp(dir.path(), &["gen", "--kind", "volcano", "--out", "w.json"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn plan_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_env(d, "flat.json", &Environment::new(vec![flat_region(1, (-1.0, -1.0), (4.0, 1.0), 0.0)]).unwrap());
    let island = Environment::new(vec![flat_region(1, (-0.3, -0.3), (0.3, 0.3), 0.0), flat_region(2, (3.0, -1.0), (4.0, 1.0), 0.0)]);
    write_env(d, "island.json", &island.unwrap());
    let mut budget = PlannerParams::default();
    budget.max_expansions = Some(1);
    save_params(&budget, d.join("budget.json")).unwrap();

    let found = fsp(d, &["plan", "--env", "flat.json", "--start", "0,0,0", "--goal", "2,0,0", "--out", "p.json", "--svg", "p.svg"]);
    assert_eq!(code(&found), 0, "{}", String::from_utf8_lossy(&found.stderr));
    let doc = PlanDocument::load(d.join("p.json")).unwrap();
    assert!(!doc.steps.is_empty());
    assert!(std::fs::read_to_string(d.join("p.svg")).unwrap().contains("class=\"foot left\""));

    let args = ["plan", "--env", "flat.json", "--start", "0,0,0", "--goal", "3,0,0", "--params", "budget.json", "--out", "b.json"];
    let best_effort = fsp(d, &args);
    assert_eq!(code(&best_effort), 2);
    let doc = PlanDocument::load(d.join("b.json")).unwrap();
    assert_eq!(doc.status, fsp::planner::PlannerStatus::TimedOutBestEffort);

    let no_path = fsp(d, &["plan", "--env", "island.json", "--start", "0,0,0", "--goal", "3.5,0,0", "--out", "n.json"]);
    assert_eq!(code(&no_path), 3);

    let invalid_start = fsp(d, &["plan", "--env", "island.json", "--start", "2,0,0", "--goal", "3.5,0,0", "--out", "n.json"]);
    assert_eq!(code(&invalid_start), 4);
    assert!(String::from_utf8_lossy(&invalid_start.stderr).contains("start"));

    for bad in [
        vec!["plan", "--env", "missing.json", "--start", "0,0,0", "--goal", "1,0,0", "--out", "x.json"],
        vec!["plan", "--env", "flat.json", "--start", "0,0", "--goal", "1,0,0", "--out", "x.json"],
        vec!["plan", "--env", "flat.json", "--start", "0,0,0", "--goal", "1,0,0", "--timeout", "0", "--out", "x.json"],
        vec!["plan", "--env", "flat.json", "--start", "0,0,0", "--goal", "1,0,0", "--params", "flat.json", "--out", "x.json"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&fsp(d, &bad)), 4, "{bad:?}");
    }
}

#[test]
fn wiggle_flag_changes_partial_footholds_only() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // a lattice foothold overhangs the far platform edge by 8 mm
    let env = Environment::new(vec![flat_region(1, (-1.0, -1.0), (0.6, 1.0), 0.0), flat_region(2, (0.848, -1.0), (2.5, 1.0), 0.0)]).unwrap();
    write_env(d, "gap.json", &env);
    let base = ["plan", "--env", "gap.json", "--start", "0,0,0", "--goal", "1.8,0,0", "--redact-timing"];
    assert_eq!(code(&fsp(d, &[&base[..], &["--out", "w.json"]].concat())), 0);
    assert_eq!(code(&fsp(d, &[&base[..], &["--out", "n.json", "--no-wiggle"]].concat())), 0);
    let wiggled = PlanDocument::load(d.join("w.json")).unwrap();
    let raw = PlanDocument::load(d.join("n.json")).unwrap();
    assert_eq!(wiggled.steps.len(), raw.steps.len());
    assert_eq!(wiggled.stats, raw.stats);
    let mut moved = 0;
    for (w, r) in wiggled.steps.iter().zip(&raw.steps) {
        let shift = ((w.translation[0] - r.translation[0]).powi(2) + (w.translation[1] - r.translation[1]).powi(2)).sqrt();
        assert!(shift <= 0.02 + 1e-9);
        assert!(w.area_fraction >= r.area_fraction - 1e-9);
        if shift > 1e-9 {
            moved += 1;
            assert!(r.area_fraction < 1.0 && w.area_fraction == 1.0);
        }
    }
    assert_eq!(moved, 1);
}

#[test]
fn log_level_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_env(d, "flat.json", &Environment::new(vec![flat_region(1, (-1.0, -1.0), (3.0, 1.0), 0.0)]).unwrap());
    let args = ["plan", "--env", "flat.json", "--start", "0,0,0", "--goal", "1,0,0", "--out", "p.json"];
    let quiet = fsp(d, &args);
    assert!(quiet.stderr.is_empty());
    let chatty = Command::new(env!("CARGO_BIN_EXE_fsp")).args(args).current_dir(d).env("FSP_LOG", "info").output().unwrap();
    assert!(String::from_utf8_lossy(&chatty.stderr).contains("goal reached"));
}

#[test]
fn bench_and_anytime_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("empty.json"), r#"{"entries": []}"#).unwrap();
    assert_eq!(code(&fsp(d, &["bench", "--suite", "empty.json", "--out", "e.csv"])), 0);
    assert_eq!(
        std::fs::read_to_string(d.join("e.csv")).unwrap(),
        "Plan,Number of Steps,Plan Distance (m),Planning Duration (s),Nodes Expanded,Percent Rejected\n"
    );
    std::fs::write(d.join("bad.json"), r#"{"entries": [{"name": "x"}]}"#).unwrap();
    assert_eq!(code(&fsp(d, &["bench", "--suite", "bad.json", "--out", "e.csv"])), 4);

    let script = fsp::toolkit::scenario::dynamic_obstacle_script();
    std::fs::write(d.join("s.json"), serde_json::to_string(&script).unwrap()).unwrap();
    assert_eq!(code(&fsp(d, &["anytime", "--scenario", "s.json", "--out", "t.json"])), 0);
    let trace: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("t.json")).unwrap()).unwrap();
    assert_eq!(trace["reached_goal"], true);
    for tick in trace["ticks"].as_array().unwrap() {
        assert!(tick["verification_failure"].is_null());
        assert_eq!(tick["best_effort_monotone"], true);
    }
}
