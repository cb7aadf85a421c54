use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand};

use fsp::costing::feet_around;
use fsp::geometry::Pose2;
use fsp::planner::{plan, PlannerParams, PlannerRequest, PlannerStatus};
use fsp::toolkit::bench::{run_benchmark, to_csv, BenchmarkSuite};
use fsp::toolkit::scenario::{run_scenario, ScenarioScript};
use fsp::toolkit::{generate, load_params, render_svg, PlanDocument, SvgAnnotations, WorldKind, WorldOptions};
use fsp::wiggler::wiggle_plan;
use fsp::world::Environment;

const EXIT_FOUND: u8 = 0;
const EXIT_BEST_EFFORT: u8 = 2;
const EXIT_NO_PATH: u8 = 3;
const EXIT_INPUT: u8 = 4;

/// Footstep planning over planar-region worlds.
///
/// Set FSP_LOG=error|info|debug for diagnostics on stderr.
#[derive(Parser)]
#[command(name = "fsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan footsteps from a start midstance to a goal midstance.
    Plan {
        #[arg(long)]
        env: PathBuf,
        /// Start midstance "x,y,yaw" (meters, radians).
        #[arg(long, value_parser = parse_pose)]
        start: Pose2,
        /// Goal midstance "x,y,yaw" (meters, radians).
        #[arg(long, value_parser = parse_pose)]
        goal: Pose2,
        /// Parameters file; defaults when omitted.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Seconds.
        #[arg(long, default_value_t = 5.0)]
        timeout: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write lattice footholds without wiggling them inside their regions.
        #[arg(long)]
        no_wiggle: bool,
        /// Write zero durations so outputs of identical runs compare equal.
        #[arg(long)]
        redact_timing: bool,
    },
    /// Generate an environment file.
    Gen {
        #[arg(long)]
        kind: WorldKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Free width between bollards (narrow-gap).
        #[arg(long)]
        bollard_spacing: Option<f64>,
        /// Gap between platforms (platform-gap).
        #[arg(long)]
        platform_gap: Option<f64>,
        /// Also write parameters suited to the world.
        #[arg(long)]
        params_out: Option<PathBuf>,
    },
    /// Run a benchmark suite and write the results table.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        redact_timing: bool,
    },
    /// Replay a scenario of world changes, replanning once per tick.
    Anytime {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        redact_timing: bool,
    },
}

fn parse_pose(s: &str) -> Result<Pose2, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, yaw] if parts.iter().all(|v| v.is_finite()) => Ok(Pose2::new(x, y, yaw)),
        _ => Err(format!("expected \"x,y,yaw\", got '{s}'")),
    }
}

type CliResult = Result<u8, String>;

fn write(path: &PathBuf, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_plan(
    env: PathBuf,
    start: Pose2,
    goal: Pose2,
    params: Option<PathBuf>,
    timeout: f64,
    out: PathBuf,
    svg: Option<PathBuf>,
    no_wiggle: bool,
    redact_timing: bool,
) -> CliResult {
    let env = Environment::load(&env).map_err(|e| format!("{}: {e}", env.display()))?;
    let params = match params {
        Some(p) => load_params(&p).map_err(|e| e.to_string())?,
        None => PlannerParams::default(),
    };
    if !(timeout > 0.0 && timeout.is_finite()) {
        return Err("timeout must be a positive number of seconds".into());
    }
    let (start_left, start_right) = feet_around(&start, params.cost.nominal_stance_width);
    let request =
        PlannerRequest { env: Arc::new(env), start_left, start_right, goal, timeout: Duration::from_secs_f64(timeout), params };
    let result = plan(&request).map_err(|e| e.to_string())?;
    let p = &request.params;
    let steps = if no_wiggle {
        result.steps().to_vec()
    } else {
        wiggle_plan(result.steps(), &request.env, &p.foot, &p.lattice, &p.wiggle).0
    };
    write(&out, &PlanDocument::new(result.status, &steps, &result.stats, redact_timing).to_json_string())?;
    if let Some(svg) = svg {
        let notes = SvgAnnotations { start: Some(start), goal: Some(goal) };
        write(&svg, &render_svg(&request.env, &steps, &p.foot, &notes))?;
    }
    log::info!("{} with {} steps", result.status.as_str(), steps.len());
    match result.status {
        PlannerStatus::FoundSolution => Ok(EXIT_FOUND),
        PlannerStatus::TimedOutBestEffort => Ok(EXIT_BEST_EFFORT),
        PlannerStatus::NoPathExists => Ok(EXIT_NO_PATH),
        PlannerStatus::InvalidStart => Err("start feet do not snap to any region".into()),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Plan { env, start, goal, params, timeout, out, svg, no_wiggle, redact_timing } => {
            cmd_plan(env, start, goal, params, timeout, out, svg, no_wiggle, redact_timing)
        }
        Command::Gen { kind, seed, out, bollard_spacing, platform_gap, params_out } => {
            let defaults = WorldOptions::default();
            let options = WorldOptions {
                bollard_spacing: bollard_spacing.unwrap_or(defaults.bollard_spacing),
                platform_gap: platform_gap.unwrap_or(defaults.platform_gap),
            };
            let world = generate(kind, seed, &options);
            write(&out, &world.env.to_json_string())?;
            if let Some(path) = params_out {
                fsp::toolkit::save_params(&fsp::toolkit::params_for(kind), &path).map_err(|e| e.to_string())?;
            }
            let (s, g) = (world.start, world.goal);
            println!("start {},{},{}", s.x, s.y, s.yaw);
            println!("goal {},{},{}", g.x, g.y, g.yaw);
            Ok(EXIT_FOUND)
        }
        Command::Bench { suite, out, redact_timing } => {
            let entries = BenchmarkSuite::load(&suite).map_err(|e| e.to_string())?;
            let rows = run_benchmark(&entries).map_err(|e| e.to_string())?;
            write(&out, &to_csv(&rows, redact_timing).map_err(|e| e.to_string())?)?;
            Ok(EXIT_FOUND)
        }
        Command::Anytime { scenario, out, redact_timing } => {
            let script = ScenarioScript::load(&scenario).map_err(|e| e.to_string())?;
            let run = run_scenario(&script).map_err(|e| e.to_string())?;
            let trace = serde_json::to_string_pretty(&run.trace(redact_timing)).expect("trace serializes") + "\n";
            write(&out, &trace)?;
            Ok(if run.reached_goal { EXIT_FOUND } else { EXIT_BEST_EFFORT })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FSP_LOG", "error")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_FOUND };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
