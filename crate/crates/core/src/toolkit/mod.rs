//! Tooling around the planner: world generators, the anytime scenario
//! runner, the benchmark harness, SVG rendering and the plan file format.

pub mod bench;
pub mod generators;
pub mod plan_file;
pub mod scenario;
pub mod svg;

pub use generators::{generate, params_for, GeneratedWorld, WorldKind, WorldOptions};
pub use plan_file::{load_params, save_params, FileError, PlanDocument};
pub use svg::{render_svg, SvgAnnotations};
