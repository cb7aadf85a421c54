//! Procedural test worlds. Every generator is a pure function of its kind,
//! seed and options.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{rot_x, rot_y, rot_z, ConvexPolygon2, Point2, Pose2, RigidTransform3};
use crate::planner::PlannerParams;
use crate::world::{Environment, PlanarRegion};

/// Width of the beam in the beam world, meters (four inches).
pub const BEAM_WIDTH: f64 = 0.1016;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorldKind {
    Flat,
    Beam,
    SteppingStones,
    CinderField,
    NarrowGap,
    PlatformGap,
}

impl WorldKind {
    pub const ALL: [WorldKind; 6] =
        [Self::Flat, Self::Beam, Self::SteppingStones, Self::CinderField, Self::NarrowGap, Self::PlatformGap];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Flat => "flat",
            Self::Beam => "beam",
            Self::SteppingStones => "stepping-stones",
            Self::CinderField => "cinder-field",
            Self::NarrowGap => "narrow-gap",
            Self::PlatformGap => "platform-gap",
        }
    }
}

impl fmt::Display for WorldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WorldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown world kind '{s}' (expected one of flat, beam, stepping-stones, cinder-field, narrow-gap, platform-gap)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorldOptions {
    /// Free width between the bollards of the narrow-gap world.
    pub bollard_spacing: f64,
    /// Horizontal gap between the platforms of the platform-gap world.
    pub platform_gap: f64,
}

impl Default for WorldOptions {
    fn default() -> Self {
        Self { bollard_spacing: 0.5, platform_gap: 0.3 }
    }
}

/// A generated environment with a suggested start and goal midstance.
#[derive(Debug, Clone)]
pub struct GeneratedWorld {
    pub kind: WorldKind,
    pub env: Environment,
    pub start: Pose2,
    pub goal: Pose2,
}

/// Horizontal rectangle `[min, max]` at height `z`.
pub fn flat_region(id: i64, min: (f64, f64), max: (f64, f64), z: f64) -> PlanarRegion {
    let piece = ConvexPolygon2::from_bounds(Point2::new(min.0, min.1), Point2::new(max.0, max.1)).expect("non-empty bounds");
    PlanarRegion::new(id, RigidTransform3::translation_only(Vector3::new(0.0, 0.0, z)), vec![piece]).expect("valid region")
}

/// Rectangle of `length × width` centered at `center`, turned by `yaw` and
/// tilted by `roll`, `pitch`.
pub fn tilted_rectangle(id: i64, center: Vector3<f64>, length: f64, width: f64, yaw: f64, roll: f64, pitch: f64) -> PlanarRegion {
    let rotation = rot_z(yaw) * rot_y(pitch) * rot_x(roll);
    let t = RigidTransform3::new(rotation, center).expect("rotation is orthonormal");
    PlanarRegion::new(id, t, vec![ConvexPolygon2::rectangle(length, width).expect("positive size")]).expect("valid region")
}

/// Vertical wall standing on the segment `from → to`, from `base` up `height`.
pub fn vertical_wall(id: i64, from: Point2, to: Point2, base: f64, height: f64) -> PlanarRegion {
    let dir = to - from;
    let len = dir.norm();
    let u = dir * (1.0 / len);
    // local x along the wall, local y up, local z the horizontal normal
    let rotation = Matrix3::new(u.x, 0.0, u.y, u.y, 0.0, -u.x, 0.0, 1.0, 0.0);
    let t = RigidTransform3::new(rotation, Vector3::new(from.x, from.y, base)).expect("rotation is orthonormal");
    let piece = ConvexPolygon2::from_bounds(Point2::new(0.0, 0.0), Point2::new(len, height)).expect("positive size");
    PlanarRegion::new(id, t, vec![piece]).expect("valid region")
}

/// Four vertical walls around the footprint `[min, max]`, ids `first..first + 4`.
pub fn vertical_box(first: i64, min: (f64, f64), max: (f64, f64), base: f64, height: f64) -> Vec<PlanarRegion> {
    let c = [Point2::new(min.0, min.1), Point2::new(max.0, min.1), Point2::new(max.0, max.1), Point2::new(min.0, max.1)];
    (0..4).map(|i| vertical_wall(first + i as i64, c[i], c[(i + 1) % 4], base, height)).collect()
}

pub fn generate(kind: WorldKind, seed: u64, options: &WorldOptions) -> GeneratedWorld {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (regions, start, goal) = match kind {
        WorldKind::Flat => flat(&mut rng),
        WorldKind::Beam => beam(),
        WorldKind::SteppingStones => stepping_stones(&mut rng),
        WorldKind::CinderField => cinder_field(&mut rng),
        WorldKind::NarrowGap => narrow_gap(options.bollard_spacing),
        WorldKind::PlatformGap => platform_gap(&mut rng, options.platform_gap),
    };
    let env = Environment::new(regions).expect("generated region ids are unique");
    GeneratedWorld { kind, env, start, goal }
}

type Layout = (Vec<PlanarRegion>, Pose2, Pose2);

fn flat(rng: &mut ChaCha8Rng) -> Layout {
    let goal = Pose2::new(rng.random_range(2.0..6.0), rng.random_range(-2.0..2.0), rng.random_range(-1.5..1.5));
    (vec![flat_region(1, (-1.0, -5.0), (9.0, 5.0), 0.0)], Pose2::default(), goal)
}

fn beam() -> Layout {
    let length = 1.8;
    // off the lattice axis by half a cell so no row of nodes is centered on it
    let center_y = 0.025;
    let half = BEAM_WIDTH / 2.0;
    let regions = vec![
        flat_region(1, (-1.0, -0.5), (0.0, 0.5), 0.0),
        flat_region(2, (0.0, center_y - half), (length, center_y + half), 0.0),
        flat_region(3, (length, -0.5), (length + 1.0, 0.5), 0.0),
    ];
    (regions, Pose2::new(-0.5, 0.0, 0.0), Pose2::new(length + 0.6, 0.0, 0.0))
}

fn stepping_stones(rng: &mut ChaCha8Rng) -> Layout {
    let mut regions = vec![flat_region(1, (-1.0, -0.8), (0.3, 0.8), 0.0)];
    let mut id = 2;
    let columns = 6;
    let pitch = 0.42;
    for c in 0..columns {
        for r in -1..=1 {
            let x = 0.55 + c as f64 * pitch + rng.random_range(-0.04..0.04);
            let y = r as f64 * 0.3 + rng.random_range(-0.04..0.04);
            let z = rng.random_range(-0.05..0.08);
            let size = rng.random_range(0.26..0.32);
            regions.push(tilted_rectangle(id, Vector3::new(x, y, z), size, size, rng.random_range(-0.3..0.3), 0.0, 0.0));
            id += 1;
        }
    }
    let far = 0.55 + columns as f64 * pitch;
    regions.push(flat_region(id, (far, -0.8), (far + 1.2, 0.8), 0.0));
    (regions, Pose2::new(-0.4, 0.0, 0.0), Pose2::new(far + 0.6, 0.0, 0.0))
}

fn cinder_field(rng: &mut ChaCha8Rng) -> Layout {
    let mut regions = vec![flat_region(1, (-1.0, -1.5), (5.0, 1.5), 0.0)];
    let mut id = 2;
    for cx in 0..6 {
        for cy in -2..=2 {
            let x = 0.8 + cx as f64 * 0.42;
            let y = cy as f64 * 0.42;
            let height = 0.1 * rng.random_range(1..=3) as f64;
            let yaw = if rng.random_bool(0.5) { 0.0 } else { std::f64::consts::FRAC_PI_2 };
            let roll = rng.random_range(-0.12..0.12);
            let pitch = rng.random_range(-0.12..0.12);
            regions.push(tilted_rectangle(id, Vector3::new(x, y, height), 0.40, 0.40, yaw + rng.random_range(-0.1..0.1), roll, pitch));
            id += 1;
        }
    }
    (regions, Pose2::new(-0.5, 0.0, 0.0), Pose2::new(4.2, rng.random_range(-0.5..0.5), 0.0))
}

fn narrow_gap(spacing: f64) -> Layout {
    // two solid bollards, thick enough that no step pair can straddle them
    let (x0, x1) = (1.35, 1.65);
    let half = spacing / 2.0;
    let mut regions = vec![flat_region(1, (-1.0, -1.5), (4.0, 1.5), 0.0)];
    regions.extend(vertical_box(2, (x0, half), (x1, 1.5), 0.0, 2.0));
    regions.extend(vertical_box(6, (x0, -1.5), (x1, -half), 0.0, 2.0));
    (regions, Pose2::new(0.0, 0.0, 0.0), Pose2::new(3.0, 0.0, 0.0))
}

fn platform_gap(rng: &mut ChaCha8Rng, gap: f64) -> Layout {
    let rise = rng.random_range(-0.15..0.15);
    let regions = vec![flat_region(1, (-1.0, -1.0), (1.0, 1.0), 0.0), flat_region(2, (1.0 + gap, -1.0), (3.0 + gap, 1.0), rise)];
    (regions, Pose2::new(0.0, 0.0, 0.0), Pose2::new(2.0 + gap, 0.0, 0.0))
}

/// Parameters suited to a world. The beam needs a narrow stance and the
/// relaxed area threshold; the narrow gap needs a greedier search to find the
/// sideways turn in reasonable time.
pub fn params_for(kind: WorldKind) -> PlannerParams {
    let mut p = PlannerParams::default();
    if kind == WorldKind::Beam {
        p.checker.min_area_fraction = 0.70;
        p.checker.min_width = 0.05;
        p.expansion.min_width = 0.05;
        p.checker.stance_clearance = ConvexPolygon2::rectangle(0.22, 0.11).expect("valid clearance");
    }
    if kind == WorldKind::NarrowGap {
        p.cost.inflation = 5.0;
    }
    p
}
