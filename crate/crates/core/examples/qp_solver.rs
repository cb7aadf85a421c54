// Solve a wiggle-sized QP directly and check its KKT conditions.
//
//     cargo run --example qp_solver

use nalgebra::{Matrix3, Vector3};

use fsp::wiggler::{kkt_residuals, solve_qp3, WiggleQp};

pub fn main() {
    // minimize vx² + vy² + 0.05 θ² while pushing the sole 1.5 cm along +x
    // and keeping a corner clear of a diagonal edge
    let qp = WiggleQp {
        q: Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, 0.05)),
        a: vec![Vector3::new(-1.0, 0.0, 0.0), Vector3::new(0.7, 0.7, 0.08)],
        b: vec![-0.015, 0.004],
        lower: Vector3::new(-0.02, -0.02, -5f64.to_radians()),
        upper: Vector3::new(0.02, 0.02, 5f64.to_radians()),
    };
    let solution = solve_qp3(&qp).expect("feasible");
    let kkt = kkt_residuals(&qp, &solution);
    println!("q = {:?}", solution.q.as_slice());
    println!("objective {:.3e}, multipliers {:?}", solution.objective, solution.multipliers);
    println!(
        "KKT residuals: stationarity {:.1e}, complementarity {:.1e}, primal {:.1e}, dual {:.1e}",
        kkt.stationarity, kkt.complementarity, kkt.primal, kkt.dual.abs()
    );
}
