//! Dense strictly convex QP in three variables:
//! minimize qᵀQq subject to A q ≤ b and lower ≤ q ≤ upper.
//!
//! With three unknowns the optimum is pinned by at most three linearly
//! independent active constraints, so every such working set is tried and the
//! KKT point is kept. Each working set costs one 3×3 solve.

use nalgebra::{Matrix3, Vector3};

/// Primal feasibility slack, also used to decide which constraints are active.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct WiggleQp {
    pub q: Matrix3<f64>,
    pub a: Vec<Vector3<f64>>,
    pub b: Vec<f64>,
    pub lower: Vector3<f64>,
    pub upper: Vector3<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpSolution {
    pub q: Vector3<f64>,
    /// One multiplier per row of [`WiggleQp::all_rows`].
    pub multipliers: Vec<f64>,
    pub objective: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no point satisfies the constraints")]
pub struct Infeasible;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktResiduals {
    pub stationarity: f64,
    pub complementarity: f64,
    pub primal: f64,
    pub dual: f64,
}

impl KktResiduals {
    pub fn max(&self) -> f64 {
        self.stationarity.max(self.complementarity).max(self.primal).max(self.dual)
    }
}

impl WiggleQp {
    /// General rows followed by the six bound rows, all as `aᵀq ≤ b`.
    pub fn all_rows(&self) -> (Vec<Vector3<f64>>, Vec<f64>) {
        let mut rows = self.a.clone();
        let mut rhs = self.b.clone();
        for i in 0..3 {
            let mut e = Vector3::zeros();
            e[i] = 1.0;
            rows.push(e);
            rhs.push(self.upper[i]);
            rows.push(-e);
            rhs.push(-self.lower[i]);
        }
        (rows, rhs)
    }

    pub fn objective(&self, q: &Vector3<f64>) -> f64 {
        q.dot(&(self.q * q))
    }

    /// Largest constraint violation at `q`, zero when feasible.
    pub fn violation(&self, q: &Vector3<f64>) -> f64 {
        let (rows, rhs) = self.all_rows();
        rows.iter().zip(&rhs).map(|(a, b)| a.dot(q) - b).fold(0.0, f64::max)
    }
}

pub fn solve_qp3(qp: &WiggleQp) -> Result<QpSolution, Infeasible> {
    let (rows, rhs) = qp.all_rows();
    let m = rows.len();
    let scale: Vec<f64> = rows.iter().map(|a| a.norm().max(1e-300)).collect();
    let feasible = |q: &Vector3<f64>| rows.iter().zip(&rhs).zip(&scale).all(|((a, b), s)| (a.dot(q) - b) / s <= FEASIBILITY_TOL);

    if rhs.iter().all(|b| *b >= 0.0) {
        return Ok(QpSolution { q: Vector3::zeros(), multipliers: vec![0.0; m], objective: 0.0 });
    }

    let h = qp.q + qp.q.transpose();
    let Some(h_inv) = h.try_inverse() else { return Err(Infeasible) };
    let u: Vec<Vector3<f64>> = rows.iter().map(|a| h_inv * a).collect();
    let gram = |i: usize, j: usize| rows[i].dot(&u[j]);
    let mut best: Option<(bool, QpSolution)> = None;
    let mut consider = |set: &[usize]| {
        let Some((q, lambda)) = solve_equality(&u, &rhs, set, &gram) else { return };
        if !feasible(&q) {
            return;
        }
        let dual_ok = lambda.iter().all(|l| *l >= -1e-10);
        let objective = qp.objective(&q);
        let better = match &best {
            None => true,
            Some((best_dual, b)) => (dual_ok && !best_dual) || (dual_ok == *best_dual && objective < b.objective - 1e-15),
        };
        if better {
            let mut multipliers = vec![0.0; m];
            for (k, &j) in set.iter().enumerate() {
                multipliers[j] = lambda[k].max(0.0);
            }
            best = Some((dual_ok, QpSolution { q, multipliers, objective }));
        }
    };

    consider(&[]);
    for i in 0..m {
        consider(&[i]);
        for j in i + 1..m {
            consider(&[i, j]);
            for k in j + 1..m {
                consider(&[i, j, k]);
            }
        }
    }
    best.map(|(_, s)| s).ok_or(Infeasible)
}

/// Minimizer of ½qᵀHq with the rows in `set` held at equality, and the
/// multipliers of those rows; `None` when the rows are dependent. `u` holds
/// H⁻¹aⱼ and `gram(i, j)` is aᵢᵀH⁻¹aⱼ.
fn solve_equality(
    u: &[Vector3<f64>],
    rhs: &[f64],
    set: &[usize],
    gram: &dyn Fn(usize, usize) -> f64,
) -> Option<(Vector3<f64>, Vec<f64>)> {
    let k = set.len();
    if k == 0 {
        return Some((Vector3::zeros(), Vec::new()));
    }
    let mut m = Matrix3::identity();
    let mut b = Vector3::zeros();
    for r in 0..k {
        for c in 0..k {
            m[(r, c)] = gram(set[r], set[c]);
        }
        b[r] = rhs[set[r]];
    }
    let diag: f64 = (0..k).map(|i| m[(i, i)]).product();
    if m.determinant().abs() <= 1e-10 * diag {
        return None;
    }
    // q = H⁻¹Aᵀμ with Mμ = b; stationarity Hq + Aᵀλ = 0 gives λ = −μ
    let mu = m.try_inverse()? * b;
    let q = (0..k).fold(Vector3::zeros(), |acc, r| acc + u[set[r]] * mu[r]);
    Some((q, (0..k).map(|r| -mu[r]).collect()))
}

/// KKT residuals of `solution` for `qp`, using the solution's multipliers.
pub fn kkt_residuals(qp: &WiggleQp, solution: &QpSolution) -> KktResiduals {
    let (rows, rhs) = qp.all_rows();
    let q = solution.q;
    let mut gradient = (qp.q + qp.q.transpose()) * q;
    let mut complementarity: f64 = 0.0;
    let mut primal: f64 = 0.0;
    let mut dual: f64 = 0.0;
    for ((a, b), lambda) in rows.iter().zip(&rhs).zip(&solution.multipliers) {
        gradient += a * *lambda;
        let slack = b - a.dot(&q);
        complementarity = complementarity.max((lambda * slack).abs());
        primal = primal.max(-slack);
        dual = dual.max(-lambda);
    }
    KktResiduals { stationarity: gradient.amax(), complementarity, primal, dual }
}
