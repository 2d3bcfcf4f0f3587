//! The Luz–Schrijver quadratic-program characterization of θ.

use serde::{Deserialize, Serialize};

use super::{theta2_cone, theta4_cone};
use crate::cones::{AdjacencyCone, ThetaVariant};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{diag_scale, lambda_min, SymMatrix};
use crate::solvers::{qp_kkt_residual, solve_qp_nonneg, SolveStatus};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LuzReport {
    /// max 2⟨w,x⟩ − xᵀQx over x ≥ 0; +∞ when unbounded.
    pub value: f64,
    pub x: Vec<f64>,
    pub kkt_residual: f64,
}

/// υ(C; w) with Q = D_√w(H_C + I) and H_C = C/(−λ_min(C)).
pub fn luz_upsilon_c(c: &SymMatrix, w: &[f64], tol: f64) -> Result<LuzReport> {
    let n = c.order();
    if w.len() != n {
        return Err(Error::Dimension(format!("{} weights for order {}", w.len(), n)));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Precondition("weights must be finite and nonnegative".into()));
    }
    if c.diag().iter().any(|v| v.abs() > 1e-12 * (1.0 + c.max_abs())) {
        return Err(Error::Precondition("C must have a zero diagonal".into()));
    }
    let h = if c.max_abs() == 0.0 { SymMatrix::zeros(n) } else { c.scale(-1.0 / lambda_min(c)?) };
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let q = diag_scale(&sw, &h.add(&SymMatrix::identity(n)));

    let keep: Vec<usize> = (0..n).filter(|&i| w[i] > 0.0).collect();
    let mut x = vec![0.0; n];
    if keep.is_empty() {
        return Ok(LuzReport { value: 0.0, x, kkt_residual: 0.0 });
    }
    let qk = q.principal(&keep);
    let wk: Vec<f64> = keep.iter().map(|&i| w[i]).collect();
    let rep = solve_qp_nonneg(&qk, &wk, tol);
    match rep.status {
        SolveStatus::Unbounded => return Ok(LuzReport { value: f64::INFINITY, x, kkt_residual: f64::INFINITY }),
        SolveStatus::Optimal | SolveStatus::MaxIter => {}
        status => return Err(Error::Solver { status, gap: rep.kkt_residual }),
    }
    for (k, &i) in keep.iter().enumerate() {
        x[i] = rep.x[k];
    }
    Ok(LuzReport { value: rep.value, kkt_residual: qp_kkt_residual(&q, w, &x), x })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LuzThetaReport {
    pub value: f64,
    /// The matrix C* handed to the quadratic program.
    pub c: SymMatrix,
    pub x: Vec<f64>,
    pub kkt_residual: f64,
    /// θ of the variant from the lifted SDP, for comparison.
    pub target: f64,
    /// True when C = 0 gave the smaller bound.
    pub used_zero: bool,
}

/// θ(A; w) as inf υ(C; w) over C ∈ A^Δ with zero diagonal, evaluated at C = −Ȳ
/// from the θ₂ optimum. C = 0 is always feasible and is taken when it is smaller.
pub fn luz_theta_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<LuzThetaReport> {
    let sdp_tol = (tol * 1e-2).max(1e-12);
    let t2 = theta2_cone(a, w, sdp_tol)?;
    let (target, _) = theta4_cone(a, w, sdp_tol)?;
    let dual = a.delta_dual()?;
    let mut c = dual.project(&t2.y.scale(-1.0));
    for i in 0..c.order() {
        c.set(i, i, 0.0);
    }
    if c.max_abs() <= 1e-7 * (1.0 + target) {
        c = SymMatrix::zeros(a.n());
    }
    let main = luz_upsilon_c(&c, w, tol)?;
    let zero = luz_upsilon_c(&SymMatrix::zeros(a.n()), w, tol)?;
    let used_zero = zero.value < main.value;
    let (best, c) = if used_zero { (zero, SymMatrix::zeros(a.n())) } else { (main, c) };
    Ok(LuzThetaReport { value: best.value, c, x: best.x, kkt_residual: best.kkt_residual, target, used_zero })
}

pub fn luz_theta(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<LuzThetaReport> {
    luz_theta_cone(&AdjacencyCone::for_variant(g, variant), w, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn upsilon_examples() {
        let r = luz_upsilon_c(&SymMatrix::zeros(4), &[1.0; 4], 1e-10).unwrap();
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-8);
        let k2 = Graph::complete(2).adjacency_matrix();
        let r = luz_upsilon_c(&k2, &[1.0; 2], 1e-10).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-8);
        assert!(r.kkt_residual <= 1e-8);
        let r = luz_upsilon_c(&Graph::cycle(5).adjacency_matrix(), &[0.0; 5], 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(luz_upsilon_c(&SymMatrix::identity(2), &[1.0; 2], 1e-10).is_err());
    }

    #[test]
    fn luz_matches_theta() {
        let r = luz_theta(&Graph::cycle(5), ThetaVariant::Th, &[1.0; 5], 1e-8).unwrap();
        assert_abs_diff_eq!(r.value, 5f64.sqrt(), epsilon = 1e-5);
        assert!(r.kkt_residual <= 1e-6);
        let k = luz_theta(&Graph::complete(4), ThetaVariant::Th, &[1.0; 4], 1e-8).unwrap();
        assert_abs_diff_eq!(k.value, 1.0, epsilon = 1e-5);
        let e = luz_theta(&Graph::empty(4), ThetaVariant::Th, &[1.0; 4], 1e-8).unwrap();
        assert_abs_diff_eq!(e.value, 4.0, epsilon = 1e-5);
    }
}
