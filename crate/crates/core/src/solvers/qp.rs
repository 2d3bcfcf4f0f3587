//! max 2⟨w,x⟩ − xᵀQx over x ≥ 0 by projected Barzilai–Borwein gradient steps
//! with an active-set polish. Stops on the KKT residual.

use serde::{Deserialize, Serialize};

use super::SolveStatus;
use crate::linalg::{dot, eigen_sym, SymMatrix};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QpReport {
    pub status: SolveStatus,
    pub x: Vec<f64>,
    /// 2⟨w,x⟩ − xᵀQx.
    pub value: f64,
    pub kkt_residual: f64,
    pub iterations: usize,
}

const MAX_ITERS: usize = 20_000;
const POLISH_EVERY: usize = 25;

/// Largest violation among x ≥ 0, Qx ≥ w and ⟨x, Qx − w⟩ = 0.
pub fn qp_kkt_residual(q: &SymMatrix, w: &[f64], x: &[f64]) -> f64 {
    let qx = q.mul_vec(x);
    let mut r = 0.0f64;
    for i in 0..x.len() {
        r = r.max(-x[i]).max(w[i] - qx[i]);
    }
    let comp: f64 = x.iter().zip(qx.iter().zip(w)).map(|(xi, (a, b))| xi * (a - b)).sum();
    r.max(comp.abs())
}

fn value(q: &SymMatrix, w: &[f64], x: &[f64]) -> f64 {
    2.0 * dot(w, x) - q.quad_form(x)
}

enum Face {
    Solved(Vec<f64>),
    /// Null direction d ≥ 0 of Q with ⟨w, d⟩ > 0.
    Ray,
    Inconsistent,
}

/// Minimum-norm solve of Q_FF x_F = w_F.
fn face_solve(q: &SymMatrix, w: &[f64], free: &[usize]) -> Face {
    let n = w.len();
    let mut x = vec![0.0; n];
    if free.is_empty() {
        return Face::Solved(x);
    }
    let qf = q.principal(free);
    let Ok(e) = eigen_sym(&qf) else { return Face::Inconsistent };
    let cut = 1e-11 * (1.0 + e.max().abs());
    let wf: Vec<f64> = free.iter().map(|&i| w[i]).collect();
    let wscale = 1.0 + crate::linalg::norm2(&wf);
    let mut xf = vec![0.0; free.len()];
    let mut consistent = true;
    for k in 0..free.len() {
        let v = e.vector(k);
        let c = dot(&v, &wf);
        if e.values[k].abs() > cut {
            for a in 0..free.len() {
                xf[a] += c / e.values[k] * v[a];
            }
        } else if c.abs() > 1e-9 * wscale {
            let sign = c.signum();
            if v.iter().all(|vi| sign * vi >= -1e-12) {
                return Face::Ray;
            }
            consistent = false;
        }
    }
    if !consistent {
        return Face::Inconsistent;
    }
    for (a, &i) in free.iter().enumerate() {
        x[i] = xf[a];
    }
    Face::Solved(x)
}

/// Solves the nonnegative QP. `q` must be PSD.
pub fn solve_qp_nonneg(q: &SymMatrix, w: &[f64], tol: f64) -> QpReport {
    let n = w.len();
    assert_eq!(q.order(), n, "QP dimension mismatch");
    let mut x: Vec<f64> = (0..n).map(|i| if q.get(i, i) > 0.0 { (w[i] / q.get(i, i)).max(0.0) } else { 0.0 }).collect();
    let lmax = eigen_sym(q).map(|e| e.max()).unwrap_or(1.0).max(1e-12);
    let mut alpha = 1.0 / lmax;
    let grad = |x: &[f64]| -> Vec<f64> { q.mul_vec(x).iter().zip(w).map(|(a, b)| 2.0 * (a - b)).collect() };
    let mut g = grad(&x);
    let mut best = (qp_kkt_residual(q, w, &x), x.clone());
    let mut history: Vec<f64> = vec![-value(q, w, &x)];

    for it in 0..MAX_ITERS {
        let r = qp_kkt_residual(q, w, &x);
        if r < best.0 {
            best = (r, x.clone());
        }
        if r <= tol {
            return QpReport {
                status: SolveStatus::Optimal,
                value: value(q, w, &x),
                x,
                kkt_residual: r,
                iterations: it,
            };
        }
        if x.iter().any(|v| !v.is_finite() || v.abs() > 1e10) {
            return QpReport {
                status: SolveStatus::Unbounded,
                value: f64::INFINITY,
                x,
                kkt_residual: r,
                iterations: it,
            };
        }

        if it % POLISH_EVERY == POLISH_EVERY - 1 {
            let free: Vec<usize> = (0..n).filter(|&i| x[i] > 1e-12 || g[i] < 0.0).collect();
            let face = face_solve(q, w, &free);
            if let Face::Ray = face {
                return QpReport {
                    status: SolveStatus::Unbounded,
                    value: f64::INFINITY,
                    x,
                    kkt_residual: r,
                    iterations: it,
                };
            }
            if let Face::Solved(xc) = face {
                let xc: Vec<f64> = xc.iter().map(|v| if *v < 0.0 && *v > -1e-12 { 0.0 } else { *v }).collect();
                if xc.iter().all(|v| *v >= 0.0) {
                    let rc = qp_kkt_residual(q, w, &xc);
                    if rc <= tol {
                        return QpReport {
                            status: SolveStatus::Optimal,
                            value: value(q, w, &xc),
                            x: xc,
                            kkt_residual: rc,
                            iterations: it,
                        };
                    }
                    if value(q, w, &xc) > value(q, w, &x) {
                        x = xc;
                        g = grad(&x);
                        history.push(-value(q, w, &x));
                        continue;
                    }
                }
            }
        }

        // Nonmonotone projected step with backtracking.
        let fref = history.iter().rev().take(10).copied().fold(f64::NEG_INFINITY, f64::max);
        let mut step = alpha;
        let mut xn;
        loop {
            xn = x.iter().zip(&g).map(|(xi, gi)| (xi - step * gi).max(0.0)).collect::<Vec<_>>();
            let d: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
            let fnew = -value(q, w, &xn);
            if fnew <= fref + 1e-4 * dot(&g, &d) || step < 1e-16 {
                break;
            }
            step *= 0.5;
        }
        let gn = grad(&xn);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &yv);
        alpha = if sy > 0.0 { (dot(&s, &s) / sy).clamp(1e-12, 1e12) } else { 1.0 / lmax };
        x = xn;
        g = gn;
        history.push(-value(q, w, &x));
    }
    let (r, x) = best;
    QpReport { status: SolveStatus::MaxIter, value: value(q, w, &x), x, kkt_residual: r, iterations: MAX_ITERS }
}
