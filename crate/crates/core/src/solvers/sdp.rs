//! Infeasible primal-dual path-following SDP solver (HKM direction,
//! Mehrotra predictor-corrector) over one PSD block plus nonnegative slacks.
//!
//! Primal: opt ⟨C, X⟩ s.t. ⟨A_k, X⟩ {≤,=,≥} b_k, X ⪰ 0.
//! Internally every inequality gets a slack s_k ≥ 0 so that
//! ⟨A_k, X⟩ + g_k s_k = b_k with g_k = ±1, and the dual reads
//! S = C − Σ y_k A_k ⪰ 0, z_k = −g_k y_k ≥ 0.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{Direction, Sense, SolveStatus};
use crate::linalg::SymMatrix;

/// Sparse symmetric matrix given by upper-triangle entries `(i, j, v)`, `i ≤ j`;
/// an off-diagonal entry stands for `v` at both `(i,j)` and `(j,i)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseSym {
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn new() -> Self {
        SparseSym::default()
    }

    /// The matrix A with ⟨A, X⟩ = X_ij.
    pub fn entry(i: usize, j: usize) -> Self {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let v = if a == b { 1.0 } else { 0.5 };
        SparseSym { entries: vec![(a, b, v)] }
    }

    /// Adds `v` to the coefficient of X_ij in ⟨A, X⟩.
    pub fn push_entry(&mut self, i: usize, j: usize, v: f64) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let v = if a == b { v } else { 0.5 * v };
        self.entries.push((a, b, v));
    }

    pub fn dot(&self, x: &SymMatrix) -> f64 {
        self.entries.iter().map(|&(i, j, v)| if i == j { v * x.get(i, i) } else { 2.0 * v * x.get(i, j) }).sum()
    }

    fn dot_dense(&self, g: &DMatrix<f64>) -> f64 {
        self.entries.iter().map(|&(i, j, v)| if i == j { v * g[(i, i)] } else { v * (g[(i, j)] + g[(j, i)]) }).sum()
    }

    fn add_scaled_to(&self, m: &mut DMatrix<f64>, s: f64) {
        for &(i, j, v) in &self.entries {
            m[(i, j)] += s * v;
            if i != j {
                m[(j, i)] += s * v;
            }
        }
    }

    fn frob(&self, order: usize) -> f64 {
        let mut d = DMatrix::zeros(order, order);
        self.add_scaled_to(&mut d, 1.0);
        d.norm()
    }

    fn max_index(&self) -> usize {
        self.entries.iter().map(|&(_, j, _)| j).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinConstraint {
    pub a: SparseSym,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdpProblem {
    pub order: usize,
    pub cost: SymMatrix,
    pub constraints: Vec<LinConstraint>,
    pub direction: Direction,
}

impl SdpProblem {
    pub fn new(cost: SymMatrix, direction: Direction) -> Self {
        SdpProblem { order: cost.order(), cost, constraints: Vec::new(), direction }
    }

    pub fn add(&mut self, a: SparseSym, sense: Sense, rhs: f64) {
        self.constraints.push(LinConstraint { a, sense, rhs });
    }

    /// Adds X_ij {≤,=,≥} rhs.
    pub fn add_entry(&mut self, i: usize, j: usize, sense: Sense, rhs: f64) {
        self.add(SparseSym::entry(i, j), sense, rhs);
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdpReport {
    pub status: SolveStatus,
    pub x: SymMatrix,
    /// Dual multipliers, one per constraint, in the caller's direction: for a
    /// maximization `C − Σ y_k A_k` is negative semidefinite at optimum.
    pub y: Vec<f64>,
    /// Dual slack matrix `s·(C − Σ y_k A_k)` with `s = −1` for maximization, so it is PSD.
    pub s: SymMatrix,
    pub objective: f64,
    pub dual_objective: f64,
    pub gap: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
}

const MAX_ITERS: usize = 200;

struct Data {
    c: DMatrix<f64>,
    a: Vec<SparseSym>,
    b: Vec<f64>,
    /// Slack coefficient per constraint (0 for equalities).
    g: Vec<f64>,
}

/// `tr(unit(c,d) · X · unit(a,b) · Sinv)` summed with entry weights.
fn schur_entry(ak: &SparseSym, al: &SparseSym, x: &DMatrix<f64>, sinv: &DMatrix<f64>) -> f64 {
    let mut total = 0.0;
    for &(c, d, u) in &ak.entries {
        for &(a, b, v) in &al.entries {
            let mut t = 0.0;
            let p: &[(usize, usize)] = if c == d { &[(c, c)] } else { &[(c, d), (d, c)] };
            let q: &[(usize, usize)] = if a == b { &[(a, a)] } else { &[(a, b), (b, a)] };
            for &(p0, p1) in p {
                for &(q0, q1) in q {
                    t += x[(p1, q0)] * sinv[(q1, p0)];
                }
            }
            total += u * v * t;
        }
    }
    total
}

/// Largest α with `X + α dX ⪰ 0`, given the Cholesky factor of X.
fn max_step(chol: &Cholesky<f64, nalgebra::Dyn>, dx: &DMatrix<f64>) -> f64 {
    let l = chol.l();
    let linv = match l.clone().try_inverse() {
        Some(v) => v,
        None => return 0.0,
    };
    let mut m = &linv * dx * linv.transpose();
    m = (&m + m.transpose()) * 0.5;
    let lmin = SymmetricEigen::new(m).eigenvalues.min();
    if lmin >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / lmin
    }
}

fn max_step_lin(v: &[f64], dv: &[f64]) -> f64 {
    v.iter().zip(dv).filter(|(_, &d)| d < 0.0).map(|(&x, &d)| -x / d).fold(f64::INFINITY, f64::min)
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn to_sym(m: &DMatrix<f64>) -> SymMatrix {
    SymMatrix::from_fn(m.nrows(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

/// Solves the SDP to relative accuracy `tol` (gap and residuals).
pub fn solve_sdp(p: &SdpProblem, tol: f64) -> SdpReport {
    let m = p.order;
    let dir = p.direction.sign();
    for con in &p.constraints {
        assert!(con.a.entries.is_empty() || con.a.max_index() < m, "constraint index out of range");
    }
    let data = Data {
        c: DMatrix::from_fn(m, m, |i, j| dir * p.cost.get(i, j)),
        a: p.constraints.iter().map(|c| c.a.clone()).collect(),
        b: p.constraints.iter().map(|c| c.rhs).collect(),
        g: p.constraints
            .iter()
            .map(|c| match c.sense {
                Sense::Le => 1.0,
                Sense::Ge => -1.0,
                Sense::Eq => 0.0,
            })
            .collect(),
    };
    let k = data.a.len();
    let lin: Vec<usize> = (0..k).filter(|&i| data.g[i] != 0.0).collect();
    let nl = lin.len();

    let cnorm = data.c.norm();
    let bnorm = data.b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let anorms: Vec<f64> = data.a.iter().map(|a| a.frob(m)).collect();
    let sm = (m as f64).sqrt();
    let xi = (0..k).map(|i| m as f64 * (1.0 + data.b[i].abs()) / (1.0 + anorms[i])).fold(10.0f64.max(sm), f64::max);
    let eta = anorms.iter().copied().fold(10.0f64.max(sm).max(cnorm), f64::max);

    let mut x = DMatrix::<f64>::identity(m, m) * xi;
    let mut s = DMatrix::<f64>::identity(m, m) * eta;
    let mut y = vec![0.0; k];
    let mut sl = vec![xi; nl];
    let mut zl = vec![eta; nl];
    let nu = (m + nl) as f64;

    let mut status = SolveStatus::MaxIter;
    let mut iters = 0;
    let mut last = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    // Late iterations can lose accuracy once the Schur system degrades, so
    // the best iterate seen is kept as a fallback.
    let mut best: Option<(f64, DMatrix<f64>, DMatrix<f64>, Vec<f64>, (f64, f64, f64))> = None;

    for it in 0..MAX_ITERS {
        iters = it;
        // Residuals.
        let mut rp = vec![0.0; k];
        for i in 0..k {
            rp[i] = data.b[i] - data.a[i].dot_dense(&x);
        }
        for (li, &i) in lin.iter().enumerate() {
            rp[i] -= data.g[i] * sl[li];
        }
        let mut rd = &data.c - &s;
        for i in 0..k {
            data.a[i].add_scaled_to(&mut rd, -y[i]);
        }
        let rz: Vec<f64> = lin.iter().enumerate().map(|(li, &i)| -data.g[i] * y[i] - zl[li]).collect();

        let pobj = data.c.dot(&x);
        let dobj: f64 = data.b.iter().zip(&y).map(|(b, y)| b * y).sum();
        let gap_rel = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let pinf = rp.iter().map(|v| v * v).sum::<f64>().sqrt() / (1.0 + bnorm);
        let dinf = (rd.norm_squared() + rz.iter().map(|v| v * v).sum::<f64>()).sqrt() / (1.0 + cnorm);
        last = (gap_rel, pinf, dinf);
        let score = gap_rel.max(pinf).max(dinf);
        if best.as_ref().map_or(true, |b| score < b.0) {
            best = Some((score, x.clone(), s.clone(), y.clone(), last));
        }
        let mu = (x.dot(&s) + sl.iter().zip(&zl).map(|(a, b)| a * b).sum::<f64>()) / nu;
        if gap_rel <= tol && pinf <= tol && dinf <= tol {
            status = SolveStatus::Optimal;
            break;
        }
        if y.iter().any(|v| v.abs() > 1e12) {
            status = SolveStatus::Infeasible;
            break;
        }
        if x.trace() > 1e12 {
            status = SolveStatus::Unbounded;
            break;
        }

        let Some(schol) = Cholesky::new(s.clone()) else { break };
        let sinv = schol.inverse();
        let Some(xchol) = Cholesky::new(x.clone()) else { break };

        // Schur complement.
        let mut mm = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = schur_entry(&data.a[i], &data.a[j], &x, &sinv);
                mm[(i, j)] = v;
                mm[(j, i)] = v;
            }
        }
        for (li, &i) in lin.iter().enumerate() {
            mm[(i, i)] += data.g[i] * data.g[i] * sl[li] / zl[li];
        }
        let mchol = Cholesky::new(mm.clone());
        let mlu = if mchol.is_none() { Some(mm.clone().lu()) } else { None };
        let solve_m = |rhs: &DVector<f64>| -> Option<DVector<f64>> {
            match (&mchol, &mlu) {
                (Some(c), _) => Some(c.solve(rhs)),
                (None, Some(lu)) => lu.solve(rhs),
                _ => None,
            }
        };

        // Direction for complementarity targets (RC for X, rc for slacks).
        let direction = |rc_mat: &DMatrix<f64>,
                         rc_lin: &[f64]|
         -> Option<(DMatrix<f64>, DMatrix<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
            let gmat = rc_mat * &sinv - &x - &x * &rd * &sinv;
            let mut rhs = DVector::<f64>::zeros(k);
            for i in 0..k {
                rhs[i] = rp[i] - data.a[i].dot_dense(&gmat);
            }
            for (li, &i) in lin.iter().enumerate() {
                rhs[i] -= data.g[i] * (rc_lin[li] - sl[li] * zl[li] - sl[li] * rz[li]) / zl[li];
            }
            let dy = solve_m(&rhs)?;
            let mut ds = rd.clone();
            for i in 0..k {
                data.a[i].add_scaled_to(&mut ds, -dy[i]);
            }
            let dx = sym(&((rc_mat - &x * &ds) * &sinv)) - &x;
            let dz: Vec<f64> = lin.iter().enumerate().map(|(li, &i)| rz[li] - data.g[i] * dy[i]).collect();
            let dsl: Vec<f64> = (0..nl).map(|li| (rc_lin[li] - sl[li] * zl[li] - sl[li] * dz[li]) / zl[li]).collect();
            Some((dx, ds, dy.iter().copied().collect(), dsl, dz))
        };

        // Predictor.
        let zero = DMatrix::<f64>::zeros(m, m);
        let Some((dxa, dsa, _, dsla, dza)) = direction(&zero, &vec![0.0; nl]) else { break };
        let ap = max_step(&xchol, &dxa).min(max_step_lin(&sl, &dsla)).min(1.0);
        let ad = max_step(&schol, &dsa).min(max_step_lin(&zl, &dza)).min(1.0);
        let xa = &x + &dxa * ap;
        let sa = &s + &dsa * ad;
        let lin_aff: f64 = (0..nl).map(|li| (sl[li] + ap * dsla[li]) * (zl[li] + ad * dza[li])).sum();
        let mu_aff = (xa.dot(&sa) + lin_aff) / nu;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

        // Corrector.
        let rc_mat = DMatrix::<f64>::identity(m, m) * (sigma * mu) - &dxa * &dsa;
        let rc_lin: Vec<f64> = (0..nl).map(|li| sigma * mu - dsla[li] * dza[li]).collect();
        let Some((dx, ds, dy, dsl, dz)) = direction(&rc_mat, &rc_lin) else { break };

        let tau = if it < 5 { 0.9 } else { 0.98 };
        let ap = (tau * max_step(&xchol, &dx).min(max_step_lin(&sl, &dsl))).min(1.0);
        let ad = (tau * max_step(&schol, &ds).min(max_step_lin(&zl, &dz))).min(1.0);
        x = sym(&(&x + &dx * ap));
        for li in 0..nl {
            sl[li] += ap * dsl[li];
        }
        s = sym(&(&s + &ds * ad));
        for i in 0..k {
            y[i] += ad * dy[i];
        }
        for li in 0..nl {
            zl[li] += ad * dz[li];
        }
        if ap < 1e-12 && ad < 1e-12 {
            break;
        }
    }

    if status == SolveStatus::MaxIter {
        if let Some((_, bx, bs, by, bl)) = best {
            x = bx;
            s = bs;
            y = by;
            last = bl;
        }
    }
    let xs = to_sym(&x);
    let pobj = data.c.dot(&x);
    let dobj: f64 = data.b.iter().zip(&y).map(|(b, y)| b * y).sum();
    SdpReport {
        status,
        x: xs,
        y: y.iter().map(|v| dir * v).collect(),
        s: to_sym(&s),
        objective: dir * pobj,
        dual_objective: dir * dobj,
        gap: last.0,
        primal_residual: last.1,
        dual_residual: last.2,
        iterations: iters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn trace_constraint(n: usize) -> SparseSym {
        SparseSym { entries: (0..n).map(|i| (i, i, 1.0)).collect() }
    }

    #[test]
    fn rank_one_objective() {
        let n = 4;
        let c = SymMatrix::outer(&[1.0; 4]).scale(1.0 / n as f64);
        let mut p = SdpProblem::new(c, Direction::Maximize);
        p.add(trace_constraint(n), Sense::Eq, 1.0);
        let r = solve_sdp(&p, 1e-9);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(r.objective, 1.0, epsilon = 1e-7);
        assert!(r.x.max_abs_diff(&SymMatrix::outer(&[0.5; 4])) < 1e-5);
        // Complementarity.
        assert!(r.x.dot(&r.s).abs() < 1e-7 * n as f64);
    }

    fn theta3_cycle(n: usize) -> SdpProblem {
        let mut p = SdpProblem::new(SymMatrix::outer(&vec![1.0; n]), Direction::Maximize);
        p.add(trace_constraint(n), Sense::Eq, 1.0);
        for i in 0..n {
            p.add_entry(i, (i + 1) % n, Sense::Eq, 0.0);
        }
        p
    }

    #[test]
    fn theta_c5() {
        let r = solve_sdp(&theta3_cycle(5), 1e-10);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(r.objective, 5f64.sqrt(), epsilon = 1e-7);
        assert_abs_diff_eq!(r.dual_objective, 5f64.sqrt(), epsilon = 1e-7);
    }

    #[test]
    fn theta_complete_graph_is_one() {
        let n = 5;
        let mut p = SdpProblem::new(SymMatrix::outer(&vec![1.0; n]), Direction::Maximize);
        p.add(trace_constraint(n), Sense::Eq, 1.0);
        for i in 0..n {
            for j in i + 1..n {
                p.add_entry(i, j, Sense::Eq, 0.0);
            }
        }
        let r = solve_sdp(&p, 1e-9);
        assert_abs_diff_eq!(r.objective, 1.0, epsilon = 1e-7);
    }

    #[test]
    fn inequality_constraints() {
        // min X_11 + X_22 s.t. X_12 ≥ 1 → X = [[1,1],[1,1]], value 2.
        let mut p = SdpProblem::new(SymMatrix::identity(2), Direction::Minimize);
        p.add_entry(0, 1, Sense::Ge, 1.0);
        let r = solve_sdp(&p, 1e-9);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(r.objective, 2.0, epsilon = 1e-7);
        // max X_12 s.t. X_11 ≤ 1, X_22 ≤ 1 → 1.
        let mut c = SymMatrix::zeros(2);
        c.set(0, 1, 0.5);
        let mut p = SdpProblem::new(c, Direction::Maximize);
        p.add_entry(0, 0, Sense::Le, 1.0);
        p.add_entry(1, 1, Sense::Le, 1.0);
        let r = solve_sdp(&p, 1e-9);
        assert_abs_diff_eq!(r.objective, 1.0, epsilon = 1e-7);
    }

    #[test]
    fn sparse_entry_dot() {
        let x = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 5.0]]).unwrap();
        assert_eq!(SparseSym::entry(0, 1).dot(&x), 2.0);
        assert_eq!(SparseSym::entry(1, 0).dot(&x), 2.0);
        assert_eq!(SparseSym::entry(1, 1).dot(&x), 5.0);
        let mut a = SparseSym::new();
        a.push_entry(0, 1, 3.0);
        a.push_entry(0, 0, 1.0);
        assert_eq!(a.dot(&x), 7.0);
    }
}
