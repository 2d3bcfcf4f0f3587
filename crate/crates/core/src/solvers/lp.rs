//! Revised simplex with Bland's rule on a dense explicit basis inverse.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{Direction, SolveStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// `opt cᵀx` subject to row constraints and per-variable bounds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<f64>,
    /// `(lower, upper)`, either may be infinite.
    pub bounds: Vec<(f64, f64)>,
    pub direction: Direction,
}

impl LinearProgram {
    /// A program in `n` variables with default bounds `[0, ∞)`.
    pub fn new(objective: Vec<f64>, direction: Direction) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); n],
            direction,
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) {
        assert_eq!(coeffs.len(), self.objective.len(), "row length mismatch");
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpReport {
    pub status: SolveStatus,
    pub x: Vec<f64>,
    /// One multiplier per row, signed so that `c − Aᵀy` gives `reduced_costs`.
    pub duals: Vec<f64>,
    pub reduced_costs: Vec<f64>,
    pub objective: f64,
    pub dual_objective: f64,
    pub gap: f64,
    pub iterations: usize,
}

const PIVOT_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 50_000;
const REFACTOR_EVERY: usize = 40;

/// How an original variable maps onto standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    /// x = offset + z
    Shift { col: usize, offset: f64 },
    /// x = offset − z
    Flip { col: usize, offset: f64 },
    /// x = z⁺ − z⁻
    Free { pos: usize, neg: usize },
}

struct Standard {
    a: Vec<Vec<f64>>, // m rows, ncols columns
    b: Vec<f64>,
    c: Vec<f64>,
    map: Vec<VarMap>,
    /// Row sign flips applied to make b ≥ 0, one per standard row.
    flip: Vec<f64>,
    /// Index of the row whose slack can seed the basis, per row.
    seed: Vec<Option<usize>>,
    user_rows: usize,
}

fn standardize(p: &LinearProgram) -> Standard {
    let n = p.num_vars();
    let s = p.direction.sign();
    let mut map = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for &(l, u) in &p.bounds {
        if l.is_finite() {
            map.push(VarMap::Shift { col: ncols, offset: l });
            if u.is_finite() {
                bound_rows.push((ncols, u - l));
            }
            ncols += 1;
        } else if u.is_finite() {
            map.push(VarMap::Flip { col: ncols, offset: u });
            ncols += 1;
        } else {
            map.push(VarMap::Free { pos: ncols, neg: ncols + 1 });
            ncols += 2;
        }
    }

    let mut rows: Vec<(Vec<f64>, Sense, f64)> = Vec::new();
    for k in 0..p.rows.len() {
        let mut r = vec![0.0; ncols];
        let mut rhs = p.rhs[k];
        for j in 0..n {
            let a = p.rows[k][j];
            if a == 0.0 {
                continue;
            }
            match map[j] {
                VarMap::Shift { col, offset } => {
                    r[col] += a;
                    rhs -= a * offset;
                }
                VarMap::Flip { col, offset } => {
                    r[col] -= a;
                    rhs -= a * offset;
                }
                VarMap::Free { pos, neg } => {
                    r[pos] += a;
                    r[neg] -= a;
                }
            }
        }
        rows.push((r, p.senses[k], rhs));
    }
    for &(col, ub) in &bound_rows {
        let mut r = vec![0.0; ncols];
        r[col] = 1.0;
        rows.push((r, Sense::Le, ub));
    }

    let mut c = vec![0.0; ncols];
    for j in 0..n {
        let cj = s * p.objective[j];
        match map[j] {
            VarMap::Shift { col, .. } => c[col] += cj,
            VarMap::Flip { col, .. } => c[col] -= cj,
            VarMap::Free { pos, neg } => {
                c[pos] += cj;
                c[neg] -= cj;
            }
        }
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let total = ncols + n_slack;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let mut flip = Vec::with_capacity(m);
    let mut seed = Vec::with_capacity(m);
    let mut next_slack = ncols;
    for (r, sense, rhs) in rows {
        let mut row = r;
        row.resize(total, 0.0);
        let slack = match sense {
            Sense::Le => Some((next_slack, 1.0)),
            Sense::Ge => Some((next_slack, -1.0)),
            Sense::Eq => None,
        };
        if let Some((col, coef)) = slack {
            row[col] = coef;
            next_slack += 1;
        }
        let f = if rhs < 0.0 { -1.0 } else { 1.0 };
        if f < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
        }
        seed.push(slack.and_then(|(col, coef)| (coef * f > 0.0).then_some(col)));
        a.push(row);
        b.push(rhs * f);
        flip.push(f);
    }
    c.resize(total, 0.0);
    Standard { a, b, c, map, flip, seed, user_rows: p.rows.len() }
}

struct Tableau<'a> {
    a: &'a [Vec<f64>],
    b: &'a [f64],
    basis: Vec<usize>,
    binv: Vec<Vec<f64>>,
    since_refactor: usize,
}

impl<'a> Tableau<'a> {
    fn m(&self) -> usize {
        self.b.len()
    }

    fn refactor(&mut self) -> bool {
        let m = self.m();
        if m == 0 {
            self.binv.clear();
            return true;
        }
        let bm = DMatrix::from_fn(m, m, |i, j| self.a[i][self.basis[j]]);
        match bm.try_inverse() {
            Some(inv) => {
                self.binv = (0..m).map(|i| (0..m).map(|j| inv[(i, j)]).collect()).collect();
                self.since_refactor = 0;
                true
            }
            None => false,
        }
    }

    fn column(&self, j: usize) -> Vec<f64> {
        let m = self.m();
        (0..m).map(|i| (0..m).map(|k| self.binv[i][k] * self.a[k][j]).sum()).collect()
    }

    fn xb(&self) -> Vec<f64> {
        let m = self.m();
        (0..m).map(|i| (0..m).map(|k| self.binv[i][k] * self.b[k]).sum()).collect()
    }

    fn duals(&self, c: &[f64]) -> Vec<f64> {
        let m = self.m();
        (0..m).map(|k| (0..m).map(|i| c[self.basis[i]] * self.binv[i][k]).sum()).collect()
    }

    fn pivot(&mut self, r: usize, entering: usize, d: &[f64]) {
        let m = self.m();
        let piv = d[r];
        for k in 0..m {
            self.binv[r][k] /= piv;
        }
        let rowr = self.binv[r].clone();
        for i in 0..m {
            if i != r && d[i] != 0.0 {
                let f = d[i];
                for k in 0..m {
                    self.binv[i][k] -= f * rowr[k];
                }
            }
        }
        self.basis[r] = entering;
        self.since_refactor += 1;
        if self.since_refactor >= REFACTOR_EVERY {
            self.refactor();
        }
    }

    /// Runs Bland's-rule simplex on cost `c` over columns `allowed`.
    fn optimize(&mut self, c: &[f64], allowed: &dyn Fn(usize) -> bool, ncols: usize, iters: &mut usize) -> SolveStatus {
        let cscale = 1.0 + c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        loop {
            if *iters >= MAX_ITERS {
                return SolveStatus::MaxIter;
            }
            *iters += 1;
            let y = self.duals(c);
            let mut entering = None;
            for j in 0..ncols {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let rc = c[j] - (0..self.m()).map(|k| y[k] * self.a[k][j]).sum::<f64>();
                if rc < -PIVOT_TOL * cscale {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return SolveStatus::Optimal };
            let d = self.column(j);
            let xb = self.xb();
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m() {
                if d[i] > PIVOT_TOL {
                    let ratio = xb[i].max(0.0) / d[i];
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-12 || (ratio <= lr + 1e-12 && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else { return SolveStatus::Unbounded };
            self.pivot(r, j, &d);
        }
    }
}

/// Solves the LP; `tol` bounds the primal residuals accepted as feasible.
pub fn solve_lp(p: &LinearProgram, tol: f64) -> LpReport {
    let n = p.num_vars();
    let mut st = standardize(p);
    let ncols = st.c.len();
    let m0 = st.a.len();

    // Artificial columns for rows without a usable slack.
    let mut art_cols = Vec::new();
    let mut basis = Vec::with_capacity(m0);
    for i in 0..m0 {
        match st.seed[i] {
            Some(col) => basis.push(col),
            None => {
                let col = ncols + art_cols.len();
                art_cols.push(i);
                basis.push(col);
            }
        }
    }
    let total = ncols + art_cols.len();
    for (k, &i) in art_cols.iter().enumerate() {
        for (r, row) in st.a.iter_mut().enumerate() {
            row.resize(total, 0.0);
            if r == i {
                row[ncols + k] = 1.0;
            }
        }
    }
    for row in st.a.iter_mut() {
        row.resize(total, 0.0);
    }

    let mut iters = 0;
    let mut keep_rows: Vec<usize> = (0..m0).collect();
    let mut basis_final = basis.clone();
    let mut a_work = st.a.clone();
    let mut b_work = st.b.clone();

    if !art_cols.is_empty() {
        let mut c1 = vec![0.0; total];
        for k in 0..art_cols.len() {
            c1[ncols + k] = 1.0;
        }
        let mut tab = Tableau { a: &a_work, b: &b_work, basis: basis.clone(), binv: Vec::new(), since_refactor: 0 };
        tab.refactor();
        let status = tab.optimize(&c1, &|_| true, total, &mut iters);
        if status == SolveStatus::MaxIter {
            return failed(n, m0, SolveStatus::MaxIter, iters);
        }
        let xb = tab.xb();
        let infeas: f64 = (0..tab.m()).filter(|&i| tab.basis[i] >= ncols).map(|i| xb[i]).sum();
        let bscale = 1.0 + st.b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if infeas > tol.max(1e-9) * bscale {
            return failed(n, m0, SolveStatus::Infeasible, iters);
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut drop = Vec::new();
        for r in 0..tab.m() {
            if tab.basis[r] < ncols {
                continue;
            }
            let mut swapped = false;
            for j in 0..ncols {
                if tab.basis.contains(&j) {
                    continue;
                }
                let d = tab.column(j);
                if d[r].abs() > 1e-7 {
                    tab.pivot(r, j, &d);
                    swapped = true;
                    break;
                }
            }
            if !swapped {
                drop.push(r);
            }
        }
        basis_final = tab.basis.clone();
        if !drop.is_empty() {
            keep_rows.retain(|r| !drop.contains(r));
            basis_final = keep_rows.iter().map(|&r| tab.basis[r]).collect();
            a_work = keep_rows.iter().map(|&r| a_work[r].clone()).collect();
            b_work = keep_rows.iter().map(|&r| b_work[r]).collect();
        }
    }

    let mut c2 = st.c.clone();
    c2.resize(total, 0.0);
    let mut tab = Tableau { a: &a_work, b: &b_work, basis: basis_final, binv: Vec::new(), since_refactor: 0 };
    if !tab.refactor() {
        return failed(n, m0, SolveStatus::MaxIter, iters);
    }
    let status = tab.optimize(&c2, &|j| j < ncols, total, &mut iters);
    if status != SolveStatus::Optimal {
        return failed(n, m0, status, iters);
    }
    tab.refactor();

    let xb = tab.xb();
    let mut z = vec![0.0; total];
    for (i, &j) in tab.basis.iter().enumerate() {
        z[j] = xb[i].max(0.0);
    }
    let x: Vec<f64> = st
        .map
        .iter()
        .map(|m| match *m {
            VarMap::Shift { col, offset } => offset + z[col],
            VarMap::Flip { col, offset } => offset - z[col],
            VarMap::Free { pos, neg } => z[pos] - z[neg],
        })
        .collect();

    // Standard-form duals, mapped back to user rows.
    let y_std = tab.duals(&c2);
    let s = p.direction.sign();
    let mut duals = vec![0.0; p.rows.len()];
    for (pos, &r) in keep_rows.iter().enumerate() {
        if r < st.user_rows {
            duals[r] = s * st.flip[r] * y_std[pos];
        }
    }
    let reduced_costs: Vec<f64> =
        (0..n).map(|j| p.objective[j] - (0..p.rows.len()).map(|k| duals[k] * p.rows[k][j]).sum::<f64>()).collect();
    let objective: f64 = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let mut dual_objective: f64 = duals.iter().zip(&p.rhs).map(|(y, b)| y * b).sum();
    for j in 0..n {
        let (l, u) = p.bounds[j];
        // Minimization: positive reduced cost pairs with the lower bound.
        let r = s * reduced_costs[j];
        let bound = if r > 0.0 { l } else { u };
        if r != 0.0 && bound.is_finite() {
            dual_objective += reduced_costs[j] * bound;
        }
    }
    let gap = (objective - dual_objective).abs();
    LpReport { status, x, duals, reduced_costs, objective, dual_objective, gap, iterations: iters }
}

fn failed(n: usize, m: usize, status: SolveStatus, iterations: usize) -> LpReport {
    LpReport {
        status,
        x: vec![f64::NAN; n],
        duals: vec![f64::NAN; m],
        reduced_costs: vec![f64::NAN; n],
        objective: f64::NAN,
        dual_objective: f64::NAN,
        gap: f64::INFINITY,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn frac_c5() {
        let mut p = LinearProgram::new(vec![1.0; 5], Direction::Maximize);
        p.bounds = vec![(0.0, 1.0); 5];
        for i in 0..5 {
            let mut r = vec![0.0; 5];
            r[i] = 1.0;
            r[(i + 1) % 5] = 1.0;
            p.add_row(r, Sense::Le, 1.0);
        }
        let rep = solve_lp(&p, 1e-9);
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(rep.objective, 2.5, epsilon = 1e-9);
        for v in &rep.x {
            assert_abs_diff_eq!(*v, 0.5, epsilon = 1e-9);
        }
        assert!(rep.gap < 1e-9);
    }

    #[test]
    fn clique_k3() {
        let mut p = LinearProgram::new(vec![1.0; 3], Direction::Maximize);
        p.add_row(vec![1.0; 3], Sense::Le, 1.0);
        let rep = solve_lp(&p, 1e-9);
        assert_abs_diff_eq!(rep.objective, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.duals[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn box_only() {
        let mut p = LinearProgram::new(vec![1.0; 4], Direction::Maximize);
        p.bounds = vec![(0.0, 1.0); 4];
        let rep = solve_lp(&p, 1e-9);
        assert_abs_diff_eq!(rep.objective, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.dual_objective, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn equality_and_ge_rows_need_phase_one() {
        // min x + 2y s.t. x + y = 3, x − y ≥ −1, x ≤ 1.5 → x = 1.5, y = 1.5
        let mut p = LinearProgram::new(vec![1.0, 2.0], Direction::Minimize);
        p.add_row(vec![1.0, 1.0], Sense::Eq, 3.0);
        p.add_row(vec![1.0, -1.0], Sense::Ge, -1.0);
        p.bounds[0] = (0.0, 1.5);
        let rep = solve_lp(&p, 1e-9);
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(rep.objective, 4.5, epsilon = 1e-9);
        assert!(rep.gap < 1e-9, "gap {}", rep.gap);
    }

    #[test]
    fn free_and_negative_bounds() {
        // min x s.t. x ≥ −2 (as a row), x free → −2
        let mut p = LinearProgram::new(vec![1.0], Direction::Minimize);
        p.bounds[0] = (f64::NEG_INFINITY, f64::INFINITY);
        p.add_row(vec![1.0], Sense::Ge, -2.0);
        let rep = solve_lp(&p, 1e-9);
        assert_abs_diff_eq!(rep.x[0], -2.0, epsilon = 1e-12);

        let mut p = LinearProgram::new(vec![-1.0], Direction::Minimize);
        p.bounds[0] = (f64::NEG_INFINITY, 3.0);
        let rep = solve_lp(&p, 1e-9);
        assert_abs_diff_eq!(rep.x[0], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LinearProgram::new(vec![1.0], Direction::Minimize);
        p.add_row(vec![1.0], Sense::Le, -1.0);
        assert_eq!(solve_lp(&p, 1e-9).status, SolveStatus::Infeasible);

        let p = LinearProgram::new(vec![1.0, 1.0], Direction::Maximize);
        assert_eq!(solve_lp(&p, 1e-9).status, SolveStatus::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut p = LinearProgram::new(vec![1.0, 1.0], Direction::Maximize);
        p.add_row(vec![1.0, 1.0], Sense::Eq, 1.0);
        p.add_row(vec![2.0, 2.0], Sense::Eq, 2.0);
        let rep = solve_lp(&p, 1e-9);
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(rep.objective, 1.0, epsilon = 1e-12);
    }
}
