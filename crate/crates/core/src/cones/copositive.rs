//! Bounded copositive and completely-positive certificate checks.
//!
//! Exact membership is co-NP-hard, so every test here is either a sufficient
//! condition or an explicit witness search with a fixed budget.

use serde::{Deserialize, Serialize};

use super::Verdict;
use crate::graph::{maximal_stable_sets, Graph};
use crate::linalg::{dot, eigen_sym, is_psd, project_psd, SymMatrix};

/// Largest order `copositive_verify` will search exhaustively.
pub const MAX_COPOSITIVE_ORDER: usize = 12;

const PN_ITERS: usize = 500;
const GRID: usize = 8;
const DESCENT_SWEEPS: usize = 30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CopositiveVerdict {
    VerifiedYes,
    /// `h ≥ 0`, `‖h‖₁ = 1`, `hᵀXh = value < −tol`.
    VerifiedNo {
        h: Vec<f64>,
        value: f64,
    },
    Undecided,
}

impl CopositiveVerdict {
    pub fn is_no(&self) -> bool {
        matches!(self, CopositiveVerdict::VerifiedNo { .. })
    }
}

fn nonneg(x: &SymMatrix, tol: f64) -> bool {
    x.as_slice().iter().all(|&v| v >= -tol)
}

/// Searches X = P + N with P ⪰ 0 and N ≥ 0 (zero diagonal) by alternating projections.
pub fn pn_split(x: &SymMatrix, tol: f64) -> Option<(SymMatrix, SymMatrix)> {
    let n = x.order();
    let mut p = x.clone();
    for it in 0..PN_ITERS {
        // Project onto {P : P_ii = X_ii, P_ij ≤ X_ij}.
        let q = SymMatrix::from_fn(n, |i, j| if i == j { x.get(i, i) } else { p.get(i, j).min(x.get(i, j)) });
        if it % 10 == 0 && is_psd(&q, tol) {
            let nn = x.sub(&q);
            return Some((q, nn));
        }
        p = project_psd(&q).ok()?;
    }
    None
}

/// Sufficient test via minimal supports.
///
/// Let P be the pairs with M_ii + M_jj − 2M_ij ≤ 0. The quadratic form is
/// concave along e_i − e_j for such pairs, so a minimizer over the simplex
/// with minimal support never contains both i and j. Hence M is copositive
/// iff every maximal P-free principal block is, and each block is certified
/// by the cheap tests.
fn support_reduction(x: &SymMatrix, tol: f64) -> bool {
    let n = x.order();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if x.get(i, i) + x.get(j, j) - 2.0 * x.get(i, j) <= tol {
                pairs.push((i, j));
            }
        }
    }
    if pairs.is_empty() {
        return false;
    }
    let Ok(pg) = Graph::from_edges(n, &pairs) else { return false };
    let Ok(blocks) = maximal_stable_sets(&pg) else { return false };
    blocks.into_iter().all(|s| {
        let idx: Vec<usize> = s.iter().collect();
        let b = x.principal(&idx);
        nonneg(&b, tol) || is_psd(&b, tol) || pn_split(&b, tol).is_some()
    })
}

fn normalize(h: &mut [f64]) {
    let s: f64 = h.iter().sum();
    if s > 0.0 {
        h.iter_mut().for_each(|v| *v /= s);
    }
}

/// Pairwise mass moves on the simplex until no pair improves.
fn coordinate_descent(x: &SymMatrix, h: &mut [f64]) -> f64 {
    let n = h.len();
    let mut g = x.mul_vec(h);
    for _ in 0..DESCENT_SWEEPS {
        let mut moved = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                // h + t(e_i − e_j), t ∈ [−h_i, h_j].
                let a = x.get(i, i) + x.get(j, j) - 2.0 * x.get(i, j);
                let b = g[i] - g[j];
                let (lo, hi) = (-h[i], h[j]);
                let cands = [lo, hi, if a > 0.0 { (-b / a).clamp(lo, hi) } else { lo }];
                let f = |t: f64| 2.0 * b * t + a * t * t;
                let t = cands.into_iter().fold(0.0, |best, t| if f(t) < f(best) { t } else { best });
                if f(t) < -1e-15 {
                    h[i] += t;
                    h[j] -= t;
                    h[i] = h[i].max(0.0);
                    h[j] = h[j].max(0.0);
                    for k in 0..n {
                        g[k] += t * (x.get(k, i) - x.get(k, j));
                    }
                    moved = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
    normalize(h);
    x.quad_form(h)
}

fn compositions(n: usize, total: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if cur.len() + 1 == n {
        cur.push(total);
        out(cur);
        cur.pop();
        return;
    }
    for k in 0..=total {
        cur.push(k);
        compositions(n, total - k, cur, out);
        cur.pop();
    }
}

/// Best point of the 1/8 simplex grid, refined by coordinate descent.
fn grid_search(x: &SymMatrix) -> (Vec<f64>, f64) {
    let n = x.order();
    let mut best = (vec![1.0 / n as f64; n], f64::INFINITY);
    let mut starts: Vec<(f64, Vec<f64>)> = Vec::new();
    compositions(n, GRID, &mut Vec::with_capacity(n), &mut |c| {
        let h: Vec<f64> = c.iter().map(|&k| k as f64 / GRID as f64).collect();
        let v = x.quad_form(&h);
        starts.push((v, h));
    });
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (_, mut h) in starts.into_iter().take(8) {
        let v = coordinate_descent(x, &mut h);
        if v < best.1 {
            best = (h, v);
        }
    }
    best
}

/// A negative eigenvalue of a principal block with a positive eigenvector gives a witness.
fn eigen_witness(x: &SymMatrix, tol: f64) -> Option<(Vec<f64>, f64)> {
    let n = x.order();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let Ok(e) = eigen_sym(&x.principal(&idx)) else { continue };
        for k in 0..idx.len() {
            if e.values[k] >= -tol {
                continue;
            }
            let v = e.vector(k);
            let scale = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
            let sign = if v.iter().sum::<f64>() >= 0.0 { 1.0 } else { -1.0 };
            if v.iter().all(|a| sign * a > 1e-9 * scale) {
                let mut h = vec![0.0; n];
                for (a, &i) in idx.iter().enumerate() {
                    h[i] = sign * v[a];
                }
                normalize(&mut h);
                let val = x.quad_form(&h);
                if val < -tol {
                    return Some((h, val));
                }
            }
        }
    }
    None
}

/// Three-valued copositivity test.
pub fn copositive_verify(x: &SymMatrix, tol: f64) -> CopositiveVerdict {
    let n = x.order();
    for i in 0..n {
        if x.get(i, i) < -tol {
            let mut h = vec![0.0; n];
            h[i] = 1.0;
            return CopositiveVerdict::VerifiedNo { h, value: x.get(i, i) };
        }
    }
    if nonneg(x, tol) || is_psd(x, tol) {
        return CopositiveVerdict::VerifiedYes;
    }
    if n > MAX_COPOSITIVE_ORDER {
        return CopositiveVerdict::Undecided;
    }
    if pn_split(x, tol).is_some() || support_reduction(x, tol) {
        return CopositiveVerdict::VerifiedYes;
    }
    let (h, v) = grid_search(x);
    if v < -tol {
        return CopositiveVerdict::VerifiedNo { h, value: v };
    }
    if let Some((h, value)) = eigen_witness(x, tol) {
        return CopositiveVerdict::VerifiedNo { h, value };
    }
    CopositiveVerdict::Undecided
}

/// True iff every factor is nonnegative and Σ b bᵀ matches `x` entrywise within `tol`.
pub fn cp_verify_factorization(x: &SymMatrix, factors: &[Vec<f64>], tol: f64) -> bool {
    let n = x.order();
    if factors.iter().any(|b| b.len() != n || b.iter().any(|&v| v < 0.0 || !v.is_finite())) {
        return false;
    }
    let mut sum = SymMatrix::zeros(n);
    for b in factors {
        for i in 0..n {
            for j in i..n {
                sum.add_to(i, j, b[i] * b[j]);
            }
        }
    }
    sum.max_abs_diff(x) <= tol
}

/// Completely-positive membership by cheap rules.
///
/// Not doubly nonnegative gives No. Order ≤ 4, diagonal dominance and
/// nonnegative rank one give Yes. Anything else is Undecided.
pub fn cp_verdict(x: &SymMatrix, tol: f64) -> Verdict {
    let n = x.order();
    if !nonneg(x, tol) || !is_psd(x, tol) {
        return Verdict::No;
    }
    if n <= 4 {
        return Verdict::Yes;
    }
    let dominant = (0..n).all(|i| x.get(i, i) + tol >= (0..n).filter(|&j| j != i).map(|j| x.get(i, j)).sum::<f64>());
    if dominant {
        return Verdict::Yes;
    }
    if let Ok(e) = eigen_sym(x) {
        if e.values.iter().skip(1).all(|v| v.abs() <= tol) {
            return Verdict::Yes;
        }
    }
    Verdict::Undecided
}

/// A copositive H with ⟨H, X⟩ < −tol when X is visibly outside CP.
pub fn cp_separating_witness(x: &SymMatrix, tol: f64) -> Option<SymMatrix> {
    let n = x.order();
    for i in 0..n {
        for j in i..n {
            if x.get(i, j) < -tol {
                let mut h = SymMatrix::zeros(n);
                h.set(i, j, 1.0);
                return Some(h);
            }
        }
    }
    let e = eigen_sym(x).ok()?;
    if e.min() < -tol {
        let v = e.vector(n - 1);
        debug_assert!(dot(&v, &x.mul_vec(&v)) < 0.0);
        return Some(SymMatrix::outer(&v));
    }
    None
}
