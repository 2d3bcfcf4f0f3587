//! Hoffman-type lower bounds and the θ₆ eigenvalue form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::theta3_cone;
use crate::cones::{AdjacencyCone, PairSign, ThetaVariant};
use crate::error::{guard, Error, Result};
use crate::graph::Graph;
use crate::linalg::{diag_scale, eigen_sym, lambda_max, lambda_min, SymMatrix};

/// 1 − λ_max(a)/λ_min(a) for a symmetric matrix with zero diagonal; 1 when a = 0.
pub fn hoffman_ratio(a: &SymMatrix) -> Result<f64> {
    let scale = 1.0 + a.max_abs();
    if a.diag().iter().any(|v| v.abs() > 1e-12 * scale) {
        return Err(Error::Precondition("hoffman_ratio needs a zero diagonal".into()));
    }
    if a.max_abs() == 0.0 {
        return Ok(1.0);
    }
    let e = eigen_sym(a)?;
    let lo = e.min();
    if lo >= 0.0 {
        return Err(Error::Numerical {
            msg: "nonzero trace-free matrix without a negative eigenvalue".into(),
            residual: lo,
        });
    }
    Ok(1.0 - e.max() / lo)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theta6Report {
    /// λ_max of the constructed B̄.
    pub value: f64,
    pub b: SymMatrix,
    pub theta3: f64,
    /// Largest λ_max over the random feasible B.
    pub random_max: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Random zero-diagonal R with entries admissible for `a`.
fn random_pattern<R: Rng + ?Sized>(a: &AdjacencyCone, rng: &mut R) -> SymMatrix {
    let n = a.n();
    let mut r = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = match a.pair_sign(i, j) {
                PairSign::Zero => 0.0,
                PairSign::NonNeg => rng.gen::<f64>(),
                PairSign::NonPos => -rng.gen::<f64>(),
                PairSign::Free => rng.gen_range(-1.0..1.0),
            };
            r.set(i, j, v);
        }
    }
    r
}

/// max λ_max(B) over PSD B ∈ A with diag B = w.
///
/// B̄ is built from the θ₃ optimum; `restarts` random feasible B probe that
/// nothing beats it.
pub fn theta6_lower_search_cone(
    a: &AdjacencyCone,
    w: &[f64],
    restarts: usize,
    tol: f64,
    seed: u64,
) -> Result<Theta6Report> {
    guard("theta6", a.n(), 14)?;
    let n = a.n();
    let sdp_tol = (tol * 1e-2).max(1e-12);
    let (t3, x) = theta3_cone(a, w, sdp_tol)?;
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let d = x.diag();
    let dmax = d.iter().copied().fold(0.0, f64::max);
    let on: Vec<bool> = d.iter().map(|&v| dmax > 0.0 && v >= 1e-6 * dmax).collect();
    let b = SymMatrix::from_fn(n, |i, j| {
        if on[i] && on[j] {
            sw[i] * sw[j] * x.get(i, j) / (d[i] * d[j]).sqrt()
        } else if i == j {
            w[i]
        } else {
            0.0
        }
    });
    let value = if n == 0 { 0.0 } else { lambda_max(&b)? };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_max = f64::NEG_INFINITY;
    for _ in 0..restarts {
        let r = random_pattern(a, &mut rng);
        let lo = if n == 0 { 0.0 } else { lambda_min(&r)? };
        let t = if lo < 0.0 { rng.gen::<f64>() / -lo } else { 0.0 };
        let bi = diag_scale(&sw, &SymMatrix::identity(n).add(&r.scale(t)));
        if n > 0 {
            random_max = random_max.max(lambda_max(&bi)?);
        }
    }
    let scale = 1.0 + t3;
    let passed = (value - t3).abs() <= tol * scale && random_max <= t3 + tol * scale;
    Ok(Theta6Report { value, b, theta3: t3, random_max, samples: restarts, passed })
}

/// θ₆ for a graph variant. TH⁺ is rejected: its cone is not invariant under
/// scalings by arbitrary real diagonals, which the eigenvalue form relies on.
pub fn theta6_lower_search(
    g: &Graph,
    variant: ThetaVariant,
    w: &[f64],
    restarts: usize,
    tol: f64,
    seed: u64,
) -> Result<Theta6Report> {
    if variant == ThetaVariant::ThPlus {
        return Err(Error::Unsupported("θ₆ needs a cone closed under sign flips of the scaling".into()));
    }
    theta6_lower_search_cone(&AdjacencyCone::for_variant(g, variant), w, restarts, tol, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hoffman_examples() {
        let c5 = Graph::cycle(5).adjacency_matrix();
        assert_abs_diff_eq!(hoffman_ratio(&c5).unwrap(), 5f64.sqrt(), epsilon = 1e-9);
        let p = Graph::petersen().adjacency_matrix();
        assert_abs_diff_eq!(hoffman_ratio(&p).unwrap(), 2.5, epsilon = 1e-9);
        assert_eq!(hoffman_ratio(&SymMatrix::zeros(3)).unwrap(), 1.0);
        assert!(matches!(hoffman_ratio(&SymMatrix::identity(2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn theta6_matches_theta3() {
        let ones = vec![1.0; 5];
        let r = theta6_lower_search(&Graph::cycle(5), ThetaVariant::Th, &ones, 100, 1e-6, 7).unwrap();
        assert_abs_diff_eq!(r.value, 5f64.sqrt(), epsilon = 1e-6);
        assert!(r.passed, "{r:?}");
        let k = theta6_lower_search(&Graph::complete(4), ThetaVariant::Th, &[1.0; 4], 20, 1e-6, 7).unwrap();
        assert_abs_diff_eq!(k.value, 1.0, epsilon = 1e-6);
        assert!(k.b.max_abs_diff(&SymMatrix::identity(4)) < 1e-6);
        let p = theta6_lower_search(&Graph::petersen(), ThetaVariant::Th, &[1.0; 10], 20, 1e-6, 7).unwrap();
        assert_abs_diff_eq!(p.value, 4.0, epsilon = 1e-6);
    }

    #[test]
    fn theta6_rejects_thplus() {
        let r = theta6_lower_search(&Graph::cycle(5), ThetaVariant::ThPlus, &[1.0; 5], 1, 1e-6, 0);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }
}
