//! Unit-vector representations of theta body points.

use serde::{Deserialize, Serialize};

use crate::cones::{AdjacencyCone, PairSign, ThetaVariant};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dot, eigen_sym, norm2, SymMatrix};

/// Unit vectors u₀, u₁..uₙ with x_i = ⟨u₀,u_i⟩².
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometricRepresentation {
    pub u0: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub x: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GeometricCheck {
    pub max_norm_error: f64,
    /// Most negative ⟨u₀,u_i⟩.
    pub min_handle_product: f64,
    /// Largest pattern violation of ⟨u_i,u_j⟩, weighted by √(x_i x_j).
    pub max_sign_violation: f64,
    /// max |x_i − ⟨u₀,u_i⟩²|.
    pub max_reconstruction_error: f64,
    pub passed: bool,
}

impl GeometricRepresentation {
    pub fn check(&self, a: &AdjacencyCone, tol: f64) -> GeometricCheck {
        let mut c = GeometricCheck { min_handle_product: f64::INFINITY, ..Default::default() };
        c.max_norm_error =
            std::iter::once(&self.u0).chain(&self.vectors).map(|u| (norm2(u) - 1.0).abs()).fold(0.0, f64::max);
        for (i, u) in self.vectors.iter().enumerate() {
            let h = dot(&self.u0, u);
            c.min_handle_product = c.min_handle_product.min(h);
            c.max_reconstruction_error = c.max_reconstruction_error.max((self.x[i] - h * h).abs());
        }
        // Angles between near-null columns are ill-conditioned, so weight them
        // back to the scale of the lifted matrix.
        for i in 0..self.vectors.len() {
            for j in i + 1..self.vectors.len() {
                let p = dot(&self.vectors[i], &self.vectors[j]) * (self.x[i] * self.x[j]).max(0.0).sqrt();
                let v = match a.pair_sign(i, j) {
                    PairSign::Free => 0.0,
                    PairSign::NonNeg => (-p).max(0.0),
                    PairSign::NonPos => p.max(0.0),
                    PairSign::Zero => p.abs(),
                };
                c.max_sign_violation = c.max_sign_violation.max(v);
            }
        }
        if self.vectors.is_empty() {
            c.min_handle_product = 0.0;
        }
        c.passed = c.max_norm_error <= tol
            && c.min_handle_product >= -tol
            && c.max_sign_violation <= tol
            && c.max_reconstruction_error <= 5.0 * tol;
        c
    }
}

/// Factors a lifted point X̂ = YᵀY and normalizes the columns. Coordinates
/// with x_i ≤ tol are zeroed first and receive fresh unit vectors from the
/// null space of the factor.
pub fn extract_geometric_representation_cone(
    a: &AdjacencyCone,
    xhat: &SymMatrix,
    tol: f64,
) -> Result<GeometricRepresentation> {
    let n = a.n();
    if xhat.order() != n + 1 {
        return Err(Error::Dimension(format!("lifted order {} for {} vertices", xhat.order(), n)));
    }
    let zero: Vec<bool> = (0..=n).map(|i| i > 0 && xhat.get(i, i) <= tol).collect();
    let clean = SymMatrix::from_fn(n + 1, |i, j| if zero[i] || zero[j] { 0.0 } else { xhat.get(i, j) });
    let e = eigen_sym(&clean)?;
    if e.min() < -1e3 * tol.max(1e-9) {
        return Err(Error::Numerical { msg: "lifted point is not PSD".into(), residual: e.min() });
    }
    let cut = 1e-12 * e.max().max(1.0);
    let kept: Vec<bool> = e.values.iter().map(|&v| v > cut).collect();
    let column = |i: usize| -> Vec<f64> {
        (0..=n).map(|k| if kept[k] { e.values[k].sqrt() * e.vectors.get(i, k) } else { 0.0 }).collect()
    };
    let unit = |v: Vec<f64>| -> Result<Vec<f64>> {
        let s = norm2(&v);
        if s <= 0.0 {
            return Err(Error::Numerical { msg: "zero column in factor".into(), residual: s });
        }
        Ok(v.into_iter().map(|t| t / s).collect())
    };
    let u0 = unit(column(0))?;
    let mut spare = (0..=n).filter(|&k| !kept[k]);
    let mut vectors = Vec::with_capacity(n);
    for i in 1..=n {
        if zero[i] {
            let k = spare.next().ok_or(Error::Numerical { msg: "no null direction left".into(), residual: 0.0 })?;
            let mut v = vec![0.0; n + 1];
            v[k] = 1.0;
            vectors.push(v);
        } else {
            vectors.push(unit(column(i))?);
        }
    }
    let x = (1..=n).map(|i| xhat.get(0, i)).collect();
    Ok(GeometricRepresentation { u0, vectors, x })
}

pub fn extract_geometric_representation(
    g: &Graph,
    variant: ThetaVariant,
    xhat: &SymMatrix,
    tol: f64,
) -> Result<GeometricRepresentation> {
    extract_geometric_representation_cone(&AdjacencyCone::for_variant(g, variant), xhat, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::theta4_cone;

    #[test]
    fn stable_set_lift() {
        let g = Graph::cycle(5);
        let a = AdjacencyCone::for_variant(&g, ThetaVariant::Th);
        let v = [1.0, 1.0, 0.0, 1.0, 0.0, 0.0];
        let r = extract_geometric_representation(&g, ThetaVariant::Th, &SymMatrix::outer(&v), 1e-6).unwrap();
        for (i, u) in r.vectors.iter().enumerate() {
            let h = dot(&r.u0, u);
            if v[i + 1] == 1.0 {
                assert!((h - 1.0).abs() < 1e-9);
            } else {
                assert!(h.abs() < 1e-9);
            }
        }
        assert!(r.check(&a, 1e-6).passed);
    }

    #[test]
    fn empty_graph_all_ones() {
        let g = Graph::empty(4);
        let r =
            extract_geometric_representation(&g, ThetaVariant::Th, &SymMatrix::from_fn(5, |_, _| 1.0), 1e-6).unwrap();
        for u in &r.vectors {
            assert!((dot(&r.u0, u) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn c5_umbrella() {
        let g = Graph::cycle(5);
        let a = AdjacencyCone::for_variant(&g, ThetaVariant::Th);
        let (_, xhat) = theta4_cone(&a, &[1.0; 5], 1e-10).unwrap();
        let r = extract_geometric_representation_cone(&a, &xhat, 1e-6).unwrap();
        let c = r.check(&a, 1e-6);
        assert!(c.passed, "{c:?}");
        for u in &r.vectors {
            assert!((dot(&r.u0, u).powi(2) - 1.0 / 5f64.sqrt()).abs() < 1e-5);
        }
    }
}
