//! The theta function of a sign-pattern cone by five routes, and the
//! identities relating them.
//!
//! Every route first restricts to the support of `w` and pads the result
//! back, so √w scalings never divide by zero.

mod duality;
mod geometry;
mod hoffman;
mod luz;

use serde::{Deserialize, Serialize};

pub use duality::{antiblocker_identity_check, polar_product_check, AntiblockerReport, Pairing, PolarProduct};
pub use geometry::{
    extract_geometric_representation, extract_geometric_representation_cone, GeometricCheck, GeometricRepresentation,
};
pub use hoffman::{hoffman_ratio, theta6_lower_search, theta6_lower_search_cone, Theta6Report};
pub use luz::{luz_theta, luz_upsilon_c, LuzReport, LuzThetaReport};

use crate::cones::{AdjacencyCone, PairSign, ThetaVariant};
use crate::corners::{gauge, CornerKind, CornerOracle};
use crate::error::{guard, Error, Result};
use crate::graph::Graph;
use crate::linalg::{eigen_sym, is_psd, lambda_max, SymMatrix};
use crate::solvers::{solve_sdp, Direction, SdpProblem, SdpReport, Sense, SolveStatus, SparseSym};

/// Largest vertex count the SDP routes accept.
pub const MAX_THETA_ORDER: usize = 20;

pub(crate) struct Restricted {
    pub keep: Vec<usize>,
    pub cone: AdjacencyCone,
    pub w: Vec<f64>,
    pub sw: Vec<f64>,
}

pub(crate) fn restrict(a: &AdjacencyCone, w: &[f64]) -> Result<Restricted> {
    guard("theta SDP", a.n(), MAX_THETA_ORDER)?;
    if w.len() != a.n() {
        return Err(Error::Dimension(format!("{} weights for {} vertices", w.len(), a.n())));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Precondition("weights must be finite and nonnegative".into()));
    }
    let keep: Vec<usize> = (0..a.n()).filter(|&i| w[i] > 0.0).collect();
    let wk: Vec<f64> = keep.iter().map(|&i| w[i]).collect();
    Ok(Restricted { cone: a.restrict(&keep), sw: wk.iter().map(|v| v.sqrt()).collect(), w: wk, keep })
}

/// Adds the sign pattern of `a` on the block starting at `off`.
fn add_pattern(p: &mut SdpProblem, a: &AdjacencyCone, off: usize) {
    for i in 0..a.n() {
        for j in i + 1..a.n() {
            let sense = match a.pair_sign(i, j) {
                PairSign::Zero => Sense::Eq,
                PairSign::NonNeg => Sense::Ge,
                PairSign::NonPos => Sense::Le,
                PairSign::Free => continue,
            };
            p.add_entry(i + off, j + off, sense, 0.0);
        }
    }
}

pub(crate) fn run_sdp(p: &SdpProblem, tol: f64) -> Result<SdpReport> {
    let r = solve_sdp(p, tol);
    let near = r.gap <= 1e3 * tol && r.primal_residual <= 1e3 * tol && r.dual_residual <= 1e3 * tol;
    match r.status {
        SolveStatus::Optimal => Ok(r),
        SolveStatus::MaxIter if near => Ok(r),
        status => Err(Error::Solver { status, gap: r.gap }),
    }
}

fn lifted_index(keep: &[usize]) -> Vec<usize> {
    std::iter::once(0).chain(keep.iter().map(|i| i + 1)).collect()
}

/// θ₃: max ⟨√w√wᵀ, X⟩ over tr X = 1, X ∈ A ∩ PSD. Returns the value and X*.
pub fn theta3_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<(f64, SymMatrix)> {
    let r = restrict(a, w)?;
    let n = a.n();
    let k = r.keep.len();
    if k == 0 {
        let mut x = SymMatrix::zeros(n);
        if n > 0 {
            x.set(0, 0, 1.0);
        }
        return Ok((0.0, x));
    }
    let mut p = SdpProblem::new(SymMatrix::outer(&r.sw), Direction::Maximize);
    let mut tr = SparseSym::new();
    for i in 0..k {
        tr.push_entry(i, i, 1.0);
    }
    p.add(tr, Sense::Eq, 1.0);
    add_pattern(&mut p, &r.cone, 0);
    let rep = run_sdp(&p, tol)?;
    let (value, x) = polish_theta3(&rep.x, &r.sw).unwrap_or((rep.objective, rep.x));
    Ok((value, x.embed(n, &r.keep)))
}

/// Rescales X̄ = D_{d^{-1/2}}(X) by the top eigenvector v of D_√w(X̄).
///
/// D_v(X̄) stays in the cone by scaling invariance, has trace one and value
/// λ_max(D_√w(X̄)), which matches the input value up to solver accuracy. Interior-point optima satisfy the
/// eigenvector identities only to √gap; the rescaled matrix satisfies them
/// to eigensolver accuracy. Returns None when v has mixed signs.
fn polish_theta3(x: &SymMatrix, sw: &[f64]) -> Option<(f64, SymMatrix)> {
    let d = x.diag();
    let dmax = d.iter().copied().fold(0.0, f64::max);
    let s: Vec<usize> = (0..d.len()).filter(|&i| d[i] >= 1e-6 * dmax && dmax > 0.0).collect();
    if s.is_empty() {
        return None;
    }
    let sd: Vec<f64> = s.iter().map(|&i| d[i].sqrt()).collect();
    let m = SymMatrix::from_fn(s.len(), |a, b| sw[s[a]] * sw[s[b]] * x.get(s[a], s[b]) / (sd[a] * sd[b]));
    let e = eigen_sym(&m).ok()?;
    let mut v = e.vector(0);
    if crate::linalg::dot(&v, &sd) < 0.0 {
        v.iter_mut().for_each(|t| *t = -*t);
    }
    if v.iter().any(|&t| t < 0.0) {
        return None;
    }
    let mut out = SymMatrix::zeros(x.order());
    for a in 0..s.len() {
        for b in 0..s.len() {
            out.set(s[a], s[b], v[a] * v[b] * x.get(s[a], s[b]) / (sd[a] * sd[b]));
        }
    }
    let value = out.quad_form(sw);
    let before = x.quad_form(sw);
    (value >= before - 1e-7 * (1.0 + before)).then_some((value, out))
}

pub fn theta3(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<(f64, SymMatrix)> {
    theta3_cone(&AdjacencyCone::for_variant(g, variant), w, tol)
}

/// Optimal dual pair of θ₂.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theta2Solution {
    pub value: f64,
    pub lambda: f64,
    /// Y* ∈ −A^Δ with zero diagonal.
    pub y: SymMatrix,
}

/// θ₂: min λ subject to λI − Y − √w√wᵀ ⪰ 0, Y ∈ −A^Δ, diag Y = 0.
///
/// Solved in the slack variable Z = λI − Y − √w√wᵀ.
pub fn theta2_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<Theta2Solution> {
    let r = restrict(a, w)?;
    let n = a.n();
    let k = r.keep.len();
    if k == 0 {
        return Ok(Theta2Solution { value: 0.0, lambda: 0.0, y: SymMatrix::zeros(n) });
    }
    let dual = r.cone.delta_dual()?;
    let mut p = SdpProblem::new(SymMatrix::identity(k).scale(1.0 / k as f64), Direction::Minimize);
    for i in 1..k {
        let mut c = SparseSym::new();
        c.push_entry(i, i, 1.0);
        c.push_entry(0, 0, -1.0);
        p.add(c, Sense::Eq, r.w[0] - r.w[i]);
    }
    for i in 0..k {
        for j in i + 1..k {
            // Y ∈ −A^Δ flips the sign of the Δ-dual pattern; Z_ij = −Y_ij − √(w_i w_j).
            let sense = match dual.pair_sign(i, j) {
                PairSign::Zero => Sense::Eq,
                PairSign::NonNeg => Sense::Ge,
                PairSign::NonPos => Sense::Le,
                PairSign::Free => continue,
            };
            p.add_entry(i, j, sense, -r.sw[i] * r.sw[j]);
        }
    }
    let rep = run_sdp(&p, tol)?;
    let z = &rep.x;
    let lambda = z.get(0, 0) + r.w[0];
    let y = SymMatrix::from_fn(k, |i, j| if i == j { 0.0 } else { -z.get(i, j) - r.sw[i] * r.sw[j] });
    let value = rep.objective + r.w.iter().sum::<f64>() / k as f64;
    Ok(Theta2Solution { value, lambda, y: y.embed(n, &r.keep) })
}

pub fn theta2(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<Theta2Solution> {
    theta2_cone(&AdjacencyCone::for_variant(g, variant), w, tol)
}

/// θ₄: support of TH(A) at w over the lifted variable X̂ of order n+1.
/// Returns the value and the lifted optimum (index 0 is the extra coordinate).
pub fn theta4_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<(f64, SymMatrix)> {
    let r = restrict(a, w)?;
    let n = a.n();
    let k = r.keep.len();
    let mut xhat = SymMatrix::zeros(n + 1);
    xhat.set(0, 0, 1.0);
    if k == 0 {
        return Ok((0.0, xhat));
    }
    let mut cost = SymMatrix::zeros(k + 1);
    for i in 0..k {
        cost.set(i + 1, i + 1, r.w[i]);
    }
    let mut p = SdpProblem::new(cost, Direction::Maximize);
    p.add_entry(0, 0, Sense::Eq, 1.0);
    for i in 1..=k {
        let mut c = SparseSym::new();
        c.push_entry(0, i, 1.0);
        c.push_entry(i, i, -1.0);
        p.add(c, Sense::Eq, 0.0);
    }
    add_pattern(&mut p, &r.cone, 1);
    let rep = run_sdp(&p, tol)?;
    Ok((rep.objective, rep.x.embed(n + 1, &lifted_index(&r.keep))))
}

pub fn theta4(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<f64> {
    Ok(theta4_cone(&AdjacencyCone::for_variant(g, variant), w, tol)?.0)
}

/// θ through the antiblocker: the gauge of TH(A^Δ) at w as one SDP.
///
/// After diagonal rescaling, w/t ∈ TH(A^Δ) becomes a lifted matrix with
/// X̂₀₀ = 1, X̂₀ᵢ = √wᵢ and every diagonal entry of X̂[V] equal to t.
pub fn theta_abl_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<f64> {
    let r = restrict(a, w)?;
    let k = r.keep.len();
    if k == 0 {
        return Ok(0.0);
    }
    let dual = r.cone.delta_dual()?;
    let mut cost = SymMatrix::zeros(k + 1);
    cost.set(1, 1, 1.0);
    let mut p = SdpProblem::new(cost, Direction::Minimize);
    p.add_entry(0, 0, Sense::Eq, 1.0);
    for i in 1..=k {
        p.add_entry(0, i, Sense::Eq, r.sw[i - 1]);
    }
    for i in 2..=k {
        let mut c = SparseSym::new();
        c.push_entry(i, i, 1.0);
        c.push_entry(1, 1, -1.0);
        p.add(c, Sense::Eq, 0.0);
    }
    add_pattern(&mut p, &dual, 1);
    Ok(run_sdp(&p, tol)?.objective)
}

pub fn theta_abl(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<f64> {
    theta_abl_cone(&AdjacencyCone::for_variant(g, variant), w, tol)
}

/// Largest t with X̂ − tI ⪰ 0 over lifts of x into TH(A). x ∈ TH(A) iff t ≥ 0.
pub fn theta_body_margin(a: &AdjacencyCone, x: &[f64], tol: f64) -> Result<f64> {
    if x.len() != a.n() {
        return Err(Error::Dimension(format!("point of length {} for order {}", x.len(), a.n())));
    }
    let keep: Vec<usize> = (0..a.n()).filter(|&i| x[i] > 0.0).collect();
    let k = keep.len();
    if k == 0 {
        return Ok(0.0);
    }
    let cone = a.restrict(&keep);
    let xs: Vec<f64> = keep.iter().map(|&i| x[i]).collect();
    // Z = X̂ − tI; minimize Z₀₀ = 1 − t.
    let mut cost = SymMatrix::zeros(k + 1);
    cost.set(0, 0, 1.0);
    let mut p = SdpProblem::new(cost, Direction::Minimize);
    for i in 1..=k {
        p.add_entry(0, i, Sense::Eq, xs[i - 1]);
        let mut c = SparseSym::new();
        c.push_entry(i, i, 1.0);
        c.push_entry(0, 0, -1.0);
        p.add(c, Sense::Eq, xs[i - 1] - 1.0);
    }
    add_pattern(&mut p, &cone, 1);
    Ok(1.0 - run_sdp(&p, tol)?.objective)
}

/// TH(A) as a corner oracle backed by SDPs.
#[derive(Clone, Debug)]
pub struct ThetaBody {
    cone: AdjacencyCone,
    kind: CornerKind,
    sdp_tol: f64,
}

impl ThetaBody {
    pub fn new(g: &Graph, variant: ThetaVariant, sdp_tol: f64) -> Self {
        ThetaBody { cone: AdjacencyCone::for_variant(g, variant), kind: CornerKind::Theta(variant), sdp_tol }
    }

    pub fn from_cone(cone: AdjacencyCone, sdp_tol: f64) -> Self {
        ThetaBody { cone, kind: CornerKind::Custom, sdp_tol }
    }

    pub fn cone(&self) -> &AdjacencyCone {
        &self.cone
    }

    /// A point of the body maximizing ⟨w, x⟩.
    pub fn argmax(&self, w: &[f64]) -> Result<Vec<f64>> {
        let (_, xhat) = theta4_cone(&self.cone, w, self.sdp_tol)?;
        Ok((1..xhat.order()).map(|i| xhat.get(0, i).max(0.0)).collect())
    }
}

impl CornerOracle for ThetaBody {
    fn dim(&self) -> usize {
        self.cone.n()
    }
    fn member(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() || x.iter().any(|v| *v < -tol || *v > 1.0 + tol) {
            return false;
        }
        let xc: Vec<f64> = x.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        matches!(theta_body_margin(&self.cone, &xc, self.sdp_tol), Ok(t) if t >= -tol)
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        Ok(theta4_cone(&self.cone, w, self.sdp_tol)?.0)
    }
    fn kind(&self) -> CornerKind {
        self.kind.clone()
    }
    fn interior_radius(&self) -> f64 {
        // Every e_i lies in the body, hence so does the simplex.
        1.0 / self.dim().max(1) as f64
    }
}

/// θ₁: min over x ∈ TH(A^Δ) of max_i w_i/x_i, i.e. the gauge of TH(A^Δ) at w, by bisection.
pub fn theta1_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<f64> {
    let r = restrict(a, w)?;
    if r.keep.is_empty() {
        return Ok(0.0);
    }
    let body = ThetaBody::from_cone(r.cone.delta_dual()?, tol * 0.1);
    gauge(&body, &r.w, tol)
}

pub fn theta1(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<f64> {
    theta1_cone(&AdjacencyCone::for_variant(g, variant), w, tol)
}

/// Floor for the eigenvector identity checks inside a certificate.
pub const EIGEN_IDENTITY_TOL: f64 = 1e-6;

/// Eigenvector identities at a θ₃ optimum.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct EigenIdentityReport {
    /// Largest diag(X*) entry on a zero-weight vertex.
    pub supp_violation: f64,
    /// ‖D_√w(X̄)√d − λ√d‖_∞.
    pub eigen_residual: f64,
    /// |λ_max(D_√w(X̄)) − √wᵀX*√w|.
    pub lambda_residual: f64,
    /// ‖X*√w − λ Diag(√w)⁺ d‖_∞.
    pub vector_residual: f64,
    pub lambda: f64,
    pub passed: bool,
}

pub fn eigen_identity_check(x_star: &SymMatrix, w: &[f64], tol: f64) -> Result<EigenIdentityReport> {
    let n = x_star.order();
    if w.len() != n {
        return Err(Error::Dimension("weights vs X* order".into()));
    }
    let d = x_star.diag();
    let dmax = d.iter().copied().fold(0.0, f64::max);
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let mut rep = EigenIdentityReport::default();
    rep.supp_violation = (0..n).filter(|&i| w[i] == 0.0).map(|i| d[i]).fold(0.0, f64::max);
    let quad = x_star.quad_form(&sw);
    if quad <= 0.0 || dmax <= 0.0 {
        rep.passed = rep.supp_violation <= tol;
        return Ok(rep);
    }
    // Indices with tiny diagonal carry no mass; dropping them avoids 1/√d blow-up.
    let s: Vec<usize> = (0..n).filter(|&i| d[i] >= 1e-6 * dmax).collect();
    let sd: Vec<f64> = s.iter().map(|&i| d[i].sqrt()).collect();
    let xbar = SymMatrix::from_fn(s.len(), |a, b| x_star.get(s[a], s[b]) / (sd[a] * sd[b]));
    let m = SymMatrix::from_fn(s.len(), |a, b| sw[s[a]] * xbar.get(a, b) * sw[s[b]]);
    let lambda = lambda_max(&m)?;
    let msd = m.mul_vec(&sd);
    rep.eigen_residual = msd.iter().zip(&sd).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
    rep.lambda_residual = (lambda - quad).abs();
    let xw = x_star.mul_vec(&sw);
    rep.vector_residual = (0..n)
        .map(|i| {
            let rhs = if sw[i] > 0.0 { lambda * d[i] / sw[i] } else { 0.0 };
            (xw[i] - rhs).abs()
        })
        .fold(0.0, f64::max);
    rep.lambda = lambda;
    let scale = 1.0 + lambda;
    rep.passed = rep.supp_violation <= tol
        && rep.eigen_residual <= tol * scale
        && rep.lambda_residual <= tol * scale
        && rep.vector_residual <= tol * scale;
    Ok(rep)
}

/// Residuals of the θ₃/θ₂ optimal pair.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub trace_residual: f64,
    pub primal_min_eig: f64,
    pub primal_pattern_ok: bool,
    pub dual_min_eig: f64,
    pub dual_pattern_ok: bool,
    pub complementarity: f64,
    pub eigen_identities: EigenIdentityReport,
}

impl CertificateChecks {
    pub fn passed(&self, tol: f64) -> bool {
        self.trace_residual <= tol
            && self.primal_min_eig >= -tol
            && self.primal_pattern_ok
            && self.dual_min_eig >= -tol
            && self.dual_pattern_ok
            && self.complementarity <= tol
            && self.eigen_identities.passed
    }
}

/// All five values with their optimal solutions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaCertificate {
    pub variant: Option<ThetaVariant>,
    pub weights: Vec<f64>,
    /// Antiblocker-support route.
    pub theta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub theta4: f64,
    pub x_star: SymMatrix,
    pub lambda_star: f64,
    pub y_star: SymMatrix,
    pub xhat_star: SymMatrix,
    /// Max pairwise difference divided by 1 + max value.
    pub discrepancy: f64,
    pub checks: CertificateChecks,
}

impl ThetaCertificate {
    pub fn values(&self) -> [f64; 5] {
        [self.theta, self.theta1, self.theta2, self.theta3, self.theta4]
    }

    pub fn value(&self) -> f64 {
        self.theta4
    }
}

pub fn discrepancy(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    (hi - lo) / (1.0 + hi.abs())
}

pub fn certify_all_thetas_cone(a: &AdjacencyCone, w: &[f64], tol: f64) -> Result<ThetaCertificate> {
    let sdp_tol = (tol * 1e-2).max(1e-12);
    // The eigenvector identities lose half the digits of the gap, so X* is solved tighter.
    let (t3, x_star) = theta3_cone(a, w, (tol * 1e-4).max(1e-12))?;
    let t2 = theta2_cone(a, w, sdp_tol)?;
    let (t4, xhat) = theta4_cone(a, w, sdp_tol)?;
    let t = theta_abl_cone(a, w, sdp_tol)?;
    let t1 = theta1_cone(a, w, tol * 1e-2)?;

    let n = a.n();
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let slack = SymMatrix::identity(n).scale(t2.lambda).sub(&t2.y).sub(&SymMatrix::outer(&sw));
    let neg_dual = t2.y.scale(-1.0);
    let min_eig = |m: &SymMatrix| if m.order() == 0 { Ok(0.0) } else { eigen_sym(m).map(|e| e.min()) };
    let checks = CertificateChecks {
        trace_residual: (x_star.trace() - 1.0).abs(),
        primal_min_eig: min_eig(&x_star)?,
        primal_pattern_ok: a.member(&x_star, tol),
        dual_min_eig: min_eig(&slack)?,
        dual_pattern_ok: a.delta_dual()?.member(&neg_dual, tol) && t2.y.diag().iter().all(|v| v.abs() <= tol),
        complementarity: x_star.dot(&slack),
        eigen_identities: eigen_identity_check(&x_star, w, tol.max(EIGEN_IDENTITY_TOL))?,
    };
    let values = [t, t1, t2.value, t3, t4];
    Ok(ThetaCertificate {
        variant: None,
        weights: w.to_vec(),
        theta: t,
        theta1: t1,
        theta2: t2.value,
        theta3: t3,
        theta4: t4,
        x_star,
        lambda_star: t2.lambda,
        y_star: t2.y,
        xhat_star: xhat,
        discrepancy: discrepancy(&values),
        checks,
    })
}

/// Computes θ, θ₁, θ₂, θ₃ and θ₄ with certificates for one variant.
pub fn certify_all_thetas(g: &Graph, variant: ThetaVariant, w: &[f64], tol: f64) -> Result<ThetaCertificate> {
    let mut c = certify_all_thetas_cone(&AdjacencyCone::for_variant(g, variant), w, tol)?;
    c.variant = Some(variant);
    Ok(c)
}

/// True iff `xhat` is a lift of a point of TH(A): PSD, X̂₀₀ = 1, X̂₀ᵢ = X̂ᵢᵢ and pattern.
pub fn is_lifted_member(a: &AdjacencyCone, xhat: &SymMatrix, tol: f64) -> bool {
    let n = a.n();
    if xhat.order() != n + 1 || (xhat.get(0, 0) - 1.0).abs() > tol || !is_psd(xhat, tol) {
        return false;
    }
    if (1..=n).any(|i| (xhat.get(0, i) - xhat.get(i, i)).abs() > tol) {
        return false;
    }
    a.member(&SymMatrix::from_fn(n, |i, j| xhat.get(i + 1, j + 1)), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = 1e-8;

    fn ones(n: usize) -> Vec<f64> {
        vec![1.0; n]
    }

    #[test]
    fn theta3_examples() {
        let s5 = 5f64.sqrt();
        let (v, x) = theta3(&Graph::cycle(5), ThetaVariant::Th, &ones(5), TOL).unwrap();
        assert_abs_diff_eq!(v, s5, epsilon = 1e-6);
        assert_abs_diff_eq!(x.trace(), 1.0, epsilon = 1e-7);
        assert_abs_diff_eq!(
            theta3(&Graph::complete(5), ThetaVariant::Th, &ones(5), TOL).unwrap().0,
            1.0,
            epsilon = 1e-6
        );
        let w = [0.3, 0.7, 0.2, 0.9];
        assert_abs_diff_eq!(theta3(&Graph::empty(4), ThetaVariant::Th, &w, TOL).unwrap().0, 2.1, epsilon = 1e-6);
    }

    #[test]
    fn theta2_examples() {
        let t = theta2(&Graph::cycle(5), ThetaVariant::Th, &ones(5), TOL).unwrap();
        assert_abs_diff_eq!(t.value, 5f64.sqrt(), epsilon = 1e-6);
        assert_abs_diff_eq!(t.lambda, 5f64.sqrt(), epsilon = 1e-6);
        let k2 = theta2(&Graph::complete(2), ThetaVariant::Th, &ones(2), TOL).unwrap();
        assert_abs_diff_eq!(k2.value, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(k2.y.get(0, 1), -1.0, epsilon = 1e-5);
        for v in ThetaVariant::ALL {
            assert_eq!(theta2(&Graph::cycle(5), v, &[0.0; 5], TOL).unwrap().value, 0.0);
        }
    }

    #[test]
    fn theta4_examples() {
        assert_abs_diff_eq!(
            theta4(&Graph::cycle(5), ThetaVariant::Th, &ones(5), TOL).unwrap(),
            5f64.sqrt(),
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(theta4(&Graph::petersen(), ThetaVariant::Th, &ones(10), TOL).unwrap(), 4.0, epsilon = 1e-6);
        assert_abs_diff_eq!(
            theta4(&Graph::complete(3), ThetaVariant::ThPlus, &ones(3), TOL).unwrap(),
            1.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn theta1_examples() {
        assert_abs_diff_eq!(
            theta1(&Graph::cycle(5), ThetaVariant::Th, &ones(5), 1e-8).unwrap(),
            5f64.sqrt(),
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(theta1(&Graph::empty(4), ThetaVariant::Th, &ones(4), 1e-8).unwrap(), 4.0, epsilon = 1e-6);
        assert_abs_diff_eq!(
            theta1(&Graph::complete(4), ThetaVariant::Th, &ones(4), 1e-8).unwrap(),
            1.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn certify_c5() {
        let c = certify_all_thetas(&Graph::cycle(5), ThetaVariant::Th, &ones(5), 1e-7).unwrap();
        for v in c.values() {
            assert_abs_diff_eq!(v, 5f64.sqrt(), epsilon = 1e-5);
        }
        assert!(c.discrepancy <= 1e-5);
        assert!(c.checks.passed(1e-6), "{:?}", c.checks);

        let p = certify_all_thetas(&Graph::cycle(5), ThetaVariant::ThPrime, &ones(5), 1e-7).unwrap();
        assert!(p.discrepancy <= 1e-5);
        assert!(p.value() <= c.value() + 1e-6);
    }

    #[test]
    fn random_graphs_all_variants_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let g = Graph::random_gnp(8, 0.5, &mut rng);
            let w: Vec<f64> = (0..8).map(|_| rng.gen::<f64>()).collect();
            for v in ThetaVariant::ALL {
                let c = certify_all_thetas(&g, v, &w, 1e-7).unwrap();
                assert!(c.discrepancy <= 1e-5, "{v:?} {:?}", c.values());
                assert!(c.checks.passed(1e-6), "{v:?} {:?}", c.checks);
            }
        }
    }

    #[test]
    fn zero_weights_are_padded() {
        let g = Graph::cycle(5);
        let w = [1.0, 0.0, 0.5, 0.0, 0.7];
        let c = certify_all_thetas(&g, ThetaVariant::Th, &w, 1e-7).unwrap();
        assert!(c.discrepancy <= 1e-5);
        assert_eq!(c.x_star.order(), 5);
        assert_eq!(c.xhat_star.order(), 6);
        assert_eq!(c.x_star.get(1, 1), 0.0);
    }

    #[test]
    fn margin_sign_tracks_membership() {
        let a = AdjacencyCone::for_variant(&Graph::cycle(5), ThetaVariant::Th);
        let inner = vec![0.4; 5];
        let outer = vec![0.48; 5];
        assert!(theta_body_margin(&a, &inner, 1e-9).unwrap() > 0.0);
        assert!(theta_body_margin(&a, &outer, 1e-9).unwrap() < 0.0);
    }

    #[test]
    fn lifted_member_of_stable_set() {
        let a = AdjacencyCone::for_variant(&Graph::cycle(5), ThetaVariant::Th);
        let v = [1.0, 1.0, 0.0, 1.0, 0.0, 0.0];
        assert!(is_lifted_member(&a, &SymMatrix::outer(&v), 1e-12));
        let bad = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
        assert!(!is_lifted_member(&a, &SymMatrix::outer(&bad), 1e-12));
    }
}
