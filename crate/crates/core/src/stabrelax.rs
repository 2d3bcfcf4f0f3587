//! STAB, QSTAB and FRAC as corner oracles, the fractional chromatic number,
//! and certificate checks for their lifted descriptions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cones::{
    copositive_verify, cp_verify_factorization, schur_lift_member, AdjacencyCone, BaseConeKind, CopositiveVerdict,
    ThetaVariant, Verdict,
};
use crate::corners::{CornerKind, CornerOracle, PolytopeCorner};
use crate::error::{guard, Error, Result};
use crate::graph::{best_stable_set, enumerate_stable_sets, maximal_cliques, maximal_stable_sets, Graph, VertexSet};
use crate::linalg::{dot, is_psd, SymMatrix};
use crate::solvers::{solve_lp, Direction, LinearProgram, Sense, SolveStatus};

/// Vertex limit for the enumeration-backed oracles.
pub const MAX_ENUM_ORDER: usize = 20;

const LP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolytopeKind {
    Stab,
    Qstab,
    Frac,
}

/// STAB, QSTAB or FRAC of a graph.
#[derive(Clone, Debug)]
pub struct PolytopeOracle {
    graph: Graph,
    kind: PolytopeKind,
    /// Stable-set hull for STAB.
    hull: Option<PolytopeCorner>,
    /// Rows a with ⟨a, x⟩ ≤ 1 (maximal cliques or edges plus unit vectors).
    rows: Vec<Vec<f64>>,
}

fn clique_rows(g: &Graph) -> Result<Vec<Vec<f64>>> {
    Ok(maximal_cliques(g)?.into_iter().map(|k| k.indicator(g.n())).collect())
}

fn frac_rows(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut rows: Vec<Vec<f64>> =
        g.edges().into_iter().map(|(i, j)| VertexSet::from_vertices(&[i, j]).indicator(n)).collect();
    rows.extend((0..n).map(|i| VertexSet::from_vertices(&[i]).indicator(n)));
    rows
}

/// max ⟨w, x⟩ over x ≥ 0 with ⟨a, x⟩ ≤ 1 for every row.
fn row_lp(rows: &[Vec<f64>], w: &[f64]) -> Result<(f64, Vec<f64>)> {
    let mut lp = LinearProgram::new(w.to_vec(), Direction::Maximize);
    for r in rows {
        lp.add_row(r.clone(), Sense::Le, 1.0);
    }
    let rep = solve_lp(&lp, LP_TOL);
    match rep.status {
        SolveStatus::Optimal => Ok((rep.objective, rep.x)),
        status => Err(Error::Solver { status, gap: rep.gap }),
    }
}

pub fn stab_oracle(g: &Graph) -> Result<PolytopeOracle> {
    guard("STAB", g.n(), MAX_ENUM_ORDER)?;
    let points = maximal_stable_sets(g)?.into_iter().map(|s| s.indicator(g.n())).collect();
    let hull = PolytopeCorner::new(g.n(), points, CornerKind::Stab)?;
    Ok(PolytopeOracle { graph: g.clone(), kind: PolytopeKind::Stab, hull: Some(hull), rows: Vec::new() })
}

pub fn qstab_oracle(g: &Graph) -> Result<PolytopeOracle> {
    guard("QSTAB", g.n(), MAX_ENUM_ORDER)?;
    Ok(PolytopeOracle { graph: g.clone(), kind: PolytopeKind::Qstab, hull: None, rows: clique_rows(g)? })
}

pub fn frac_oracle(g: &Graph) -> PolytopeOracle {
    PolytopeOracle { graph: g.clone(), kind: PolytopeKind::Frac, hull: None, rows: frac_rows(g) }
}

impl PolytopeOracle {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn polytope(&self) -> PolytopeKind {
        self.kind
    }

    /// A vertex maximizing ⟨w, x⟩ (QSTAB and FRAC only).
    pub fn lp_vertex(&self, w: &[f64]) -> Result<Vec<f64>> {
        match self.kind {
            PolytopeKind::Stab => {
                let (_, s) = best_stable_set(&self.graph, &clamp(w))?;
                Ok(s.indicator(self.graph.n()))
            }
            _ => Ok(row_lp(&self.rows, w)?.1),
        }
    }
}

fn clamp(w: &[f64]) -> Vec<f64> {
    w.iter().map(|v| v.max(0.0)).collect()
}

impl CornerOracle for PolytopeOracle {
    fn dim(&self) -> usize {
        self.graph.n()
    }
    fn member(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() || x.iter().any(|v| *v < -tol) {
            return false;
        }
        match &self.hull {
            Some(h) => h.member(x, tol),
            None => self.rows.iter().all(|r| dot(r, x) <= 1.0 + tol),
        }
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        if w.len() != self.dim() {
            return Err(Error::Dimension(format!("{} weights for {} vertices", w.len(), self.dim())));
        }
        let w = clamp(w);
        match self.kind {
            PolytopeKind::Stab => Ok(best_stable_set(&self.graph, &w)?.0),
            _ => Ok(row_lp(&self.rows, &w)?.0),
        }
    }
    fn kind(&self) -> CornerKind {
        match self.kind {
            PolytopeKind::Stab => CornerKind::Stab,
            PolytopeKind::Qstab => CornerKind::Qstab,
            PolytopeKind::Frac => CornerKind::Frac,
        }
    }
    fn interior_radius(&self) -> f64 {
        // Singletons are stable, so the simplex lies in all three.
        1.0 / self.dim().max(1) as f64
    }
    fn generators(&self) -> Option<Vec<Vec<f64>>> {
        self.hull.as_ref().and_then(|h| h.generators())
    }
    fn facets(&self) -> Option<Vec<Vec<f64>>> {
        (self.kind != PolytopeKind::Stab).then(|| self.rows.clone())
    }
}

/// Fractional chromatic number with both LP solutions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiFractional {
    pub value: f64,
    /// Optimal point of QSTAB(Ḡ).
    pub x: Vec<f64>,
    /// Fractional cover by stable sets: (vertices, weight).
    pub cover: Vec<(Vec<usize>, f64)>,
    /// Primal value minus dual value.
    pub duality_gap: f64,
}

/// χ*(G; w) = δ*(QSTAB(Ḡ), w), solved over maximal stable sets of G with the
/// covering dual alongside.
pub fn chi_fractional(g: &Graph, w: &[f64], tol: f64) -> Result<ChiFractional> {
    guard("chi_fractional", g.n(), MAX_ENUM_ORDER)?;
    let n = g.n();
    if w.len() != n {
        return Err(Error::Dimension(format!("{} weights for {} vertices", w.len(), n)));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Precondition("weights must be finite and nonnegative".into()));
    }
    if n == 0 {
        return Ok(ChiFractional { value: 0.0, x: Vec::new(), cover: Vec::new(), duality_gap: 0.0 });
    }
    let sets = maximal_stable_sets(g)?;
    let rows: Vec<Vec<f64>> = sets.iter().map(|s| s.indicator(n)).collect();
    let (value, x) = row_lp(&rows, w)?;

    let mut dual = LinearProgram::new(vec![1.0; sets.len()], Direction::Minimize);
    for i in 0..n {
        dual.add_row(sets.iter().map(|s| if s.contains(i) { 1.0 } else { 0.0 }).collect(), Sense::Ge, w[i]);
    }
    let rep = solve_lp(&dual, LP_TOL);
    if rep.status != SolveStatus::Optimal {
        return Err(Error::Solver { status: rep.status, gap: rep.gap });
    }
    let cover =
        sets.iter().zip(&rep.x).filter(|(_, y)| **y > tol * 1e-3).map(|(s, y)| (s.iter().collect(), *y)).collect();
    Ok(ChiFractional { value, x, cover, duality_gap: value - rep.objective })
}

/// Result of the FRAC lifting check.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FracReport {
    pub vertices: usize,
    pub non_half_integral: usize,
    pub lift_failures: usize,
    pub members_sampled: usize,
    pub projection_failures: usize,
    pub passed: bool,
}

/// The lift of x used for FRAC vertices: diagonal x, x_i x_j on non-edges with x_i + x_j > 1.
pub fn frac_lift(g: &Graph, x: &[f64]) -> SymMatrix {
    let n = g.n();
    let mut xhat = SymMatrix::zeros(n + 1);
    xhat.set(0, 0, 1.0);
    for i in 0..n {
        xhat.set(0, i + 1, x[i]);
        xhat.set(i + 1, i + 1, x[i]);
        for j in i + 1..n {
            if !g.has_edge(i, j) && x[i] + x[j] > 1.0 + 1e-9 {
                xhat.set(i + 1, j + 1, x[i] * x[j]);
            }
        }
    }
    xhat
}

/// Membership in the lifted FRAC body: Schur lift of Q₂, zero on edges, diag X = x.
pub fn frac_lift_member(g: &Graph, xhat: &SymMatrix, tol: f64) -> bool {
    let n = g.n();
    if xhat.order() != n + 1 || (xhat.get(0, 0) - 1.0).abs() > tol {
        return false;
    }
    let a = AdjacencyCone::for_variant(g, ThetaVariant::Th);
    let block = SymMatrix::from_fn(n, |i, j| xhat.get(i + 1, j + 1));
    (1..=n).all(|i| (xhat.get(0, i) - xhat.get(i, i)).abs() <= tol)
        && a.member(&block, tol)
        && schur_lift_member(BaseConeKind::Quad2, xhat, tol).is_yes()
}

fn half_integral(x: &[f64], tol: f64) -> bool {
    x.iter().all(|v| [0.0, 0.5, 1.0].iter().any(|h| (v - h).abs() <= tol))
}

/// Vertices of FRAC from random objectives must be half-integral and lift;
/// random lifted members must project into FRAC.
pub fn frac_theta_body_check(g: &Graph, samples: usize, tol: f64, seed: u64) -> Result<FracReport> {
    if g.n() < 2 {
        return Err(Error::Precondition("FRAC lifting needs at least two vertices".into()));
    }
    guard("frac_theta_body_check", g.n(), 14)?;
    let n = g.n();
    let frac = frac_oracle(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = FracReport::default();
    for _ in 0..samples {
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.2..1.0)).collect();
        let x = frac.lp_vertex(&c)?;
        rep.vertices += 1;
        if !half_integral(&x, 1e-9) {
            rep.non_half_integral += 1;
        }
        if !frac_lift_member(g, &frac_lift(g, &x), tol) {
            rep.lift_failures += 1;
        }
    }
    for _ in 0..samples {
        let s = rng.gen_range(0.3..1.2);
        let x: Vec<f64> = (0..n).map(|_| (rng.gen::<f64>() * s).min(1.0)).collect();
        let mut xhat = frac_lift(g, &x);
        for i in 0..n {
            for j in i + 1..n {
                if !g.has_edge(i, j) {
                    xhat.set(i + 1, j + 1, rng.gen::<f64>() * x[i].min(x[j]));
                }
            }
        }
        if frac_lift_member(g, &xhat, tol) {
            rep.members_sampled += 1;
            if !frac.member(&x, tol) {
                rep.projection_failures += 1;
            }
        }
    }
    rep.passed = rep.non_half_integral == 0 && rep.lift_failures == 0 && rep.projection_failures == 0;
    Ok(rep)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct StabCpReport {
    pub stable_sets_checked: usize,
    pub lift_failures: usize,
    pub weights_checked: usize,
    /// max |value of the explicit optimizer − α(G; w)|.
    pub max_value_error: f64,
    /// Random feasible points of the CP program beating α(G; w).
    pub upper_violations: usize,
    pub passed: bool,
}

/// Certificates for STAB as the completely positive theta body.
///
/// Every stable set has a rank-one CP lift. For each w the program
/// max ⟨√w√wᵀ, X⟩ over trace-one CP matrices vanishing on edges is matched
/// by x̄ = √u/‖√u‖ with u = w on the best stable set, and random feasible
/// points built from stable-set rays never beat α(G; w).
pub fn stab_cp_identity_check(g: &Graph, weights: &[Vec<f64>], tol: f64, seed: u64) -> Result<StabCpReport> {
    guard("stab_cp_identity_check", g.n(), 14)?;
    let n = g.n();
    let a = AdjacencyCone::for_variant(g, ThetaVariant::Th);
    let mut rep = StabCpReport::default();
    for s in enumerate_stable_sets(g)? {
        let mut v = vec![1.0];
        v.extend(s.indicator(n));
        let xhat = SymMatrix::outer(&v);
        let block = SymMatrix::outer(&s.indicator(n));
        let ok = is_psd(&xhat, tol) && a.member(&block, tol) && cp_verify_factorization(&block, &[s.indicator(n)], tol);
        rep.stable_sets_checked += 1;
        if !ok {
            rep.lift_failures += 1;
        }
    }
    let stable: Vec<VertexSet> = enumerate_stable_sets(g)?.into_iter().filter(|s| !s.is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for w in weights {
        if w.len() != n {
            return Err(Error::Dimension(format!("{} weights for {} vertices", w.len(), n)));
        }
        let sw: Vec<f64> = w.iter().map(|v| v.max(0.0).sqrt()).collect();
        let (alpha, best) = best_stable_set(g, w)?;
        rep.weights_checked += 1;
        let norm = best.weight(w).sqrt();
        let value = if norm > 0.0 {
            let xbar: Vec<f64> = (0..n).map(|i| if best.contains(i) { sw[i] / norm } else { 0.0 }).collect();
            let x = SymMatrix::outer(&xbar);
            let feasible = (x.trace() - 1.0).abs() <= tol
                && a.member(&x, tol)
                && cp_verify_factorization(&x, &[xbar.clone()], tol);
            if !feasible {
                rep.lift_failures += 1;
            }
            x.quad_form(&sw)
        } else {
            0.0
        };
        rep.max_value_error = rep.max_value_error.max((value - alpha).abs());
        // Extreme rays of CP ∩ A are bbᵀ with b ≥ 0 supported on a stable set.
        for _ in 0..8 {
            let mut x = SymMatrix::zeros(n);
            for _ in 0..3 {
                let s = stable[rng.gen_range(0..stable.len())];
                let b: Vec<f64> = (0..n).map(|i| if s.contains(i) { rng.gen::<f64>() } else { 0.0 }).collect();
                x = x.add(&SymMatrix::outer(&b));
            }
            let t = x.trace();
            if t > 0.0 && x.scale(1.0 / t).quad_form(&sw) > alpha + tol * (1.0 + alpha) {
                rep.upper_violations += 1;
            }
        }
    }
    rep.passed = rep.lift_failures == 0 && rep.upper_violations == 0 && rep.max_value_error <= tol;
    Ok(rep)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct QstabCopositiveReport {
    pub extreme_points: usize,
    pub verified: usize,
    pub undecided: usize,
    /// Witnesses refuted by an explicit copositivity violation.
    pub refuted: usize,
    pub max_lift_entry: f64,
    pub members_sampled: usize,
    pub projection_failures: usize,
    pub passed: bool,
    /// True when some verdict was undecided.
    pub inconclusive: bool,
}

/// Bounded witness lift of x: diagonal x, (x_i + x_j)/2 on non-edges inside supp(x), 0 elsewhere.
pub fn qstab_witness(g: &Graph, x: &[f64]) -> SymMatrix {
    let n = g.n();
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            x[i]
        } else if !g.has_edge(i, j) && x[i] > 0.0 && x[j] > 0.0 {
            0.5 * (x[i] + x[j])
        } else {
            0.0
        }
    })
}

fn witness_verdict(g: &Graph, x: &[f64], tol: f64) -> (CopositiveVerdict, f64) {
    let w = qstab_witness(g, x);
    let slack = w.sub(&SymMatrix::outer(x));
    let entry = w.max_abs().max(x.iter().copied().fold(1.0, f64::max));
    (copositive_verify(&slack, tol), entry)
}

/// Certificates for QSTAB as the Schur-lifted copositive theta body.
pub fn qstab_copositive_identity_check(
    g: &Graph,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<QstabCopositiveReport> {
    guard("qstab_copositive_identity_check", g.n(), 10)?;
    let n = g.n();
    let q = qstab_oracle(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = QstabCopositiveReport::default();
    for _ in 0..samples {
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.2..1.0)).collect();
        let x: Vec<f64> = q.lp_vertex(&c)?.into_iter().map(|v| if v.abs() < 1e-12 { 0.0 } else { v }).collect();
        rep.extreme_points += 1;
        let (verdict, entry) = witness_verdict(g, &x, tol);
        rep.max_lift_entry = rep.max_lift_entry.max(entry);
        match verdict {
            CopositiveVerdict::VerifiedYes => rep.verified += 1,
            CopositiveVerdict::Undecided => rep.undecided += 1,
            CopositiveVerdict::VerifiedNo { .. } => rep.refuted += 1,
        }
    }
    for _ in 0..samples {
        let s = rng.gen_range(0.3..1.0);
        let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * s).collect();
        if let (CopositiveVerdict::VerifiedYes, _) = witness_verdict(g, &x, tol) {
            rep.members_sampled += 1;
            if !q.member(&x, tol) {
                rep.projection_failures += 1;
            }
        }
    }
    rep.inconclusive = rep.undecided > 0;
    rep.passed = rep.refuted == 0 && rep.projection_failures == 0 && rep.max_lift_entry <= 1.0 + tol;
    Ok(rep)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiCertificate {
    pub lambda: f64,
    /// Exact cover of w by weighted stable sets.
    pub cover: Vec<(Vec<usize>, f64)>,
    /// Nonnegative factors of λI − Y.
    pub factors: Vec<Vec<f64>>,
    pub y: SymMatrix,
    pub psd_ok: bool,
    pub factorization_ok: bool,
    /// Y vanishes on the diagonal and on edges.
    pub pattern_ok: bool,
    pub passed: bool,
}

/// Turns a cover with Σ_{S∋i} y_S ≥ w_i into one with equality by shrinking sets.
fn exact_cover(n: usize, cover: &[(Vec<usize>, f64)], w: &[f64]) -> Vec<(Vec<usize>, f64)> {
    let mut sets: Vec<(Vec<usize>, f64)> = cover.to_vec();
    for i in 0..n {
        let mut excess = sets.iter().filter(|(s, _)| s.contains(&i)).map(|(_, y)| y).sum::<f64>() - w[i];
        let mut k = 0;
        while excess > 0.0 && k < sets.len() {
            if sets[k].0.contains(&i) {
                let r = excess.min(sets[k].1);
                let smaller: Vec<usize> = sets[k].0.iter().copied().filter(|&v| v != i).collect();
                sets[k].1 -= r;
                sets.push((smaller, r));
                excess -= r;
            }
            k += 1;
        }
    }
    sets.retain(|(s, y)| *y > 0.0 && !s.is_empty());
    sets
}

/// Checks χ*(G; w) = λ against the lifted completely positive program by
/// building (λ, Y) from a fractional coloring.
///
/// With an exact cover y and c_i = √(λ/w_i), λI − Y = Σ y_S (c⊙χ^S)(c⊙χ^S)ᵀ
/// (plus √λ e_i for zero-weight vertices) has a nonnegative factorization, and
/// [[1, √wᵀ], [√w, λI − Y]] is PSD.
pub fn chi_fractional_copositive_certificate(g: &Graph, w: &[f64], tol: f64) -> Result<ChiCertificate> {
    guard("chi_fractional_copositive_certificate", g.n(), 10)?;
    let n = g.n();
    let chi = chi_fractional(g, w, tol)?;
    let lambda = chi.value;
    let cover = exact_cover(n, &chi.cover, w);
    let mut factors = Vec::new();
    for (s, y) in &cover {
        let f: Vec<f64> = (0..n).map(|i| if s.contains(&i) { (y * lambda / w[i]).sqrt() } else { 0.0 }).collect();
        factors.push(f);
    }
    for i in (0..n).filter(|&i| w[i] == 0.0) {
        let mut f = vec![0.0; n];
        f[i] = lambda.sqrt();
        factors.push(f);
    }
    let mut block = SymMatrix::zeros(n);
    for f in &factors {
        block = block.add(&SymMatrix::outer(f));
    }
    let y = SymMatrix::identity(n).scale(lambda).sub(&block);
    let mut lifted = SymMatrix::zeros(n + 1);
    lifted.set(0, 0, 1.0);
    for i in 0..n {
        lifted.set(0, i + 1, w[i].sqrt());
        for j in 0..n {
            lifted.set(i + 1, j + 1, block.get(i, j));
        }
    }
    let scale = 1.0 + lambda;
    let psd_ok = is_psd(&lifted, tol * scale);
    let factorization_ok = cp_verify_factorization(&block, &factors, tol * scale);
    let pattern_ok = (0..n).all(|i| y.get(i, i).abs() <= tol * scale)
        && g.edges().iter().all(|&(i, j)| y.get(i, j).abs() <= tol * scale);
    Ok(ChiCertificate {
        lambda,
        cover,
        factors,
        y,
        psd_ok,
        factorization_ok,
        pattern_ok,
        passed: psd_ok && factorization_ok && pattern_ok && chi.duality_gap.abs() <= tol * scale,
    })
}

/// Result of a sampled chain-inclusion check between two corners.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InclusionReport {
    pub sampled: usize,
    pub failures: usize,
}

/// Samples members of `inner` (scaled LP vertices under random weights) and checks them in `outer`.
pub fn check_inclusion(
    inner: &PolytopeOracle,
    outer: &dyn CornerOracle,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<InclusionReport> {
    let n = inner.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..samples {
        let c: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let t = rng.gen::<f64>();
        let x: Vec<f64> = inner.lp_vertex(&c)?.into_iter().map(|v| v * t).collect();
        if !outer.member(&x, tol) {
            failures += 1;
        }
    }
    Ok(InclusionReport { sampled: samples, failures })
}

/// Copositive verdict for a QSTAB point's witness, as a three-valued membership answer.
pub fn qstab_witness_verdict(g: &Graph, x: &[f64], tol: f64) -> Verdict {
    match witness_verdict(g, x, tol).0 {
        CopositiveVerdict::VerifiedYes => Verdict::Yes,
        CopositiveVerdict::VerifiedNo { .. } => Verdict::No,
        CopositiveVerdict::Undecided => Verdict::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn supports() {
        let c5 = Graph::cycle(5);
        let ones = vec![1.0; 5];
        assert_abs_diff_eq!(frac_oracle(&c5).support(&ones).unwrap(), 2.5, epsilon = 1e-9);
        assert_abs_diff_eq!(
            qstab_oracle(&Graph::complete(3)).unwrap().support(&[1.0; 3]).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(stab_oracle(&c5).unwrap().support(&ones).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(frac_oracle(&Graph::complete(3)).support(&[1.0; 3]).unwrap(), 1.5, epsilon = 1e-9);
    }

    #[test]
    fn memberships() {
        let c5 = Graph::cycle(5);
        let half = vec![0.5; 5];
        assert!(frac_oracle(&c5).member(&half, 1e-9));
        assert!(qstab_oracle(&c5).unwrap().member(&half, 1e-9));
        assert!(!stab_oracle(&c5).unwrap().member(&half, 1e-9));
        assert!(stab_oracle(&c5).unwrap().member(&[0.4; 5], 1e-9));
    }

    #[test]
    fn chi_examples() {
        assert_abs_diff_eq!(chi_fractional(&Graph::cycle(5), &[1.0; 5], 1e-9).unwrap().value, 2.5, epsilon = 1e-9);
        assert_abs_diff_eq!(chi_fractional(&Graph::complete(4), &[1.0; 4], 1e-9).unwrap().value, 4.0, epsilon = 1e-9);
        assert_abs_diff_eq!(chi_fractional(&Graph::empty(4), &[1.0; 4], 1e-9).unwrap().value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn frac_lifts() {
        let c5 = Graph::cycle(5);
        assert!(frac_lift_member(&c5, &frac_lift(&c5, &[0.5; 5]), 1e-12));
        let k2 = Graph::complete(2);
        assert!(frac_lift_member(&k2, &frac_lift(&k2, &[1.0, 0.0]), 1e-12));
        assert!(frac_lift_member(&k2, &frac_lift(&k2, &[0.0, 0.0]), 1e-12));
        assert!(!frac_lift_member(&k2, &frac_lift(&k2, &[0.6, 0.6]), 1e-12));
        let r = frac_theta_body_check(&Graph::petersen(), 40, 1e-9, 2).unwrap();
        assert!(r.passed && r.members_sampled > 0, "{r:?}");
    }

    #[test]
    fn stab_cp() {
        let w = vec![vec![1.0; 5], vec![0.3, 0.9, 0.1, 0.5, 0.7]];
        let r = stab_cp_identity_check(&Graph::cycle(5), &w, 1e-9, 1).unwrap();
        assert!(r.passed, "{r:?}");
        let r = stab_cp_identity_check(&Graph::petersen(), &[vec![1.0; 10]], 1e-9, 1).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn qstab_witnesses() {
        let k3 = Graph::complete(3);
        assert_eq!(qstab_witness_verdict(&k3, &[1.0, 0.0, 0.0], 1e-9), Verdict::Yes);
        let k2 = Graph::complete(2);
        assert_eq!(qstab_witness(&k2, &[0.5, 0.5]), SymMatrix::from_diag(&[0.5, 0.5]));
        assert_eq!(qstab_witness_verdict(&k2, &[0.5, 0.5], 1e-9), Verdict::Yes);
        assert_ne!(qstab_witness_verdict(&Graph::cycle(5), &[0.5; 5], 1e-9), Verdict::No);
        let r = qstab_copositive_identity_check(&Graph::cycle(5), 20, 1e-9, 3).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn chi_certificates() {
        let c = chi_fractional_copositive_certificate(&Graph::cycle(5), &[1.0; 5], 1e-9).unwrap();
        assert_abs_diff_eq!(c.lambda, 2.5, epsilon = 1e-9);
        assert!(c.passed, "{c:?}");
        let k = chi_fractional_copositive_certificate(&Graph::complete(4), &[1.0; 4], 1e-9).unwrap();
        assert_abs_diff_eq!(k.lambda, 4.0, epsilon = 1e-9);
        assert!(k.passed);
        let one = chi_fractional_copositive_certificate(&Graph::cycle(5), &[1.0, 0.0, 0.0, 0.0, 0.0], 1e-9).unwrap();
        assert_abs_diff_eq!(one.lambda, 1.0, epsilon = 1e-9);
        assert!(one.passed, "{one:?}");
    }
}
