//! Convex corners as membership/support oracles, with antiblockers and gauges.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cones::ThetaVariant;
use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::solvers::{solve_lp, Direction, LinearProgram, Sense, SolveStatus};

const GAUGE_ITERS: usize = 60;

/// Where a corner oracle comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CornerKind {
    Stab,
    Qstab,
    Frac,
    Theta(ThetaVariant),
    Box,
    Simplex,
    Antiblocker(Box<CornerKind>),
    Custom,
}

impl fmt::Display for CornerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CornerKind::Stab => write!(f, "STAB"),
            CornerKind::Qstab => write!(f, "QSTAB"),
            CornerKind::Frac => write!(f, "FRAC"),
            CornerKind::Theta(v) => write!(f, "TH[{v}]"),
            CornerKind::Box => write!(f, "BOX"),
            CornerKind::Simplex => write!(f, "SIMPLEX"),
            CornerKind::Antiblocker(k) => write!(f, "abl({k})"),
            CornerKind::Custom => write!(f, "CUSTOM"),
        }
    }
}

/// A compact lower-comprehensive convex set in the nonnegative orthant.
pub trait CornerOracle: Send + Sync {
    fn dim(&self) -> usize;

    fn member(&self, x: &[f64], tol: f64) -> bool;

    /// δ*(C, w) = max{⟨w, x⟩ : x ∈ C} for w ≥ 0.
    fn support(&self, w: &[f64]) -> Result<f64>;

    fn kind(&self) -> CornerKind;

    /// Some ε > 0 with εē ∈ C.
    fn interior_radius(&self) -> f64 {
        1.0 / (2.0 * self.dim().max(1) as f64)
    }

    /// Every member satisfies x ≤ bound·ē.
    fn coordinate_bound(&self) -> f64 {
        1.0
    }

    /// Points whose lower-comprehensive convex hull is C, when known.
    fn generators(&self) -> Option<Vec<Vec<f64>>> {
        None
    }

    /// Nonnegative a with C = {x ≥ 0 : ⟨a, x⟩ ≤ 1 for all a}, when known.
    fn facets(&self) -> Option<Vec<Vec<f64>>> {
        None
    }
}

fn check_dim(c: &dyn CornerOracle, w: &[f64]) -> Result<()> {
    if w.len() != c.dim() {
        return Err(Error::Dimension(format!("vector of length {} for a corner in dimension {}", w.len(), c.dim())));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Precondition("weights must be finite and nonnegative".into()));
    }
    Ok(())
}

/// The unit box [0,1]ⁿ.
#[derive(Clone, Debug)]
pub struct BoxCorner(pub usize);

impl CornerOracle for BoxCorner {
    fn dim(&self) -> usize {
        self.0
    }
    fn member(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.0 && x.iter().all(|&v| v >= -tol && v <= 1.0 + tol)
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(w.iter().sum())
    }
    fn kind(&self) -> CornerKind {
        CornerKind::Box
    }
    fn interior_radius(&self) -> f64 {
        1.0
    }
    fn facets(&self) -> Option<Vec<Vec<f64>>> {
        Some(unit_vectors(self.0))
    }
}

/// The simplex {x ≥ 0 : Σx ≤ 1}.
#[derive(Clone, Debug)]
pub struct SimplexCorner(pub usize);

impl CornerOracle for SimplexCorner {
    fn dim(&self) -> usize {
        self.0
    }
    fn member(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.0 && x.iter().all(|&v| v >= -tol) && x.iter().sum::<f64>() <= 1.0 + tol
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(w.iter().copied().fold(0.0, f64::max))
    }
    fn kind(&self) -> CornerKind {
        CornerKind::Simplex
    }
    fn interior_radius(&self) -> f64 {
        1.0 / self.0.max(1) as f64
    }
    fn generators(&self) -> Option<Vec<Vec<f64>>> {
        Some(unit_vectors(self.0))
    }
    fn facets(&self) -> Option<Vec<Vec<f64>>> {
        Some(vec![vec![1.0; self.0]])
    }
}

fn unit_vectors(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect()).collect()
}

/// A corner given by a membership closure and an optional support closure.
pub struct FnCorner {
    pub n: usize,
    pub radius: f64,
    pub bound: f64,
    #[allow(clippy::type_complexity)]
    pub member_fn: Box<dyn Fn(&[f64], f64) -> bool + Send + Sync>,
    #[allow(clippy::type_complexity)]
    pub support_fn: Option<Box<dyn Fn(&[f64]) -> f64 + Send + Sync>>,
}

impl CornerOracle for FnCorner {
    fn dim(&self) -> usize {
        self.n
    }
    fn member(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.n && (self.member_fn)(x, tol)
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        match &self.support_fn {
            Some(f) => Ok(f(w)),
            None => Err(Error::Unsupported("custom corner without a support function".into())),
        }
    }
    fn kind(&self) -> CornerKind {
        CornerKind::Custom
    }
    fn interior_radius(&self) -> f64 {
        self.radius
    }
    fn coordinate_bound(&self) -> f64 {
        self.bound
    }
}

/// Lower-comprehensive polytope from explicit generators (e.g. stable-set incidence vectors).
#[derive(Clone, Debug)]
pub struct PolytopeCorner {
    n: usize,
    points: Vec<Vec<f64>>,
    kind: CornerKind,
    radius: f64,
}

impl PolytopeCorner {
    pub fn new(n: usize, points: Vec<Vec<f64>>, kind: CornerKind) -> Result<Self> {
        if points.iter().any(|p| p.len() != n || p.iter().any(|v| *v < 0.0)) {
            return Err(Error::Dimension("generators must be nonnegative vectors of the corner's dimension".into()));
        }
        // εē with ε = 1/n is a convex combination of scaled-down generators
        // when every coordinate is covered by some generator with value ≥ 1.
        let radius = (0..n).map(|i| points.iter().map(|p| p[i]).fold(0.0, f64::max)).fold(f64::INFINITY, f64::min)
            / n.max(1) as f64;
        Ok(PolytopeCorner { n, points, kind, radius })
    }
}

impl CornerOracle for PolytopeCorner {
    fn dim(&self) -> usize {
        self.n
    }
    fn member(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.n || x.iter().any(|v| *v < -tol) {
            return false;
        }
        // x ≤ Σ λ_k p_k, Σλ = 1, λ ≥ 0: feasibility LP minimizing total shortfall.
        let k = self.points.len();
        let mut obj = vec![0.0; k + self.n];
        obj[k..].iter_mut().for_each(|c| *c = 1.0);
        let mut lp = LinearProgram::new(obj, Direction::Minimize);
        for i in 0..self.n {
            let mut row: Vec<f64> = self.points.iter().map(|p| p[i]).collect();
            row.extend((0..self.n).map(|j| if j == i { 1.0 } else { 0.0 }));
            lp.add_row(row, Sense::Ge, x[i].max(0.0));
        }
        let mut sum = vec![1.0; k];
        sum.extend(vec![0.0; self.n]);
        lp.add_row(sum, Sense::Eq, 1.0);
        let r = solve_lp(&lp, 1e-10);
        r.status == SolveStatus::Optimal && r.objective <= tol.max(1e-9)
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(self.points.iter().map(|p| dot(p, w)).fold(0.0, f64::max))
    }
    fn kind(&self) -> CornerKind {
        self.kind.clone()
    }
    fn interior_radius(&self) -> f64 {
        self.radius
    }
    fn coordinate_bound(&self) -> f64 {
        self.points.iter().flatten().copied().fold(0.0, f64::max)
    }
    fn generators(&self) -> Option<Vec<Vec<f64>>> {
        Some(self.points.clone())
    }
}

/// max ⟨w, y⟩ over {y ≥ 0 : ⟨p, y⟩ ≤ 1 for every p}.
fn facet_lp_support(points: &[Vec<f64>], w: &[f64]) -> Result<f64> {
    let mut lp = LinearProgram::new(w.to_vec(), Direction::Maximize);
    for p in points {
        lp.add_row(p.clone(), Sense::Le, 1.0);
    }
    let r = solve_lp(&lp, 1e-10);
    match r.status {
        SolveStatus::Optimal => Ok(r.objective),
        status => Err(Error::Solver { status, gap: r.gap }),
    }
}

/// abl(C) = {y ≥ 0 : ⟨x, y⟩ ≤ 1 for all x ∈ C}.
#[derive(Clone)]
pub struct Antiblocker {
    inner: Arc<dyn CornerOracle>,
    gauge_tol: f64,
}

impl Antiblocker {
    pub fn new(inner: Arc<dyn CornerOracle>) -> Self {
        Antiblocker { inner, gauge_tol: 1e-9 }
    }

    pub fn with_gauge_tol(mut self, tol: f64) -> Self {
        self.gauge_tol = tol;
        self
    }

    pub fn inner(&self) -> &Arc<dyn CornerOracle> {
        &self.inner
    }
}

impl CornerOracle for Antiblocker {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn member(&self, y: &[f64], tol: f64) -> bool {
        if y.len() != self.dim() || y.iter().any(|v| *v < -tol) {
            return false;
        }
        let y: Vec<f64> = y.iter().map(|v| v.max(0.0)).collect();
        matches!(self.inner.support(&y), Ok(s) if s <= 1.0 + tol)
    }
    fn support(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        if let Some(f) = self.inner.facets() {
            return Ok(f.iter().map(|a| dot(a, w)).fold(0.0, f64::max));
        }
        if let Some(g) = self.inner.generators() {
            return facet_lp_support(&g, w);
        }
        gauge(self.inner.as_ref(), w, self.gauge_tol)
    }
    fn kind(&self) -> CornerKind {
        CornerKind::Antiblocker(Box::new(self.inner.kind()))
    }
    fn interior_radius(&self) -> f64 {
        // C ⊆ bound·[0,1]ⁿ gives {y ≥ 0 : Σy ≤ 1/bound} ⊆ abl(C).
        1.0 / (self.dim().max(1) as f64 * self.inner.coordinate_bound())
    }
    fn coordinate_bound(&self) -> f64 {
        1.0 / self.inner.interior_radius()
    }
    fn generators(&self) -> Option<Vec<Vec<f64>>> {
        self.inner.facets()
    }
    fn facets(&self) -> Option<Vec<Vec<f64>>> {
        self.inner.generators()
    }
}

pub fn antiblocker(c: Arc<dyn CornerOracle>) -> Antiblocker {
    Antiblocker::new(c)
}

fn gauge_by(c: &dyn CornerOracle, w: &[f64], tol: f64, inside: impl Fn(&[f64]) -> bool) -> Result<f64> {
    check_dim(c, w)?;
    let wmax = w.iter().copied().fold(0.0, f64::max);
    if wmax == 0.0 {
        return Ok(0.0);
    }
    let eps = c.interior_radius();
    if !(eps > 0.0) {
        return Err(Error::Precondition("corner has no interior".into()));
    }
    let scaled = |lam: f64| -> Vec<f64> { w.iter().map(|v| v / lam).collect() };
    let mut hi = wmax / eps;
    let mut grow = 0;
    while !inside(&scaled(hi)) {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(Error::Numerical { msg: "gauge bracket did not close".into(), residual: hi });
        }
    }
    let mut lo = 0.0;
    for _ in 0..GAUGE_ITERS {
        if hi - lo <= 0.25 * tol * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if inside(&scaled(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// γ(C, w) = min{λ ≥ 0 : w ∈ λC} by bisection on membership.
pub fn gauge(c: &dyn CornerOracle, w: &[f64], tol: f64) -> Result<f64> {
    gauge_by(c, w, tol, |x| c.member(x, tol))
}

/// Gauge computed from points pushed slightly outward, so only the interior of C is probed.
pub fn gauge_strict(c: &dyn CornerOracle, w: &[f64], tol: f64) -> Result<f64> {
    gauge_by(c, w, tol, |x| {
        let y: Vec<f64> = x.iter().map(|v| v * (1.0 + tol)).collect();
        c.member(&y, 0.0)
    })
}

/// Extended nonnegative reals for the min-max ratio objective.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RatioValue {
    Finite(f64),
    Infinite,
}

impl RatioValue {
    /// a/b with 0/0 = 0 and positive/0 = +∞.
    pub fn ratio(a: f64, b: f64) -> RatioValue {
        if b > 0.0 {
            RatioValue::Finite(a / b)
        } else if a == 0.0 {
            RatioValue::Finite(0.0)
        } else {
            RatioValue::Infinite
        }
    }

    pub fn max(self, other: RatioValue) -> RatioValue {
        match (self, other) {
            (RatioValue::Finite(a), RatioValue::Finite(b)) => RatioValue::Finite(a.max(b)),
            _ => RatioValue::Infinite,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            RatioValue::Finite(v) => Some(v),
            RatioValue::Infinite => None,
        }
    }
}

/// max_i w_i / x_i under the extended conventions.
pub fn max_ratio(w: &[f64], x: &[f64]) -> RatioValue {
    w.iter().zip(x).fold(RatioValue::Finite(0.0), |acc, (&a, &b)| acc.max(RatioValue::ratio(a, b)))
}

/// min over x ∈ C of max_i w_i/x_i, evaluated through the gauge.
///
/// The point x = w/γ lies in C and attains the value γ.
pub fn min_max_ratio(c: &dyn CornerOracle, w: &[f64], tol: f64) -> Result<RatioValue> {
    let g = gauge(c, w, tol)?;
    if g == 0.0 {
        return Ok(RatioValue::Finite(0.0));
    }
    let x: Vec<f64> = w.iter().map(|v| v / g).collect();
    Ok(max_ratio(w, &x))
}

/// Outcome of the randomized corner axiom checks.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CornerAxiomReport {
    pub bounded: bool,
    pub lower_comprehensive: bool,
    pub convex: bool,
    pub interior: bool,
    pub members_sampled: usize,
    pub failures: Vec<String>,
}

impl CornerAxiomReport {
    pub fn passed(&self) -> bool {
        self.bounded && self.lower_comprehensive && self.convex && self.interior
    }
}

fn random_direction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..1.0) }).collect();
        if d.iter().any(|v| *v > 0.0) {
            return d;
        }
    }
}

/// Random member obtained by scaling a direction inside the corner along its gauge.
fn sample_member<R: Rng + ?Sized>(c: &dyn CornerOracle, tol: f64, rng: &mut R) -> Option<Vec<f64>> {
    let d = random_direction(c.dim(), rng);
    let g = gauge(c, &d, 1e-6).ok()?;
    let s: f64 = rng.gen_range(0.0..1.0);
    Some(d.iter().map(|v| v * s / (g * (1.0 + 1e-6) + tol)).collect())
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|a| format!("{a:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Randomized check of boundedness, lower-comprehensiveness, convexity and interior.
pub fn check_corner_axioms<R: Rng + ?Sized>(
    c: &dyn CornerOracle,
    samples: usize,
    tol: f64,
    rng: &mut R,
) -> CornerAxiomReport {
    let n = c.dim();
    let mut rep = CornerAxiomReport {
        bounded: true,
        lower_comprehensive: true,
        convex: true,
        interior: true,
        ..Default::default()
    };

    let eps = c.interior_radius();
    if !c.member(&vec![eps; n], tol) || !c.member(&vec![0.0; n], tol) {
        rep.interior = false;
        rep.failures.push(format!("interior: {eps:.4}·ē or 0 is not a member"));
    }
    let bound = c.coordinate_bound();
    for i in 0..n {
        let mut x = vec![0.0; n];
        x[i] = bound * 1.01 + 1e-3;
        if c.member(&x, tol) {
            rep.bounded = false;
            rep.failures.push(format!("bounded: {} is a member", fmt_vec(&x)));
        }
    }

    let mut members = Vec::new();
    for _ in 0..samples {
        let Some(x) = sample_member(c, tol, rng) else { continue };
        if !c.member(&x, tol) {
            continue;
        }
        if x.iter().any(|v| *v > bound + tol) {
            rep.bounded = false;
            rep.failures.push(format!("bounded: member {} exceeds {bound}", fmt_vec(&x)));
        }
        let y: Vec<f64> = x.iter().map(|v| v * rng.gen_range(0.0..1.0)).collect();
        if !c.member(&y, tol) {
            rep.lower_comprehensive = false;
            rep.failures.push(format!("lower-comprehensive: {} ≤ {} but not a member", fmt_vec(&y), fmt_vec(&x)));
        }
        members.push(x);
    }
    rep.members_sampled = members.len();

    // Midpoints of random member pairs, and symmetric pairs around diagonal probes tē.
    for k in 0..samples {
        if members.len() >= 2 {
            let a = &members[rng.gen_range(0..members.len())];
            let b = &members[rng.gen_range(0..members.len())];
            let m: Vec<f64> = a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect();
            if !c.member(&m, tol) {
                rep.convex = false;
                rep.failures.push(format!("convexity: midpoint {} of {} and {}", fmt_vec(&m), fmt_vec(a), fmt_vec(b)));
            }
        }
        let t = bound * (k % 8 + 1) as f64 / 16.0;
        let m = vec![t; n];
        let delta: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0) * t * 0.25).collect();
        let a: Vec<f64> = m.iter().zip(&delta).map(|(p, d)| p + d).collect();
        let b: Vec<f64> = m.iter().zip(&delta).map(|(p, d)| p - d).collect();
        if c.member(&a, tol) && c.member(&b, tol) && !c.member(&m, tol) {
            rep.convex = false;
            rep.failures.push(format!("convexity: midpoint {} of {} and {}", fmt_vec(&m), fmt_vec(&a), fmt_vec(&b)));
        }
    }
    rep.failures.truncate(20);
    rep
}

/// Outcome of the abl∘abl = id check.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub passed: bool,
    pub points_checked: usize,
    pub membership_mismatches: usize,
    pub support_max_diff: f64,
}

/// Compares C with abl(abl(C)) on sampled points and weights.
pub fn check_involution<R: Rng + ?Sized>(
    c: Arc<dyn CornerOracle>,
    samples: usize,
    tol: f64,
    rng: &mut R,
) -> InvolutionReport {
    let n = c.dim();
    let double =
        Antiblocker::new(Arc::new(Antiblocker::new(c.clone()).with_gauge_tol(tol * 0.1))).with_gauge_tol(tol * 0.1);
    let mut rep = InvolutionReport::default();
    let band = 1e3 * tol;
    for _ in 0..samples {
        let d = random_direction(n, rng);
        let Ok(g) = gauge(c.as_ref(), &d, tol * 0.1) else { continue };
        let s: f64 = rng.gen_range(0.0..1.5);
        if (s - 1.0).abs() < band {
            continue;
        }
        let x: Vec<f64> = d.iter().map(|v| v * s / g).collect();
        rep.points_checked += 1;
        if c.member(&x, tol) != double.member(&x, tol) {
            rep.membership_mismatches += 1;
        }
        let w = random_direction(n, rng);
        match (c.support(&w), double.support(&w)) {
            (Ok(a), Ok(b)) => rep.support_max_diff = rep.support_max_diff.max((a - b).abs() / a.abs().max(1.0)),
            _ => rep.support_max_diff = f64::INFINITY,
        }
    }
    rep.passed = rep.membership_mismatches == 0 && rep.support_max_diff <= 10.0 * tol;
    rep
}

/// Outcome of the polar inequality check δ*(C,w)·δ*(abl C, v) ≥ ⟨w, v⟩.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PolarityReport {
    pub passed: bool,
    pub samples: usize,
    pub min_slack: f64,
}

pub fn check_polarity<R: Rng + ?Sized>(
    c: Arc<dyn CornerOracle>,
    samples: usize,
    tol: f64,
    rng: &mut R,
) -> Result<PolarityReport> {
    let n = c.dim();
    let abl = Antiblocker::new(c.clone()).with_gauge_tol(tol * 0.1);
    let mut rep = PolarityReport { passed: true, samples, min_slack: f64::INFINITY };
    for _ in 0..samples {
        let w = random_direction(n, rng);
        let v = random_direction(n, rng);
        let slack = c.support(&w)? * abl.support(&v)? - dot(&w, &v);
        rep.min_slack = rep.min_slack.min(slack);
        if slack < -tol * (1.0 + dot(&w, &v)) {
            rep.passed = false;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arc<C: CornerOracle + 'static>(c: C) -> Arc<dyn CornerOracle> {
        Arc::new(c)
    }

    #[test]
    fn box_and_simplex_are_antiblockers() {
        let n = 4;
        let abl_box = Antiblocker::new(arc(BoxCorner(n)));
        let abl_simplex = Antiblocker::new(arc(SimplexCorner(n)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.2)).collect();
            assert_eq!(abl_box.member(&y, 1e-12), SimplexCorner(n).member(&y, 1e-12));
            assert_eq!(abl_simplex.member(&y, 1e-12), BoxCorner(n).member(&y, 1e-12));
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            assert_abs_diff_eq!(abl_box.support(&w).unwrap(), SimplexCorner(n).support(&w).unwrap(), epsilon = 1e-12);
            assert_abs_diff_eq!(abl_simplex.support(&w).unwrap(), BoxCorner(n).support(&w).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn gauge_examples() {
        let w = [0.3, 0.9, 0.1];
        assert_abs_diff_eq!(gauge(&BoxCorner(3), &w, 1e-10).unwrap(), 0.9, epsilon = 1e-9);
        assert_abs_diff_eq!(gauge(&SimplexCorner(5), &[1.0; 5], 1e-10).unwrap(), 5.0, epsilon = 1e-8);
        assert_eq!(gauge(&SimplexCorner(3), &[0.0; 3], 1e-10).unwrap(), 0.0);
        assert!(gauge(&SimplexCorner(3), &[1.0, -1.0, 0.0], 1e-10).is_err());
        assert!(gauge(&SimplexCorner(3), &[1.0, 1.0], 1e-10).is_err());
    }

    #[test]
    fn gauge_equals_antiblocker_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts = vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![0.5, 0.5, 0.5]];
        let p = arc(PolytopeCorner::new(3, pts, CornerKind::Custom).unwrap());
        let abl = Antiblocker::new(p.clone());
        for _ in 0..30 {
            let w: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..1.0)).collect();
            let g = gauge(p.as_ref(), &w, 1e-9).unwrap();
            let g2 = gauge_strict(p.as_ref(), &w, 1e-9).unwrap();
            assert_abs_diff_eq!(g, abl.support(&w).unwrap(), epsilon = 1e-7);
            assert_abs_diff_eq!(g, g2, epsilon = 1e-7);
        }
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(RatioValue::ratio(0.0, 0.0), RatioValue::Finite(0.0));
        assert_eq!(RatioValue::ratio(1.0, 0.0), RatioValue::Infinite);
        assert_eq!(RatioValue::ratio(1.0, 2.0), RatioValue::Finite(0.5));
        assert_eq!(max_ratio(&[1.0, 0.0], &[0.5, 0.0]), RatioValue::Finite(2.0));
        assert_eq!(max_ratio(&[1.0, 1.0], &[0.5, 0.0]), RatioValue::Infinite);
        assert_eq!(min_max_ratio(&BoxCorner(3), &[0.0; 3], 1e-9).unwrap(), RatioValue::Finite(0.0));
        let r = min_max_ratio(&BoxCorner(3), &[1.0; 3], 1e-10).unwrap().finite().unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn axioms_on_standard_corners() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(check_corner_axioms(&BoxCorner(4), 50, 1e-9, &mut rng).passed());
        assert!(check_corner_axioms(&SimplexCorner(4), 50, 1e-9, &mut rng).passed());
    }

    #[test]
    fn punctured_corner_fails_convexity() {
        let n = 5;
        let punctured = FnCorner {
            n,
            radius: 0.1,
            bound: 1.0,
            member_fn: Box::new(|x, tol| {
                x.iter().all(|v| *v >= -tol && *v <= 1.0 + tol) && x.iter().any(|v| *v != 0.5)
            }),
            support_fn: None,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rep = check_corner_axioms(&punctured, 50, 1e-9, &mut rng);
        assert!(!rep.convex);
        assert!(rep.failures.iter().any(|f| f.starts_with("convexity")));
    }

    #[test]
    fn involution_on_standard_corners() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(check_involution(arc(BoxCorner(3)), 30, 1e-7, &mut rng).passed);
        assert!(check_involution(arc(SimplexCorner(3)), 30, 1e-7, &mut rng).passed);
    }

    #[test]
    fn polarity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let pts = vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]];
        let p = arc(PolytopeCorner::new(3, pts, CornerKind::Custom).unwrap());
        assert!(check_polarity(p, 50, 1e-8, &mut rng).unwrap().passed);
    }

    #[test]
    fn antiblocker_kind_tags() {
        let a = Antiblocker::new(arc(BoxCorner(2)));
        assert_eq!(a.kind().to_string(), "abl(BOX)");
    }
}
