//! Sign-pattern cones, their Δ-duals, PSD and Schur liftings.

mod copositive;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use copositive::{
    copositive_verify, cp_separating_witness, cp_verdict, cp_verify_factorization, pn_split, CopositiveVerdict,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{diag_scale, is_psd, SymMatrix};

/// Which classical theta body a cone encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaVariant {
    /// Zero on edges.
    Th,
    /// Zero on edges, nonnegative on non-edges.
    ThPrime,
    /// Nonpositive on edges.
    ThPlus,
}

impl ThetaVariant {
    pub const ALL: [ThetaVariant; 3] = [ThetaVariant::Th, ThetaVariant::ThPrime, ThetaVariant::ThPlus];

    pub fn tag(self) -> &'static str {
        match self {
            ThetaVariant::Th => "th",
            ThetaVariant::ThPrime => "thp",
            ThetaVariant::ThPlus => "thplus",
        }
    }
}

impl fmt::Display for ThetaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ThetaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "th" => Ok(ThetaVariant::Th),
            "thp" => Ok(ThetaVariant::ThPrime),
            "thplus" => Ok(ThetaVariant::ThPlus),
            other => Err(Error::Precondition(format!("unknown variant '{other}' (expected th, thp or thplus)"))),
        }
    }
}

/// Constraint an adjacency cone places on one off-diagonal entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairSign {
    Free,
    NonNeg,
    NonPos,
    Zero,
}

/// The cone A(V⁺,V⁻;E⁺,E⁻): X_ij ≥ 0 on E⁺, X_ij ≤ 0 on E⁻, X_ii ≥ 0 on V⁺, X_ii ≤ 0 on V⁻.
///
/// Cones built from graphs leave the diagonal unrestricted (V⁺ = V⁻ = ∅),
/// so they contain every diagonal matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyCone {
    n: usize,
    e_plus: Vec<u64>,
    e_minus: Vec<u64>,
    v_plus: u64,
    v_minus: u64,
}

fn pair_masks(n: usize, pairs: &[(usize, usize)]) -> Vec<u64> {
    let mut m = vec![0u64; n];
    for &(i, j) in pairs {
        assert!(i != j && i < n && j < n, "invalid pair ({i},{j})");
        m[i] |= 1 << j;
        m[j] |= 1 << i;
    }
    m
}

impl AdjacencyCone {
    /// A(E⁺, E⁻) with unrestricted diagonal.
    pub fn new(n: usize, e_plus: &[(usize, usize)], e_minus: &[(usize, usize)]) -> Self {
        AdjacencyCone { n, e_plus: pair_masks(n, e_plus), e_minus: pair_masks(n, e_minus), v_plus: 0, v_minus: 0 }
    }

    /// The node-restricted form A(V⁺,V⁻;E⁺,E⁻).
    pub fn with_diagonal(
        n: usize,
        v_plus: &[usize],
        v_minus: &[usize],
        e_plus: &[(usize, usize)],
        e_minus: &[(usize, usize)],
    ) -> Self {
        let mut c = Self::new(n, e_plus, e_minus);
        c.v_plus = v_plus.iter().fold(0, |m, &v| m | 1 << v);
        c.v_minus = v_minus.iter().fold(0, |m, &v| m | 1 << v);
        c
    }

    /// The whole space of symmetric matrices.
    pub fn free(n: usize) -> Self {
        Self::new(n, &[], &[])
    }

    pub fn for_variant(g: &Graph, variant: ThetaVariant) -> Self {
        let e = g.edges();
        match variant {
            ThetaVariant::Th => Self::new(g.n(), &e, &e),
            ThetaVariant::ThPrime => {
                let all: Vec<(usize, usize)> = (0..g.n()).flat_map(|i| (i + 1..g.n()).map(move |j| (i, j))).collect();
                Self::new(g.n(), &all, &e)
            }
            ThetaVariant::ThPlus => Self::new(g.n(), &[], &e),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_free_diagonal(&self) -> bool {
        self.v_plus == 0 && self.v_minus == 0
    }

    pub fn pair_sign(&self, i: usize, j: usize) -> PairSign {
        let p = self.e_plus[i] >> j & 1 == 1;
        let m = self.e_minus[i] >> j & 1 == 1;
        match (p, m) {
            (true, true) => PairSign::Zero,
            (true, false) => PairSign::NonNeg,
            (false, true) => PairSign::NonPos,
            (false, false) => PairSign::Free,
        }
    }

    /// Restriction to the vertices in `keep` (relabelled in order).
    pub fn restrict(&self, keep: &[usize]) -> AdjacencyCone {
        let k = keep.len();
        let mut c = AdjacencyCone { n: k, e_plus: vec![0; k], e_minus: vec![0; k], v_plus: 0, v_minus: 0 };
        for (a, &i) in keep.iter().enumerate() {
            c.v_plus |= (self.v_plus >> i & 1) << a;
            c.v_minus |= (self.v_minus >> i & 1) << a;
            for (b, &j) in keep.iter().enumerate() {
                if a != b {
                    c.e_plus[a] |= (self.e_plus[i] >> j & 1) << b;
                    c.e_minus[a] |= (self.e_minus[i] >> j & 1) << b;
                }
            }
        }
        c
    }

    /// Entrywise sign check with slack `tol`.
    pub fn member(&self, x: &SymMatrix, tol: f64) -> bool {
        if x.order() != self.n {
            return false;
        }
        for i in 0..self.n {
            let d = x.get(i, i);
            if (self.v_plus >> i & 1 == 1 && d < -tol) || (self.v_minus >> i & 1 == 1 && d > tol) {
                return false;
            }
            for j in i + 1..self.n {
                let v = x.get(i, j);
                let ok = match self.pair_sign(i, j) {
                    PairSign::Free => true,
                    PairSign::NonNeg => v >= -tol,
                    PairSign::NonPos => v <= tol,
                    PairSign::Zero => v.abs() <= tol,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Nearest member in the entrywise sense (clamps violating entries).
    pub fn project(&self, x: &SymMatrix) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| {
            let v = x.get(i, j);
            if i == j {
                if self.v_plus >> i & 1 == 1 && v < 0.0 || self.v_minus >> i & 1 == 1 && v > 0.0 {
                    return 0.0;
                }
                return v;
            }
            match self.pair_sign(i, j) {
                PairSign::Free => v,
                PairSign::NonNeg => v.max(0.0),
                PairSign::NonPos => v.min(0.0),
                PairSign::Zero => 0.0,
            }
        })
    }

    /// A^Δ = Image(Diag) − A*: complements both pair sets.
    pub fn delta_dual(&self) -> Result<AdjacencyCone> {
        if !self.has_free_diagonal() {
            return Err(Error::Unsupported("Δ-dual of a diagonal-restricted cone".into()));
        }
        let full = |i: usize| -> u64 { ((1u128 << self.n) - 1) as u64 & !(1u64 << i) };
        Ok(AdjacencyCone {
            n: self.n,
            e_plus: (0..self.n).map(|i| !self.e_plus[i] & full(i)).collect(),
            e_minus: (0..self.n).map(|i| !self.e_minus[i] & full(i)).collect(),
            v_plus: 0,
            v_minus: 0,
        })
    }
}

pub fn cone_for_variant(g: &Graph, variant: ThetaVariant) -> AdjacencyCone {
    AdjacencyCone::for_variant(g, variant)
}

pub fn cone_member(a: &AdjacencyCone, x: &SymMatrix, tol: f64) -> bool {
    a.member(x, tol)
}

pub fn delta_dual(a: &AdjacencyCone) -> Result<AdjacencyCone> {
    a.delta_dual()
}

/// Base cones K for the liftings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseConeKind {
    Psd,
    /// PSD ∩ entrywise nonnegative.
    DoublyNonneg,
    Copositive,
    CompletelyPositive,
    /// Matrices whose 2×2 principal submatrices are all PSD.
    Quad2,
}

/// Three-valued membership outcome for cones without a cheap exact test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Undecided,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

fn quad2_member(x: &SymMatrix, tol: f64) -> bool {
    let n = x.order();
    for i in 0..n {
        if x.get(i, i) < -tol {
            return false;
        }
        for j in i + 1..n {
            let (a, b, c) = (x.get(i, i), x.get(j, j), x.get(i, j));
            let lmin = 0.5 * (a + b) - (0.25 * (a - b) * (a - b) + c * c).sqrt();
            if lmin < -tol {
                return false;
            }
        }
    }
    true
}

/// Membership in a base cone.
pub fn base_member(kind: BaseConeKind, x: &SymMatrix, tol: f64) -> Verdict {
    match kind {
        BaseConeKind::Psd => Verdict::from_bool(is_psd(x, tol)),
        BaseConeKind::DoublyNonneg => Verdict::from_bool(x.as_slice().iter().all(|&v| v >= -tol) && is_psd(x, tol)),
        BaseConeKind::Quad2 => Verdict::from_bool(quad2_member(x, tol)),
        BaseConeKind::Copositive => match copositive_verify(x, tol) {
            CopositiveVerdict::VerifiedYes => Verdict::Yes,
            CopositiveVerdict::VerifiedNo { .. } => Verdict::No,
            CopositiveVerdict::Undecided => Verdict::Undecided,
        },
        BaseConeKind::CompletelyPositive => cp_verdict(x, tol),
    }
}

fn split_lift(xhat: &SymMatrix) -> (f64, Vec<f64>, SymMatrix) {
    let n = xhat.order() - 1;
    let x: Vec<f64> = (0..n).map(|i| xhat.get(0, i + 1)).collect();
    let block = SymMatrix::from_fn(n, |i, j| xhat.get(i + 1, j + 1));
    (xhat.get(0, 0), x, block)
}

/// X̂ ⪰ 0 with X̂[V] in the base cone (and in `a`, when given).
pub fn psd_lift_member(base: BaseConeKind, a: Option<&AdjacencyCone>, xhat: &SymMatrix, tol: f64) -> Result<Verdict> {
    if base == BaseConeKind::Copositive {
        return Err(Error::Unsupported("PSD lifting of the copositive cone".into()));
    }
    if xhat.order() == 0 {
        return Err(Error::Dimension("lifted matrix must have order n + 1 ≥ 1".into()));
    }
    if !is_psd(xhat, tol) {
        return Ok(Verdict::No);
    }
    let (_, _, block) = split_lift(xhat);
    if let Some(a) = a {
        if a.n() != block.order() {
            return Err(Error::Dimension(format!("cone order {} vs lifted order {}", a.n(), xhat.order())));
        }
        if !a.member(&block, tol) {
            return Ok(Verdict::No);
        }
    }
    Ok(base_member(base, &block, tol))
}

/// X ∈ K, x₀ ≥ 0 and x₀X − xxᵀ ∈ K for X̂ = [[x₀, xᵀ], [x, X]].
pub fn schur_lift_member(base: BaseConeKind, xhat: &SymMatrix, tol: f64) -> Verdict {
    if xhat.order() == 0 {
        return Verdict::No;
    }
    let (x0, x, block) = split_lift(xhat);
    if x0 < -tol {
        return Verdict::No;
    }
    let comp = SymMatrix::from_fn(x.len(), |i, j| x0 * block.get(i, j) - x[i] * x[j]);
    base_member(base, &block, tol).and(base_member(base, &comp, tol))
}

/// Outcome of a randomized scaling-invariance check.
#[derive(Clone, Debug)]
pub struct ScalingCheck {
    pub passed: bool,
    pub members_tested: usize,
    pub counterexample: Option<(SymMatrix, Vec<f64>)>,
}

/// Samples members from `candidates` and checks D_h(X) stays a member for random h ≥ 0.
pub fn check_scaling_invariance<R: Rng + ?Sized>(
    member: impl Fn(&SymMatrix) -> bool,
    mut candidates: impl FnMut(&mut R) -> SymMatrix,
    samples: usize,
    rng: &mut R,
) -> ScalingCheck {
    let mut tested = 0;
    let mut attempts = 0;
    while tested < samples && attempts < 50 * samples.max(1) {
        attempts += 1;
        let x = candidates(rng);
        if !member(&x) {
            continue;
        }
        tested += 1;
        for _ in 0..4 {
            let n = x.order();
            let h: Vec<f64> = (0..n)
                .map(|_| match rng.gen_range(0..4) {
                    0 => 0.0,
                    1 => rng.gen_range(0.0..1.0),
                    2 => rng.gen_range(1.0..10.0),
                    _ => rng.gen_range(0.0..3.0),
                })
                .collect();
            if !member(&diag_scale(&h, &x)) {
                return ScalingCheck { passed: false, members_tested: tested, counterexample: Some((x, h)) };
            }
        }
    }
    ScalingCheck { passed: true, members_tested: tested, counterexample: None }
}

/// Random symmetric matrices of mixed kinds: Gram matrices, rank-one
/// outer products, and unstructured entries with random zeros.
pub fn random_candidate<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymMatrix {
    match rng.gen_range(0..3) {
        0 => {
            let r = rng.gen_range(1..=n.max(1));
            let rows: Vec<Vec<f64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            SymMatrix::from_fn(n, |i, j| rows.iter().map(|b| b[i] * b[j]).sum())
        }
        1 => {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            SymMatrix::outer(&v)
        }
        _ => SymMatrix::from_fn(n, |_, _| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(-1.0..1.0) }),
    }
}
