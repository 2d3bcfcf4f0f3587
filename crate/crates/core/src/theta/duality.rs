//! Antiblocker pairings between theta bodies of a graph and its complement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{theta4, ThetaBody};
use crate::cones::ThetaVariant;
use crate::corners::CornerOracle;
use crate::error::{guard, Result};
use crate::graph::Graph;
use crate::linalg::dot;

/// Which bodies are expected to be mutual antiblockers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// TH(G) and TH(Ḡ).
    ThTh,
    /// TH′(G) and TH⁺(Ḡ).
    ThPrimeThPlus,
}

impl Pairing {
    pub const ALL: [Pairing; 2] = [Pairing::ThTh, Pairing::ThPrimeThPlus];

    pub fn variants(self) -> (ThetaVariant, ThetaVariant) {
        match self {
            Pairing::ThTh => (ThetaVariant::Th, ThetaVariant::Th),
            Pairing::ThPrimeThPlus => (ThetaVariant::ThPrime, ThetaVariant::ThPlus),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AntiblockerReport {
    pub pairing: Pairing,
    pub pairs_checked: usize,
    pub max_product: f64,
    pub boundary_points: usize,
    pub membership_failures: usize,
    pub passed: bool,
}

const BOUNDARY_STEP: f64 = 1e-4;
const MAX_BOUNDARY_POINTS: usize = 8;

/// Samples points of both bodies as SDP optima under random weights and
/// checks ⟨x,y⟩ ≤ 1 + tol on every pair. Then for a few directions d the
/// point d/δ*(first, d) is tested to lie on the boundary of the second.
pub fn antiblocker_identity_check(
    g: &Graph,
    pairing: Pairing,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<AntiblockerReport> {
    guard("antiblocker check", g.n(), 14)?;
    let n = g.n();
    let (v1, v2) = pairing.variants();
    let gc = g.complement();
    let sdp_tol = (tol * 1e-2).max(1e-12);
    let first = ThetaBody::new(g, v1, sdp_tol);
    let second = ThetaBody::new(&gc, v2, sdp_tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.gen::<f64>()).collect() };

    let mut xs = Vec::with_capacity(samples);
    let mut ys = Vec::with_capacity(samples);
    for _ in 0..samples {
        xs.push(first.argmax(&weights(&mut rng))?);
        ys.push(second.argmax(&weights(&mut rng))?);
    }
    let mut max_product = 0.0f64;
    for x in &xs {
        for y in &ys {
            max_product = max_product.max(dot(x, y));
        }
    }

    let boundary_points = samples.min(MAX_BOUNDARY_POINTS);
    let mut membership_failures = 0;
    for _ in 0..boundary_points {
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let s = theta4(g, v1, &d, sdp_tol)?;
        let inside: Vec<f64> = d.iter().map(|v| v / s * (1.0 - BOUNDARY_STEP)).collect();
        let outside: Vec<f64> = d.iter().map(|v| v / s * (1.0 + BOUNDARY_STEP)).collect();
        if !second.member(&inside, 1e-9) || second.member(&outside, 1e-9) {
            membership_failures += 1;
        }
    }
    Ok(AntiblockerReport {
        pairing,
        pairs_checked: xs.len() * ys.len(),
        max_product,
        boundary_points,
        membership_failures,
        passed: max_product <= 1.0 + tol && membership_failures == 0,
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PolarProduct {
    pub theta: f64,
    pub theta_complement: f64,
    pub product: f64,
}

/// θ(G; ē)·θ(Ḡ; ē). Equals |V| when the caller knows G is vertex-transitive.
pub fn polar_product_check(g: &Graph, tol: f64) -> Result<PolarProduct> {
    guard("polar product", g.n(), 14)?;
    let ones = vec![1.0; g.n()];
    let sdp_tol = (tol * 1e-2).max(1e-12);
    let theta = theta4(g, ThetaVariant::Th, &ones, sdp_tol)?;
    let theta_complement = theta4(&g.complement(), ThetaVariant::Th, &ones, sdp_tol)?;
    Ok(PolarProduct { theta, theta_complement, product: theta * theta_complement })
}
