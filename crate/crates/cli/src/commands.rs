use std::sync::Arc;

use anyhow::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use theta_core::cones::ThetaVariant;
use theta_core::corners::{check_involution, BoxCorner, CornerOracle};
use theta_core::graph::{alpha, Graph};
use theta_core::stabrelax::{
    chi_fractional, chi_fractional_copositive_certificate, frac_oracle, frac_theta_body_check,
    qstab_copositive_identity_check, qstab_oracle, stab_cp_identity_check, stab_oracle,
};
use theta_core::theta::{
    antiblocker_identity_check, certify_all_thetas, hoffman_ratio, luz_theta, theta4, theta6_lower_search, Pairing,
};
use theta_core::Error;

use crate::report::Report;

pub struct Input {
    pub graph: Graph,
    pub weights: Vec<f64>,
    pub variant: ThetaVariant,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl Input {
    /// Agreement threshold for values computed by different routes.
    fn slack(&self) -> f64 {
        (1e3 * self.tol).max(1e-6)
    }

    fn sdp_tol(&self) -> f64 {
        (self.tol * 1e-2).max(1e-12)
    }
}

fn fmt(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn theta(inp: &Input, rep: &mut Report) -> Result<()> {
    let c = certify_all_thetas(&inp.graph, inp.variant, &inp.weights, inp.tol)?;
    let s = inp.slack();
    for (name, v) in ["theta", "theta1", "theta2", "theta3", "theta4"].iter().zip(c.values()) {
        rep.value(name, v);
    }
    rep.value("discrepancy", c.discrepancy);
    rep.value("lambda_star", c.lambda_star);
    rep.matrix("x_star", &c.x_star);
    rep.matrix("y_star", &c.y_star);
    rep.matrix("xhat_star", &c.xhat_star);
    rep.certificate("residuals", &c.checks)?;
    rep.check("five_way_equality", c.discrepancy <= s, || format!("values {}", fmt(&c.values())));
    rep.check("certificate_residuals", c.checks.passed(s), || format!("{:?}", c.checks));
    rep.check("eigenvector_identities", c.checks.eigen_identities.passed, || {
        format!("{:?}", c.checks.eigen_identities)
    });
    Ok(())
}

pub fn chain(inp: &Input, rep: &mut Report) -> Result<()> {
    let (g, w) = (&inp.graph, &inp.weights);
    let t = inp.sdp_tol();
    let values = [
        ("alpha", alpha(g, w)?),
        ("theta_prime", theta4(g, ThetaVariant::ThPrime, w, t)?),
        ("theta", theta4(g, ThetaVariant::Th, w, t)?),
        ("theta_plus", theta4(g, ThetaVariant::ThPlus, w, t)?),
        ("qstab", qstab_oracle(g)?.support(w)?),
        ("frac", frac_oracle(g).support(w)?),
    ];
    for (name, v) in values {
        rep.value(name, v);
    }
    let slack = inp.slack().max(1e-6);
    for pair in values.windows(2) {
        let ((a, va), (b, vb)) = (pair[0], pair[1]);
        rep.check(&format!("{a}_le_{b}"), va <= vb + slack * (1.0 + vb.abs()), || format!("{a} = {va}, {b} = {vb}"));
    }
    let cp = stab_cp_identity_check(g, std::slice::from_ref(w), inp.tol.max(1e-9), inp.seed)?;
    rep.certificate("stab_cp", &cp)?;
    rep.check("stab_cp_identity", cp.passed, || format!("{cp:?}"));
    Ok(())
}

pub fn duality(inp: &Input, rep: &mut Report) -> Result<()> {
    let g = &inp.graph;
    for pairing in Pairing::ALL {
        let r = antiblocker_identity_check(g, pairing, inp.samples, inp.tol.max(1e-9), inp.seed)?;
        let name = match pairing {
            Pairing::ThTh => "th_th",
            Pairing::ThPrimeThPlus => "thp_thplus",
        };
        rep.value(&format!("{name}_max_product"), r.max_product);
        rep.certificate(&format!("antiblocker_{name}"), &r)?;
        rep.check(&format!("antiblocker_{name}"), r.passed, || format!("{r:?}"));
    }
    let corners: [(&str, Arc<dyn CornerOracle>); 3] = [
        ("stab", Arc::new(stab_oracle(g)?)),
        ("qstab", Arc::new(qstab_oracle(g)?)),
        ("box", Arc::new(BoxCorner(g.n()))),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(inp.seed);
    for (name, c) in corners {
        let r = check_involution(c, inp.samples, 1e-7, &mut rng);
        rep.certificate(&format!("involution_{name}"), &r)?;
        rep.check(&format!("involution_{name}"), r.passed, || format!("{r:?}"));
    }
    Ok(())
}

pub fn hoffman(inp: &Input, rep: &mut Report) -> Result<()> {
    let g = &inp.graph;
    let ratio = hoffman_ratio(&g.adjacency_matrix())?;
    let complement = theta4(&g.complement(), ThetaVariant::Th, &vec![1.0; g.n()], inp.sdp_tol())?;
    rep.value("hoffman_ratio", ratio);
    rep.value("theta_complement", complement);
    rep.check("hoffman_le_theta_complement", ratio <= complement + inp.slack() * (1.0 + complement), || {
        format!("ratio {ratio} exceeds theta of the complement {complement}")
    });
    match theta6_lower_search(g, inp.variant, &inp.weights, inp.samples, inp.slack(), inp.seed) {
        Ok(r) => {
            rep.value("theta6", r.value);
            rep.value("theta3", r.theta3);
            rep.value("random_max", r.random_max);
            rep.matrix("b_bar", &r.b);
            rep.check("theta6_attains_theta3", (r.value - r.theta3).abs() <= inp.slack() * (1.0 + r.theta3), || {
                format!("theta6 {} vs theta3 {}", r.value, r.theta3)
            });
            rep.check("random_b_below_theta3", r.random_max <= r.theta3 + inp.slack() * (1.0 + r.theta3), || {
                format!("random λ_max {} above theta3 {}", r.random_max, r.theta3)
            });
        }
        Err(Error::Unsupported(msg)) => rep.inconclusive("theta6", msg),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn luz(inp: &Input, rep: &mut Report) -> Result<()> {
    let r = luz_theta(&inp.graph, inp.variant, &inp.weights, inp.tol)?;
    rep.value("luz", r.value);
    rep.value("theta", r.target);
    rep.value("kkt_residual", r.kkt_residual);
    rep.matrix("c_star", &r.c);
    rep.certificate("x_star", &r.x)?;
    let s = inp.slack();
    rep.check("luz_matches_theta", (r.value - r.target).abs() <= s * (1.0 + r.target), || {
        format!("luz {} vs theta {}", r.value, r.target)
    });
    rep.check("kkt_residual", r.kkt_residual <= s.max(1e-6), || format!("residual {}", r.kkt_residual));
    Ok(())
}

pub fn frac(inp: &Input, rep: &mut Report) -> Result<()> {
    let r = frac_theta_body_check(&inp.graph, inp.samples, inp.tol.max(1e-9), inp.seed)?;
    rep.value("frac_support", frac_oracle(&inp.graph).support(&inp.weights)?);
    rep.certificate("frac_lifting", &r)?;
    rep.check("half_integral_vertices", r.non_half_integral == 0, || {
        format!("{} of {} vertices", r.non_half_integral, r.vertices)
    });
    rep.check("vertex_lifts", r.lift_failures == 0, || format!("{} lifts rejected", r.lift_failures));
    rep.check("projections_in_frac", r.projection_failures == 0, || {
        format!("{} of {} lifted members outside FRAC", r.projection_failures, r.members_sampled)
    });
    Ok(())
}

pub fn chifrac(inp: &Input, rep: &mut Report) -> Result<()> {
    let (g, w) = (&inp.graph, &inp.weights);
    let tol = inp.tol.max(1e-9);
    let chi = chi_fractional(g, w, tol)?;
    rep.value("chi_fractional", chi.value);
    rep.value("duality_gap", chi.duality_gap);
    rep.certificate("cover", &chi.cover)?;
    let th = theta4(&g.complement(), ThetaVariant::Th, w, inp.sdp_tol())?;
    rep.value("theta_complement", th);
    rep.check("chi_ge_theta_complement", chi.value + inp.slack() * (1.0 + th) >= th, || {
        format!("chi* {} below theta of the complement {}", chi.value, th)
    });
    let cert = chi_fractional_copositive_certificate(g, w, tol)?;
    rep.certificate("cp_certificate", &cert)?;
    rep.check("cp_certificate", cert.passed, || {
        format!("psd {} factorization {} pattern {}", cert.psd_ok, cert.factorization_ok, cert.pattern_ok)
    });
    let q = qstab_copositive_identity_check(g, inp.samples, tol, inp.seed)?;
    rep.certificate("qstab_copositive", &q)?;
    rep.check("qstab_copositive", q.passed, || format!("{q:?}"));
    if q.inconclusive {
        rep.inconclusive(
            "qstab_copositive_undecided",
            format!("{} of {} witnesses undecided", q.undecided, q.extreme_points),
        );
    }
    Ok(())
}
