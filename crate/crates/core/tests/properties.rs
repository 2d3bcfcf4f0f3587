use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use theta_core::cones::{check_scaling_invariance, random_candidate, AdjacencyCone, ThetaVariant};
use theta_core::corners::CornerOracle;
use theta_core::graph::{alpha, Graph};
use theta_core::stabrelax::{chi_fractional, frac_oracle, qstab_oracle};
use theta_core::theta::{theta1, theta2, theta3, theta4, theta_abl};

const TOL: f64 = 1e-9;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn weighted(max_n: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(prop_oneof![Just(0.0), 0.05f64..2.0], n))
    })
}

fn variant() -> impl Strategy<Value = ThetaVariant> {
    prop_oneof![Just(ThetaVariant::Th), Just(ThetaVariant::ThPrime), Just(ThetaVariant::ThPlus)]
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn delta_dual_is_an_involution(g in graph(8), v in variant()) {
        let a = AdjacencyCone::for_variant(&g, v);
        let back = a.delta_dual().unwrap().delta_dual().unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn graph_cones_are_scaling_invariant(g in graph(6), v in variant(), seed in any::<u64>()) {
        let a = AdjacencyCone::for_variant(&g, v);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.n();
        let r = check_scaling_invariance(|x| a.member(x, 1e-12), |rng| a.project(&random_candidate(n, rng)), 10, &mut rng);
        prop_assert!(r.passed, "{:?}", r.counterexample);
    }

    #[test]
    fn theta_routes_agree((g, w) in weighted(6), v in variant()) {
        let t4 = theta4(&g, v, &w, TOL).unwrap();
        let t3 = theta3(&g, v, &w, TOL).unwrap().0;
        let t2 = theta2(&g, v, &w, TOL).unwrap().value;
        let ta = theta_abl(&g, v, &w, TOL).unwrap();
        for (name, t) in [("theta3", t3), ("theta2", t2), ("theta_abl", ta)] {
            prop_assert!(close(t, t4, 1e-6), "{} = {} vs theta4 = {}", name, t, t4);
        }
    }

    #[test]
    fn theta1_agrees_with_theta4((g, w) in weighted(5), v in variant()) {
        let t1 = theta1(&g, v, &w, 1e-8).unwrap();
        let t4 = theta4(&g, v, &w, TOL).unwrap();
        prop_assert!(close(t1, t4, 1e-5), "theta1 = {} vs theta4 = {}", t1, t4);
    }

    #[test]
    fn theta_is_positively_homogeneous((g, w) in weighted(6), c in 0.1f64..10.0) {
        let base = theta4(&g, ThetaVariant::Th, &w, TOL).unwrap();
        let scaled: Vec<f64> = w.iter().map(|x| c * x).collect();
        let t = theta4(&g, ThetaVariant::Th, &scaled, TOL).unwrap();
        prop_assert!(close(t, c * base, 1e-6), "{} vs {}", t, c * base);
    }

    #[test]
    fn zero_weight_vertices_can_be_deleted((g, w) in weighted(7), v in variant()) {
        let keep: Vec<usize> = (0..g.n()).filter(|&i| w[i] > 0.0).collect();
        let full = theta4(&g, v, &w, TOL).unwrap();
        let reduced = if keep.is_empty() {
            0.0
        } else {
            let wk: Vec<f64> = keep.iter().map(|&i| w[i]).collect();
            theta4(&g.induced(&keep), v, &wk, TOL).unwrap()
        };
        prop_assert!(close(full, reduced, 1e-6), "{} vs {}", full, reduced);
    }

    #[test]
    fn sandwich_chain_holds((g, w) in weighted(7)) {
        let chain = [
            alpha(&g, &w).unwrap(),
            theta4(&g, ThetaVariant::ThPrime, &w, TOL).unwrap(),
            theta4(&g, ThetaVariant::Th, &w, TOL).unwrap(),
            theta4(&g, ThetaVariant::ThPlus, &w, TOL).unwrap(),
            qstab_oracle(&g).unwrap().support(&w).unwrap(),
            frac_oracle(&g).support(&w).unwrap(),
        ];
        for p in chain.windows(2) {
            prop_assert!(p[0] <= p[1] + 1e-6 * (1.0 + p[1]), "{:?}", chain);
        }
    }

    #[test]
    fn theta_below_fractional_chromatic_of_complement((g, w) in weighted(7)) {
        let t = theta4(&g, ThetaVariant::Th, &w, TOL).unwrap();
        let chi = chi_fractional(&g.complement(), &w, TOL).unwrap().value;
        prop_assert!(t <= chi + 1e-6 * (1.0 + chi), "theta {} above chi* {}", t, chi);
    }

    #[test]
    fn theta_product_with_complement_is_at_least_n(g in graph(7)) {
        let n = g.n();
        let ones = vec![1.0; n];
        let p = theta4(&g, ThetaVariant::Th, &ones, TOL).unwrap() * theta4(&g.complement(), ThetaVariant::Th, &ones, TOL).unwrap();
        prop_assert!(p >= n as f64 - 1e-6, "product {} below {}", p, n);
    }

    #[test]
    fn theta_is_monotone_in_weights((g, w) in weighted(6), bump in prop::collection::vec(0.0f64..1.0, 6)) {
        let larger: Vec<f64> = w.iter().zip(&bump).map(|(a, b)| a + b).collect();
        let lo = theta4(&g, ThetaVariant::Th, &w, TOL).unwrap();
        let hi = theta4(&g, ThetaVariant::Th, &larger, TOL).unwrap();
        prop_assert!(lo <= hi + 1e-6 * (1.0 + hi), "{} > {}", lo, hi);
    }
}
