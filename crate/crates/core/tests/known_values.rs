use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use theta_core::cones::ThetaVariant;
use theta_core::graph::{alpha, parse_dimacs, Graph};
use theta_core::stabrelax::chi_fractional;
use theta_core::theta::{certify_all_thetas, hoffman_ratio, theta4};

fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

#[test]
fn odd_cycles_match_closed_form() {
    for n in [5, 7, 9, 11] {
        let c = (PI / n as f64).cos();
        let expected = n as f64 * c / (1.0 + c);
        assert_abs_diff_eq!(
            theta4(&Graph::cycle(n), ThetaVariant::Th, &ones(n), 1e-10).unwrap(),
            expected,
            epsilon = 1e-6
        );
    }
}

#[test]
fn complete_and_empty_graphs() {
    for n in 2..=6 {
        for v in ThetaVariant::ALL {
            assert_abs_diff_eq!(theta4(&Graph::complete(n), v, &ones(n), 1e-10).unwrap(), 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(theta4(&Graph::empty(n), v, &ones(n), 1e-10).unwrap(), n as f64, epsilon = 1e-6);
        }
        assert_abs_diff_eq!(
            chi_fractional(&Graph::complete(n), &ones(n), 1e-9).unwrap().value,
            n as f64,
            epsilon = 1e-9
        );
    }
}

#[test]
fn petersen_graph() {
    let p = Graph::petersen();
    assert_eq!(alpha(&p, &ones(10)).unwrap(), 4.0);
    assert_abs_diff_eq!(theta4(&p, ThetaVariant::Th, &ones(10), 1e-10).unwrap(), 4.0, epsilon = 1e-6);
    assert_abs_diff_eq!(theta4(&p.complement(), ThetaVariant::Th, &ones(10), 1e-10).unwrap(), 2.5, epsilon = 1e-6);
    assert_abs_diff_eq!(hoffman_ratio(&p.adjacency_matrix()).unwrap(), 2.5, epsilon = 1e-9);
}

#[test]
fn c5_certificate_from_dimacs() {
    let g = parse_dimacs("c pentagon\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    assert_eq!(g, Graph::cycle(5));
    let c = certify_all_thetas(&g, ThetaVariant::Th, &ones(5), 1e-8).unwrap();
    for v in c.values() {
        assert_abs_diff_eq!(v, 5f64.sqrt(), epsilon = 1e-6);
    }
    assert!(c.checks.passed(1e-6));
    assert_abs_diff_eq!(chi_fractional(&g, &ones(5), 1e-9).unwrap().value, 2.5, epsilon = 1e-9);
}

#[test]
fn dimacs_round_trip() {
    let g = Graph::petersen();
    assert_eq!(parse_dimacs(&g.to_dimacs()).unwrap(), g);
}
