use ihara_zeta::linalg::{ratio, Rational};
use ihara_zeta::local::n_from_c;
use ihara_zeta::operators::{build_operators, cm_sequence};
use ihara_zeta::oracle::{count_closed_geodesics, geodesic_count_matrices, OracleLimits};
use ihara_zeta::zeta::Theorem44Context;
use ihara_zeta::{Graph, ScalarSeries};
use proptest::prelude::*;

const ORDER: usize = 7;

fn series() -> impl Strategy<Value = ScalarSeries> {
    prop::collection::vec((-6i64..=6, 1i64..=4), ORDER + 1)
        .prop_map(|c| ScalarSeries::from_coeffs(ORDER, c.into_iter().map(|(n, d)| ratio(n, d))))
}

fn unit_series() -> impl Strategy<Value = ScalarSeries> {
    series().prop_map(|s| {
        let mut c = s.coeffs().to_vec();
        c[0] = ratio(1, 1);
        ScalarSeries::from_coeffs(ORDER, c)
    })
}

/// A Hamiltonian cycle plus random chords: connected, simple, min degree 2.
fn cyclic_graph() -> impl Strategy<Value = Graph> {
    (4usize..=7).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..n).prop_map(move |chords| {
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            for (u, v) in chords {
                let key = (u.min(v), u.max(v));
                if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
                    edges.push(key);
                }
            }
            Graph::build(&edges, n).unwrap()
        })
    })
}

/// Arbitrary multigraph on a cycle: doubled edges and loops allowed.
fn cyclic_multigraph() -> impl Strategy<Value = Graph> {
    (3usize..=5).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3).prop_map(move |extra| {
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend(extra);
            Graph::build(&edges, n).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_and_exp_log(a in unit_series()) {
        prop_assert_eq!(a.mul(&a.invert().unwrap()).unwrap(), ScalarSeries::one(ORDER));
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn log_of_product(a in unit_series(), b in unit_series()) {
        let lhs = a.mul(&b).unwrap().log().unwrap();
        let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integrate_derivative(a in series()) {
        let mut c = a.coeffs().to_vec();
        c[0] = Rational::from_integer(0.into());
        c[ORDER] = Rational::from_integer(0.into());
        let a = ScalarSeries::from_coeffs(ORDER, c);
        prop_assert_eq!(a.derivative().integrate().truncate(ORDER - 1), a.truncate(ORDER - 1));
    }

    #[test]
    fn count_matrices_symmetric_and_match_recursion(g in cyclic_graph()) {
        let mats = geodesic_count_matrices(&g, 6, &OracleLimits::default()).unwrap();
        let cm = cm_sequence(&build_operators(&g), 6).unwrap();
        for (m, c) in mats.iter().enumerate() {
            prop_assert!(c.is_symmetric());
            prop_assert_eq!(&c.to_rational(), cm.get(m));
        }
    }

    #[test]
    fn closed_geodesics_from_loop_counts(g in cyclic_multigraph()) {
        let limits = OracleLimits::default();
        for x in 0..g.vertex_count() {
            let oracle = count_closed_geodesics(&g, x, 8, &limits).unwrap().closed;
            prop_assert_eq!(n_from_c(&g, x, 8, &limits).unwrap(), oracle);
        }
    }

    #[test]
    fn four_factor_product(g in cyclic_graph()) {
        let ctx = Theorem44Context::new(&g, 6).unwrap();
        let limits = OracleLimits::default();
        for x0 in 0..g.vertex_count() {
            let t = ctx.evaluate(x0, x0).unwrap();
            let oracle = count_closed_geodesics(&g, x0, 6, &limits).unwrap();
            prop_assert!(t.holds());
            prop_assert_eq!(t.product, ihara_zeta::zeta::zeta_from_counts(&oracle.closed, 6));
            for x in 0..g.vertex_count() {
                prop_assert!(ctx.evaluate(x0, x).unwrap().holds());
            }
        }
    }
}
