mod common;

use std::sync::Arc;

use cartan_core::builders::{build_full_relation, build_graph_groupoid, build_taf_order, Edge};
use cartan_core::dirichlet::validate_order;
use cartan_core::reps::{invariant_lattice, norm_achievement, GnsRep};
use cartan_core::semicrossed::{phi0_state, phi_functional, rho0, CrossedElement, FiniteDynamicalSystem};
use cartan_core::spec_file::GroupoidSpec;
use cartan_core::{AlgebraElement, Arrow, ArrowOrder, FiniteTwistedGroupoid, PointId};
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn corpus_groupoids() -> Vec<Arc<FiniteTwistedGroupoid>> {
    ["taf3", "graph_tree", "twisted4", "two_block", "graph_diamond"]
        .iter()
        .map(|n| groupoid(n))
        .collect()
}

fn coefficient() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn element_of(g: &Arc<FiniteTwistedGroupoid>, values: &[Option<Complex64>]) -> AlgebraElement {
    let coeffs = g
        .arrows()
        .iter()
        .zip(values)
        .filter_map(|(a, v)| v.map(|v| (*a, v)));
    AlgebraElement::from_coeffs(g, coeffs).unwrap()
}

/// A fixture index and three random coefficient tables for it.
fn triple() -> impl Strategy<Value = (usize, Vec<Option<Complex64>>, Vec<Option<Complex64>>, Vec<Option<Complex64>>)> {
    let table = || proptest::collection::vec(proptest::option::weighted(0.7, coefficient()), 64);
    (0usize..5, table(), table(), table())
}

fn diagonal_of(g: &Arc<FiniteTwistedGroupoid>, values: &[Option<Complex64>]) -> AlgebraElement {
    AlgebraElement::diagonal(g, |x| values[x.0 % values.len()].unwrap_or_default())
}

/// A normalizer from a permutation seed: each orbit is rotated and a subset of
/// sources kept.
fn normalizer_of(g: &Arc<FiniteTwistedGroupoid>, shift: usize, values: &[Option<Complex64>]) -> AlgebraElement {
    let mut coeffs = Vec::new();
    for orbit in g.orbits() {
        for (i, &src) in orbit.iter().enumerate() {
            let dst = orbit[(i + shift) % orbit.len()];
            if let Some(v) = values[src.0 % values.len()] {
                if v.norm() > 1e-3 {
                    coeffs.push((Arrow::new(dst, src), v));
                }
            }
        }
    }
    if coeffs.is_empty() {
        coeffs.push((Arrow::unit(PointId(0)), Complex64::new(1.0, 0.0)));
    }
    AlgebraElement::from_coeffs(g, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn convolution_is_associative_and_distributive((i, x, y, z) in triple()) {
        let g = &corpus_groupoids()[i];
        let (a, b, c) = (element_of(g, &x), element_of(g, &y), element_of(g, &z));
        prop_assert!((&(&a * &b) * &c).approx_eq(&(&a * &(&b * &c)), TOL));
        prop_assert!((&a * &(&b + &c)).approx_eq(&(&(&a * &b) + &(&a * &c)), TOL));
    }

    #[test]
    fn involution_is_an_anti_multiplicative_involution((i, x, y, _z) in triple()) {
        let g = &corpus_groupoids()[i];
        let (a, b) = (element_of(g, &x), element_of(g, &y));
        prop_assert!((&a * &b).involute().approx_eq(&(&b.involute() * &a.involute()), TOL));
        prop_assert!(a.involute().involute().approx_eq(&a, TOL));
    }

    #[test]
    fn identity_is_neutral((i, x, _y, _z) in triple()) {
        let g = &corpus_groupoids()[i];
        let a = element_of(g, &x);
        let one = AlgebraElement::identity(g);
        prop_assert!((&one * &a).approx_eq(&a, TOL));
        prop_assert!((&a * &one).approx_eq(&a, TOL));
    }

    #[test]
    fn expectation_is_an_idempotent_bimodule_map((i, x, y, z) in triple()) {
        let g = &corpus_groupoids()[i];
        let a = element_of(g, &x);
        let (f, h) = (diagonal_of(g, &y), diagonal_of(g, &z));
        prop_assert!(a.expect().expect().approx_eq(&a.expect(), TOL));
        prop_assert!((&(&f * &a) * &h).expect().approx_eq(&(&(&f * &a.expect()) * &h), TOL));
    }

    #[test]
    fn expectation_is_faithful_on_positives((i, x, _y, _z) in triple()) {
        let g = &corpus_groupoids()[i];
        let a = element_of(g, &x);
        let e = (&a.involute() * &a).expect();
        // E(a*a)(x) is the squared l2 norm of a over arrows with source x
        for p in g.units().points() {
            let v = e.unit_value(p);
            prop_assert!(v.im.abs() <= TOL && v.re >= -TOL);
        }
        prop_assert_eq!(e.is_zero(), a.is_zero());
    }

    #[test]
    fn c_star_identity((i, x, _y, _z) in triple()) {
        let g = &corpus_groupoids()[i];
        let a = element_of(g, &x);
        let n = a.operator_norm();
        prop_assert!(((&a.involute() * &a).operator_norm() - n * n).abs() <= 1e-9 * n.max(1.0).powi(2));
    }

    #[test]
    fn norm_is_achieved_by_gns_representations((i, x, _y, _z) in triple()) {
        let g = &corpus_groupoids()[i];
        let result = norm_achievement(&element_of(g, &x));
        prop_assert!(result.deviation() <= 1e-9);
    }

    #[test]
    fn normalizer_identities((i, x, y, z) in triple(), shift in 0usize..6) {
        let g = &corpus_groupoids()[i];
        let n = normalizer_of(g, shift, &y);
        let a = element_of(g, &x);
        let f = diagonal_of(g, &z);
        let norm = n.as_normalizer().unwrap();
        prop_assert!(n.normalizes_diagonal());
        let n_star = n.involute();
        // E(n* a n) = n* E(a) n
        prop_assert!((&(&n_star * &a) * &n).expect().approx_eq(&(&(&n_star * &a.expect()) * &n), TOL));
        // f n = n (f ∘ α_n)
        prop_assert!(norm.weyl_covariance_check(&f).unwrap());
        // n n*(α_n(x)) = n* n(x) on the domain of α_n
        let (nn_star, n_star_n) = (&n * &n_star, &n_star * &n);
        for p in norm.action().domain() {
            let image = norm.action().apply(p).unwrap();
            prop_assert!((nn_star.unit_value(image) - n_star_n.unit_value(p)).norm() <= TOL);
        }
    }

    #[test]
    fn gns_is_a_star_representation((i, x, y, _z) in triple(), k in 0usize..12) {
        let g = &corpus_groupoids()[i];
        let x0 = PointId(k % g.units().len());
        let rep = GnsRep::new(g, x0).unwrap();
        let (a, b) = (element_of(g, &x), element_of(g, &y));
        let (ma, mb) = (rep.matrix(&a).unwrap(), rep.matrix(&b).unwrap());
        prop_assert!(rep.matrix(&(&a * &b)).unwrap().approx_eq(&(&ma * &mb), TOL));
        prop_assert!(rep.matrix(&a.involute()).unwrap().approx_eq(&ma.adjoint(), TOL));
        prop_assert!(rep.matrix(&a.expect()).unwrap().approx_eq(&ma.diagonal_part(), TOL));
    }

    #[test]
    fn taf_orders_are_strong_and_dense(n in 1usize..8) {
        let d = build_taf_order(n).unwrap();
        prop_assert!(d.is_strong());
        prop_assert_eq!(d.density_dimension(), (n * n, n * n));
        prop_assert!(d.groupoid().validate().is_valid());
    }

    #[test]
    fn nest_iff_total(mask in proptest::collection::vec(any::<bool>(), 20)) {
        // a random relation on four points, closed under composition
        let g = Arc::new(build_full_relation(4).unwrap());
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        let reach = closure(4, |i, j| pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask[k]));
        let arrows = (0..4).flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| reach[i][j])
            .map(|(i, j)| Arrow::new(PointId(i), PointId(j)));
        let order = ArrowOrder::new(&g, arrows).unwrap();
        let rep = GnsRep::new(&g, PointId(0)).unwrap();
        let lattice = invariant_lattice(&rep, &order).unwrap();
        let total = (0..4).all(|i| (0..4).all(|j| reach[i][j] || reach[j][i]));
        prop_assert_eq!(lattice.is_nest, total);
        prop_assert_eq!(validate_order(order).is_ok(), total);
    }

    #[test]
    fn spec_files_round_trip(n in 1usize..6, with_order in any::<bool>()) {
        let d = build_taf_order(n).unwrap();
        let spec = GroupoidSpec::from_parts("p", d.groupoid(), with_order.then_some(d.order()), None);
        let back = GroupoidSpec::parse(&spec.serialize().unwrap()).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(&*back.to_model().unwrap().groupoid, &**d.groupoid());
    }

    #[test]
    fn single_sink_graphs_have_one_orbit(depth in 1usize..5, width in 1usize..3) {
        // a layered graph: `width` vertices per layer, every vertex joined to
        // every vertex of the next layer, one sink at the bottom
        let mut vertices = vec!["sink".to_string()];
        let mut edges = Vec::new();
        let mut below = vec!["sink".to_string()];
        for layer in 0..depth {
            let here: Vec<String> = (0..width).map(|w| format!("v{layer}_{w}")).collect();
            for v in &here {
                for b in &below {
                    edges.push(Edge::new(&format!("{v}_{b}"), v, b));
                }
            }
            vertices.extend(here.iter().cloned());
            below = here;
        }
        let names: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let (g, order) = build_graph_groupoid(&names, &edges).unwrap();
        let expected: usize = (0..=depth).map(|l| if l == 0 { 1 } else { width.pow(l as u32) }).sum();
        prop_assert_eq!(g.orbits().len(), 1);
        prop_assert_eq!(g.units().len(), expected);
        prop_assert!(g.validate().is_valid());
        prop_assert_eq!(order.density_dimension().0, order.density_dimension().1);
    }
}

fn crossed_terms(len: usize) -> impl Strategy<Value = Vec<(i64, Vec<Complex64>)>> {
    proptest::collection::vec((-3i64..=3, proptest::collection::vec(coefficient(), len)), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn crossed_covariance(f in proptest::collection::vec(coefficient(), 5), k in -6i64..6) {
        let sys = Arc::new(FiniteDynamicalSystem::from_cycles(5, "(1 2 3)(4 5)").unwrap());
        let shifted: Vec<Complex64> = (0..5).map(|x| f[sys.phi_pow(PointId(x), k).0]).collect();
        let lhs = CrossedElement::function(&sys, f).unwrap().multiply(&CrossedElement::u_power(&sys, k)).unwrap();
        let rhs = CrossedElement::u_power(&sys, k).multiply(&CrossedElement::function(&sys, shifted).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 0.0));
    }

    #[test]
    fn crossed_ring_laws(x in crossed_terms(3), y in crossed_terms(3), z in crossed_terms(3)) {
        let sys = Arc::new(FiniteDynamicalSystem::from_cycles(3, "1 2 3").unwrap());
        let a = CrossedElement::from_fourier(&sys, x).unwrap();
        let b = CrossedElement::from_fourier(&sys, y).unwrap();
        let c = CrossedElement::from_fourier(&sys, z).unwrap();
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(ab_c.approx_eq(&a_bc, TOL));
        let lhs = a.multiply(&b).unwrap().involute();
        let rhs = b.involute().multiply(&a.involute()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL));
        prop_assert!(a.multiply(&CrossedElement::one(&sys)).unwrap().approx_eq(&a, TOL));
    }

    #[test]
    fn states_on_positive_crossed_elements(x in crossed_terms(3), point in 0usize..3) {
        let sys = Arc::new(FiniteDynamicalSystem::from_cycles(3, "1 2 3").unwrap());
        let b = CrossedElement::from_fourier(&sys, x).unwrap();
        let a = b.involute().multiply(&b).unwrap();
        let x0 = PointId(point);
        let r = rho0(&a, x0);
        prop_assert!(r.im.abs() <= TOL && r.re >= -TOL);
        prop_assert!(phi_functional(&a, x0).norm() <= r.re + 1e-12);
        prop_assert!(phi0_state(&a, x0).re >= -1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn crossed_c_star_identity(x in crossed_terms(3)) {
        let sys = Arc::new(FiniteDynamicalSystem::from_cycles(3, "1 2 3").unwrap());
        let a = CrossedElement::from_fourier(&sys, x).unwrap();
        let n = a.norm();
        let m = a.involute().multiply(&a).unwrap().norm();
        prop_assert!((m - n * n).abs() <= 1e-6 * n.max(1.0).powi(2));
    }
}
