use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torusbord::corpus;
use torusbord::io;
use torusbord::quasitoric::{add_pairs, realize_dim2};
use torusbord::{HPolytope, QuasitoricPair, TorusGraph};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pair_polynomials_are_cycles(n in 1usize..=3, seed in any::<u64>()) {
        let q = corpus::random_pair(n, &mut rng(seed));
        let g = q.quasitoric_polynomial().unwrap();
        prop_assert!(g.in_fkn().unwrap());
        prop_assert_eq!(g.num_terms() <= q.num_vertices(), true);
    }

    #[test]
    fn graph_polynomial_is_dual(n in 1usize..=3, seed in any::<u64>()) {
        let q = corpus::random_pair(n, &mut rng(seed));
        prop_assert_eq!(
            q.torus_graph().unwrap().torus_polynomial().unwrap(),
            q.quasitoric_polynomial().unwrap().dual().unwrap()
        );
    }

    #[test]
    fn connected_sums_match_graphs(n in 1usize..=3, seed in any::<u64>()) {
        let (q1, v, q2, w) = corpus::random_connected_sum_instance(n, &mut rng(seed)).unwrap();
        let q = QuasitoricPair::connected_sum(&q1, v, &q2, w).unwrap();
        let (g, _) = TorusGraph::connected_sum(
            &q1.torus_graph().unwrap(), v as u64, &q2.torus_graph().unwrap(), w as u64,
        ).unwrap();
        prop_assert!(g.is_isomorphic(&q.torus_graph().unwrap()));
        let lost = if n == 1 { 2 } else { n };
        prop_assert_eq!(q.num_facets(), q1.num_facets() + q2.num_facets() - lost);
        prop_assert_eq!(q.num_vertices(), q1.num_vertices() + q2.num_vertices() - 2);
    }

    #[test]
    fn products_wedge(seed in any::<u64>()) {
        let (a, b) = corpus::random_product_instance(&mut rng(seed));
        prop_assert_eq!(
            a.product(&b).unwrap().quasitoric_polynomial().unwrap(),
            a.quasitoric_polynomial().unwrap().external_product(&b.quasitoric_polynomial().unwrap()).unwrap()
        );
    }

    #[test]
    fn facet_permutations_preserve_polynomial(n in 1usize..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = corpus::random_pair(n, &mut r);
        let mut perm: Vec<usize> = (0..q.num_facets()).collect();
        perm.shuffle(&mut r);
        prop_assert_eq!(
            q.permute_facets(&perm).unwrap().quasitoric_polynomial().unwrap(),
            q.quasitoric_polynomial().unwrap()
        );
    }

    #[test]
    fn adding_pairs_adds(n in 2usize..=3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = corpus::random_pair(n, &mut rng(s1));
        let b = corpus::random_pair(n, &mut rng(s2));
        let s = add_pairs(&a, &b).unwrap();
        prop_assert!(s.check_star().unwrap());
        prop_assert_eq!(
            s.quasitoric_polynomial().unwrap(),
            a.quasitoric_polynomial().unwrap().checked_add(&b.quasitoric_polynomial().unwrap()).unwrap()
        );
    }

    #[test]
    fn dimension_two_realizes(seed in any::<u64>()) {
        let h = corpus::random_k2_element(&mut rng(seed)).unwrap();
        prop_assume!(!h.is_zero());
        prop_assert_eq!(realize_dim2(&h).unwrap().quasitoric_polynomial().unwrap(), h);
    }

    #[test]
    fn pair_json_round_trips(n in 1usize..=3, seed in any::<u64>()) {
        let q = corpus::random_pair(n, &mut rng(seed));
        let s = io::pair_to_json(&q);
        let back = io::parse_pair(&s).unwrap();
        prop_assert_eq!(io::pair_to_json(&back), s);
        prop_assert_eq!(back.quasitoric_polynomial().unwrap(), q.quasitoric_polynomial().unwrap());
    }
}

#[test]
fn polygons_enumerate() {
    for k in 3..=12 {
        let e = HPolytope::polygon(k).enumerate_vertices().unwrap();
        assert_eq!(e.data.num_vertices(), k);
        assert_eq!(e.data.edges().len(), k);
    }
}

#[test]
fn hexagon_polynomial() {
    let q = corpus::hexagon_pair();
    let g = q.quasitoric_polynomial().unwrap();
    assert_eq!(g.num_terms(), 6);
    assert!(g.in_fkn().unwrap());
}
