mod common;

use common::*;
use greenseq_core::cluster::*;
use greenseq_core::exchange::{explore, ExploreLimits};
use greenseq_core::laurent::{LaurentPoly, LaurentRing};
use greenseq_core::tropical::trajectory;
use num_traits::One;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn laurent_division_is_exact_on_random_trajectories() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..100 {
        let q = trajectory_quiver(&mut rng);
        let n = q.n();
        let seq = random_sequence(&mut rng, n, 8);
        let seed = Seed::initial(&q).unwrap().mutate_sequence(&seq).expect("exact division");
        let point = random_point(&mut rng, 2 * n);
        let expected = numeric_trajectory(&q, &seq, &point);
        for (v, x) in seed.vars().iter().zip(&expected) {
            assert_eq!(&eval(v, &point), x, "quiver {q:?} sequence {seq:?}");
        }
    }
}

#[test]
fn markov_trajectories_stay_exact() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let seq = random_sequence(&mut rng, 3, 5);
        let seed = Seed::initial(&markov()).unwrap().mutate_sequence(&seq).unwrap();
        let point = random_point(&mut rng, 6);
        let expected = numeric_trajectory(&markov(), &seq, &point);
        for (v, x) in seed.vars().iter().zip(&expected) {
            assert_eq!(&eval(v, &point), x);
            assert!(v.all_coefficients_positive());
        }
    }
}

#[test]
fn cluster_variables_have_positive_coefficients() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..100 {
        let q = trajectory_quiver(&mut rng);
        let n = q.n();
        let seq = random_sequence(&mut rng, n, 8);
        let seed = Seed::initial(&q).unwrap().mutate_sequence(&seq).unwrap();
        assert!(seed.vars().iter().all(|v| v.all_coefficients_positive()));
    }
}

#[test]
fn separation_and_grading_on_random_trajectories() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..100 {
        let q = trajectory_quiver(&mut rng);
        let n = q.n();
        let b0 = q.top_block();
        let seq = random_sequence(&mut rng, n, 8);
        let seed = Seed::initial(&q).unwrap().mutate_sequence(&seq).unwrap();
        let steps = trajectory(&q, &seq).unwrap();
        let gmat = &steps.last().unwrap().g;
        for (j, v) in seed.vars().iter().enumerate() {
            let g = g_vector(v, &b0).expect("homogeneous");
            let f = f_polynomial(v);
            assert!(verify_separation(v, &b0, &g, &f));
            assert_eq!(g.0, gmat.0.column(j));
            assert!(f.coefficient(&vec![0; n]).is_one());
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn every_enumerated_variable_satisfies_separation() {
    for q in [a2(), a3(), kronecker()] {
        let b0 = q.top_block();
        let e = enumerate_clusters(&q, 60).unwrap();
        for s in &e.seeds {
            for v in s.vars() {
                let g = g_vector(v, &b0).unwrap();
                assert!(verify_separation(v, &b0, &g, &f_polynomial(v)));
            }
        }
    }
}

#[test]
fn cluster_count_matches_exchange_graph_in_type_a() {
    for (q, count) in [(a2(), 5), (a3(), 14)] {
        let e = enumerate_clusters(&q, 1_000).unwrap();
        assert!(e.complete);
        assert_eq!(e.seeds.len(), count);
        let g = explore(&q, ExploreLimits::default()).unwrap();
        assert_eq!(g.vertices.len(), count);
        assert_eq!(e.edges.len(), count * q.n() / 2);
    }
}

#[test]
fn a2_variables_are_the_pentagon_set() {
    let ring = LaurentRing::principal(2);
    let x = |i: usize| LaurentPoly::variable(ring, i - 1);
    let inv = |i: usize| {
        let mut e = vec![0; 4];
        e[i - 1] = -1;
        LaurentPoly::monomial(ring, e, 1).unwrap()
    };
    let one = LaurentPoly::one(ring);
    let x23 = &x(2) + &x(3);
    let expected = [
        x(1),
        x(2),
        &x23 * &inv(1),
        &(&x23 + &(&(&x(1) * &x(3)) * &x(4))) * &(&inv(1) * &inv(2)),
        &(&one + &(&x(1) * &x(4))) * &inv(2),
    ];
    let e = enumerate_clusters(&a2(), 100).unwrap();
    let mut found: Vec<LaurentPoly> = Vec::new();
    for s in &e.seeds {
        for v in s.vars() {
            if !found.contains(v) {
                found.push(v.clone());
            }
        }
    }
    assert_eq!(found.len(), 5);
    for v in &expected {
        assert!(found.contains(v), "missing {v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutation_twice_restores_the_seed(seed in any::<u64>(), k in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = trajectory_quiver(&mut rng);
        let n = q.n();
        let seq = random_sequence(&mut rng, n, 4);
        let s = Seed::initial(&q).unwrap().mutate_sequence(&seq).unwrap();
        let k = k % n;
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }
}
