use extremal::certifier::{brute_force_independent, certify_independence, sphere_reduce, Monomial, Poly, Verdict};
use extremal::exactfield::{gauss_rank, rank, rational, Field, Matrix, PrimeFieldCtx, QuadExt, Rational};
use extremal::families::{distance_set, hamming_distance, SetFamily, VectorSystem};
use extremal::io::{family_to_json, parse_family};
use extremal::search::{search_max, search_max_with_order, Predicate, SearchOptions, SearchProblem};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rational(n, d))
}

fn quad5() -> impl Strategy<Value = QuadExt> {
    (small_rational(), small_rational()).prop_map(|(a, b)| QuadExt::new(a, b, 5).unwrap())
}

fn field_axioms<T: Field>(a: T, b: T, c: T) {
    let zero = a.zero_like();
    let one = a.one_like();
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    assert_eq!(a.clone() + zero.clone(), a);
    assert_eq!(a.clone() * one.clone(), a);
    assert_eq!(a.clone() + (-a.clone()), zero);
    match a.inverse() {
        Some(inv) => assert_eq!(a * inv, one),
        None => assert!(a.is_zero()),
    }
}

fn tuples(n: usize, q: u8) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::btree_set(prop::collection::vec(0..q, n), 2..6).prop_map(|s| s.into_iter().collect())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        field_axioms(a, b, c);
    }

    #[test]
    fn quadratic_field_axioms(a in quad5(), b in quad5(), c in quad5()) {
        field_axioms(a, b, c);
    }

    #[test]
    fn prime_field_axioms(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
        let f = PrimeFieldCtx::new(7).unwrap();
        field_axioms(f.from_u64(a), f.from_u64(b), f.from_u64(c));
    }

    #[test]
    fn modular_rank_matches_enumeration(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        size in 1usize..=4,
        seed in prop::collection::vec(0u64..7, 16),
    ) {
        let f = PrimeFieldCtx::new(p).unwrap();
        let m = Matrix::from_fn(size, size, |i, j| f.from_u64(seed[i * 4 + j] % p)).unwrap();
        let cert = certify_independence(&m).unwrap();
        let brute = brute_force_independent(&m, &f).unwrap();
        prop_assert_eq!(cert.verdict == Verdict::Pass, brute);
        prop_assert_eq!(rank(&m) == size, brute);
    }

    #[test]
    fn bareiss_matches_gauss(rows in 1usize..=5, cols in 1usize..=5, entries in prop::collection::vec(-4i64..=4, 25)) {
        let m = Matrix::from_fn(rows, cols, |i, j| rational(entries[i * 5 + j], 1 + (i + j) as i64 % 3)).unwrap();
        prop_assert_eq!(rank(&m), gauss_rank(&m));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn hamming_metric_axioms(u in prop::collection::vec(0u8..3, 5), v in prop::collection::vec(0u8..3, 5), w in prop::collection::vec(0u8..3, 5)) {
        let d = |x: &[u8], y: &[u8]| hamming_distance(x, y).unwrap();
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert_eq!(d(&u, &u), 0);
        prop_assert_eq!(d(&u, &v) == 0, u == v);
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
    }

    #[test]
    fn family_vector_roundtrip(sets in prop::collection::btree_set(prop::collection::btree_set(0usize..6, 0..=6), 1..8)) {
        let lists: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let f = SetFamily::new(6, lists.clone()).unwrap();
        let h = f.characteristic_vectors().unwrap();
        let back = SetFamily::from_vector_system(&h).unwrap();
        prop_assert_eq!(back.to_point_lists(), lists);
        let reparsed = parse_family(&family_to_json(&f)).unwrap();
        prop_assert_eq!(reparsed.to_point_lists(), f.to_point_lists());
    }

    #[test]
    fn distance_set_matches_pairs(vectors in tuples(4, 3)) {
        let h = VectorSystem::new(4, 3, vectors.clone()).unwrap();
        let profile = distance_set(&h).unwrap();
        for (i, u) in vectors.iter().enumerate() {
            for v in &vectors[i + 1..] {
                prop_assert!(profile.distance_set.contains(&hamming_distance(u, v).unwrap()));
            }
        }
    }

    #[test]
    fn sphere_reduction_preserves_values(
        n in 2usize..=8,
        coeffs in prop::collection::vec(-5.0f64..5.0, 45),
        points in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 8), 100),
    ) {
        // a full quadratic polynomial in n variables
        let mut poly = Poly::zero(n, 0.0);
        let mut k = 0;
        poly.add_term(Monomial::one(), coeffs[k]);
        for i in 0..n {
            k += 1;
            poly.add_term(Monomial::var(i), coeffs[k]);
            for j in i..n {
                k += 1;
                poly.add_term(Monomial::from_vars(vec![i, j]), coeffs[k % 45]);
            }
        }
        let reduced = sphere_reduce(&poly).unwrap();
        for x in points {
            let x = &x[..n];
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-3 {
                continue;
            }
            let unit: Vec<f64> = x.iter().map(|v| v / norm).collect();
            let (a, b) = (poly.eval(&unit), reduced.as_poly().eval(&unit));
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn search_maximum_ignores_order(perm in Just((0u32..27).collect::<Vec<_>>()).prop_shuffle(), lambda in 1u64..=2) {
        let problem = SearchProblem::new(3, 3, Predicate::DistanceCongruent { lambda, p: 3 }).unwrap();
        let opts = SearchOptions { jobs: Some(1), ..SearchOptions::default() };
        let base = search_max(&problem, &opts).unwrap();
        let shuffled = search_max_with_order(&problem, &opts, &perm).unwrap();
        prop_assert_eq!(base.max_size, shuffled.max_size);
    }

    #[test]
    fn constant_distance_off_hadamard_stays_small(n in 2usize..=5, lambda in 1usize..=5) {
        prop_assume!(lambda <= n && 2 * lambda != n + 1);
        let problem = SearchProblem::new(n, 2, Predicate::ConstantDistance { lambda }).unwrap();
        let result = search_max(&problem, &SearchOptions::default()).unwrap();
        prop_assert!(result.max_size <= n);
    }
}
