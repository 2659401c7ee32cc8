mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplex_sweep::geometry::{complement_basis, edge_vectors, halfspace_side, int, orthogonal_basis, Side};
use simplex_sweep::reconstruct::ceil_log2;
use simplex_sweep::*;

fn random_perpendicular(rng: &mut ChaCha8Rng, k: &SimplicialComplex, sigma: &Simplex) -> Option<Vector> {
    let d = k.ambient_dim();
    let basis = orthogonal_basis(&edge_vectors(&k.points(sigma)));
    let raw = Vector::from_ints(&(0..d).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>());
    let s = basis.iter().fold(raw, |acc, b| acc.reject_from(b));
    (!s.is_zero()).then(|| s.primitive())
}

fn hidden_apexes(k: &SimplicialComplex, sigma: &Simplex) -> Vec<usize> {
    k.cofacets_of(sigma).unwrap().iter().map(|t| t.apex_over(sigma).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn reconstruction_round_trip(seed in 0u64..10_000, three in any::<bool>(), n in 3usize..14) {
        let d = if three { 3 } else { 2 };
        let hidden = common::random_embedded(seed, d, n);
        prop_assert!(check_structure(&hidden, Property::Embedded).unwrap().passes());
        let oracle = IndegreeOracle::with_trace(hidden.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let result = reconstruct_all(&oracle, &oracle.vertex_skeleton(), Property::Embedded, &mut rng, &ReconstructOptions::default()).unwrap();
        prop_assert_eq!(&result.complex, &hidden);

        for order in &result.orders {
            prop_assert!(validate_sweeping_order(&hidden, order).unwrap().is_empty());
            let table = CandidateTable::build(&hidden.skeleton(order.dim), order.dim, Property::Embedded).unwrap();
            for entry in &order.entries {
                let circle = entry.circle.as_ref().unwrap();
                let set = table.get(&entry.simplex).unwrap();
                prop_assert!(verify_candidate_ordering(&hidden, &entry.simplex, circle, set).is_ok());
            }
        }

        let mut bound = 0;
        for record in &result.searches {
            prop_assert!(record.queries <= record.query_bound());
            let height = record.direction.dot(hidden.vertex(record.sigma.ids()[0]));
            let apexes = hidden_apexes(&hidden, &record.sigma);
            for &v in &apexes {
                if halfspace_side(&record.direction, &height, hidden.vertex(v)) == Side::Below {
                    prop_assert!(record.known.contains(&v), "{} missing known {}", record.sigma, v);
                }
            }
            let expected: BTreeSet<usize> = apexes.into_iter().filter(|v| !record.known.contains(v)).collect();
            prop_assert_eq!(record.found.iter().copied().collect::<BTreeSet<_>>(), expected);
        }
        let counts = hidden.counts();
        let n0 = counts[0];
        for i in 0..result.orders.len() {
            let next = counts.get(i + 1).copied().unwrap_or(0);
            bound += counts[i] + next * ceil_log2(n0 + 1) + counts[i];
        }
        prop_assert!(oracle.stats().total as usize <= bound);
        prop_assert_eq!(&result.stats.queries, &oracle.stats());
        prop_assert_eq!(oracle.trace().len() as u64, oracle.stats().total);
    }

    #[test]
    fn reconstruction_is_seed_independent(seed in 0u64..10_000, three in any::<bool>(), n in 3usize..10) {
        let d = if three { 3 } else { 2 };
        let hidden = common::random_embedded(seed, d, n);
        for circle_seed in 0..3u64 {
            let oracle = IndegreeOracle::new(hidden.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(circle_seed);
            let result = reconstruct_all(&oracle, &oracle.vertex_skeleton(), Property::Embedded, &mut rng, &ReconstructOptions::default()).unwrap();
            prop_assert_eq!(&result.complex, &hidden);
        }
    }

    #[test]
    fn plain_sweeps_are_valid(seed in 0u64..10_000, three in any::<bool>(), n in 2usize..14) {
        let d = if three { 3 } else { 2 };
        let k = common::random_embedded(seed, d, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = loop {
            let s = Vector::from_ints(&(0..d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
            if !s.is_zero() {
                break s;
            }
        };
        let mut order = sweep::order_vertices_along(&k, &s).unwrap();
        prop_assert!(validate_sweeping_order(&k, &order).unwrap().is_empty());
        for _ in 1..d {
            if k.count(order.dim + 1) == 0 {
                break;
            }
            order = order_next(&k, &order, None).unwrap();
            prop_assert!(validate_sweeping_order(&k, &order).unwrap().is_empty());
            prop_assert_eq!(order.len(), k.count(order.dim));
        }
    }

    #[test]
    fn candidate_sets_are_sound_and_nested(seed in 0u64..10_000, three in any::<bool>(), n in 3usize..11) {
        let d = if three { 3 } else { 2 };
        let k = common::random_embedded(seed, d, n);
        let top = k.top_dim().unwrap();
        for i in 0..top.min(d - 1) + 1 {
            let ki = k.skeleton(i);
            let tables: Vec<CandidateTable> = [Property::Embedded, Property::LocallyInjective, Property::FacetsOnly]
                .into_iter()
                .map(|p| CandidateTable::build(&ki, i, p).unwrap())
                .collect();
            for sigma in k.simplices(i) {
                let sets: Vec<&CandidateSet> = tables.iter().map(|t| t.get(sigma).unwrap()).collect();
                for v in hidden_apexes(&k, sigma) {
                    for set in &sets {
                        prop_assert!(set.contains(v));
                    }
                }
                for pair in sets.windows(2) {
                    for &v in &pair[0].vertices {
                        prop_assert!(pair[1].contains(v));
                    }
                }
                // brute-force boundary condition
                for v in 0..k.vertices().len() {
                    if sigma.contains(v) {
                        continue;
                    }
                    let complete = sigma.with(v).facets().iter().all(|f| ki.contains(f));
                    prop_assert_eq!(sets[2].contains(v), complete);
                }
            }
            if i + 1 <= top {
                let upper = CandidateTable::build(&k.skeleton(i + 1), i + 1, Property::Embedded).unwrap();
                for (sigma, set) in upper.iter() {
                    for rho in sigma.facets() {
                        for &v in &set.vertices {
                            prop_assert!(tables[0].get(&rho).unwrap().contains(v), "{} of {} not a candidate of {}", v, sigma, rho);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_identities(seed in 0u64..10_000, three in any::<bool>(), n in 2usize..12) {
        let d = if three { 3 } else { 2 };
        let k = common::random_embedded(seed, d, n);
        let oracle = IndegreeOracle::new(k.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31));
        let all: Vec<Simplex> = k.all_simplices().cloned().collect();
        for _ in 0..10 {
            let sigma = &all[rng.gen_range(0..all.len())];
            // directions that put some apex on the hyperplane are tried too
            let tilted = k
                .cofacets_of(sigma)
                .unwrap()
                .iter()
                .next()
                .and_then(|tau| complement_basis(&k.points(tau), None).ok())
                .map(|b| b[0].clone());
            let s = match (rng.gen_bool(0.3), tilted) {
                (true, Some(t)) => t,
                _ => match random_perpendicular(&mut rng, &k, sigma) {
                    Some(s) => s,
                    None => continue,
                },
            };
            let height = s.dot(k.vertex(sigma.ids()[0]));
            let apexes = hidden_apexes(&k, sigma);
            let on = apexes.iter().filter(|&&v| s.dot(k.vertex(v)) == height).count();
            let up = oracle.indeg(sigma, &s).unwrap();
            let down = oracle.indeg(sigma, &-&s).unwrap();
            prop_assert_eq!(up + down - on, apexes.len());
            let q = int(rng.gen_range(1..50)) / int(rng.gen_range(1..50));
            prop_assert_eq!(oracle.indeg(sigma, &s.scale(&q)).unwrap(), up);
        }
    }

    #[test]
    fn complex_structure(seed in 0u64..10_000, three in any::<bool>(), n in 1usize..12) {
        let d = if three { 3 } else { 2 };
        let k = common::random_embedded(seed, d, n);
        prop_assert!(k.is_face_closed());
        for sigma in k.all_simplices() {
            let brute: BTreeSet<Simplex> = k
                .simplices(sigma.dim() + 1)
                .filter(|t| sigma.ids().iter().all(|&v| t.contains(v)))
                .cloned()
                .collect();
            prop_assert_eq!(k.cofacets_of(sigma).unwrap(), &brute);
        }
    }
}
