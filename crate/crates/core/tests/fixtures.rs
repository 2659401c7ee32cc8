mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplex_sweep::sweep::order_vertices_along;
use simplex_sweep::*;

fn up() -> Vector {
    Vector::from_ints(&[0, 1])
}

fn reconstruct(hidden: &SimplicialComplex, property: Property, seed: u64) -> Result<(Reconstruction, IndegreeOracle)> {
    let oracle = IndegreeOracle::with_trace(hidden.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = reconstruct_all(&oracle, &oracle.vertex_skeleton(), property, &mut rng, &ReconstructOptions::default())?;
    Ok((result, oracle))
}

#[test]
fn triangle_sweep_and_search() {
    let k = common::t1();
    let so0 = order_vertices_along(&k, &up()).unwrap();
    let so1 = order_next(&k, &so0, None).unwrap();
    let pairs: Vec<(Simplex, Vector)> = so1.entries.iter().map(|e| (e.simplex.clone(), e.direction.clone())).collect();
    assert_eq!(
        pairs,
        vec![
            (Simplex::from([0, 2]), Vector::from_ints(&[1, -1])),
            (Simplex::from([0, 1]), Vector::from_ints(&[0, -1])),
            (Simplex::from([1, 2]), Vector::from_ints(&[1, 1])),
        ]
    );

    let oracle = IndegreeOracle::new(k.clone());
    let k1 = k.skeleton(1);
    let table = CandidateTable::build(&k1, 1, Property::Embedded).unwrap();
    let circle = DirectionCircle::deterministic(&k.points(&[0, 2].into()), &Vector::from_ints(&[1, -1])).unwrap();
    let (found, record) =
        find_unfound(&oracle, &k1, &[0, 2].into(), &Vector::from_ints(&[1, -1]), &circle, &[], table.get(&[0, 2].into()).unwrap())
            .unwrap();
    assert_eq!(found, vec![1]);
    assert_eq!(record.unfound, 1);

    let circle = DirectionCircle::deterministic(&k.points(&[0, 1].into()), &Vector::from_ints(&[0, -1])).unwrap();
    let (found, record) =
        find_unfound(&oracle, &k1, &[0, 1].into(), &Vector::from_ints(&[0, -1]), &circle, &[2], table.get(&[0, 1].into()).unwrap())
            .unwrap();
    assert!(found.is_empty());
    assert_eq!(record.unfound, 0);
}

#[test]
fn triangle_found_at_first_edge() {
    let (result, _) = reconstruct(&common::t1(), Property::Embedded, 1).unwrap();
    assert_eq!(result.complex, common::t1());
    let edges: Vec<&Simplex> = result.orders[1].simplices().collect();
    assert_eq!(edges, vec![&Simplex::from([0, 2]), &Simplex::from([0, 1]), &Simplex::from([1, 2])]);
    let at_edges: Vec<&[usize]> = result.searches.iter().filter(|r| r.sigma.dim() == 1).map(|r| r.found.as_slice()).collect();
    assert_eq!(at_edges, vec![&[1][..], &[][..], &[][..]]);
}

#[test]
fn star_search_uses_three_queries() {
    let hidden = common::star();
    let oracle = IndegreeOracle::with_trace(hidden.clone());
    let k0 = hidden.vertex_skeleton();
    let circle = DirectionCircle::new(Vector::from_ints(&[0, 0]), up(), Vector::from_ints(&[1, 0]), CircleMode::Perpendicular).unwrap();
    let cand = CandidateSet {
        center: Simplex::vertex(0),
        vertices: vec![1, 2, 3, 4],
        property: Property::Embedded,
    };
    let (found, record) = find_unfound(&oracle, &k0, &Simplex::vertex(0), &up(), &circle, &[4], &cand).unwrap();
    assert_eq!(found, vec![3]);
    assert_eq!(record.queries, 3);
    assert_eq!(oracle.stats().total, 3);
    assert_eq!(record.upper_candidates, 3);
    assert!(record.queries <= record.query_bound());
    let results: Vec<usize> = oracle.trace().iter().map(|q| q.result).collect();
    assert_eq!(results, vec![1, 1, 1]);
}

#[test]
fn path_rejects_spurious_edge() {
    let hidden = common::p1();
    let (result, _) = reconstruct(&hidden, Property::Embedded, 3).unwrap();
    assert_eq!(result.complex, hidden);
    let table = CandidateTable::build(&hidden.vertex_skeleton(), 0, Property::Embedded).unwrap();
    assert!(table.get(&Simplex::vertex(0)).unwrap().contains(2));
    assert!(!result.complex.contains(&[0, 2].into()));
}

#[test]
fn single_vertex_needs_no_queries() {
    let hidden = common::complex(2, &[&[4, 4]], &[]);
    let (result, oracle) = reconstruct(&hidden, Property::Embedded, 0).unwrap();
    assert_eq!(result.complex, hidden);
    assert!(oracle.stats().total <= 1);
}

#[test]
fn collinear_path_needs_embedding() {
    let hidden = common::l4();
    let err = reconstruct(&hidden, Property::FacetsOnly, 0).unwrap_err();
    assert!(matches!(err, Error::AssumptionViolation(_)));
    let violations = check_assumption_reconstruction(&hidden.vertex_skeleton(), 0, Property::FacetsOnly).unwrap();
    assert!(!violations.is_empty());
    let (result, _) = reconstruct(&hidden, Property::Embedded, 0).unwrap();
    assert_eq!(result.complex, hidden);
}

#[test]
fn spatial_walkthrough_orders() {
    let k = common::spatial_walkthrough();
    assert!(check_structure(&k, Property::Embedded).unwrap().passes());
    let so0 = order_vertices_along(&k, &Vector::from_ints(&[0, 1, 0])).unwrap();
    let ids: Vec<usize> = so0.simplices().map(|s| s.ids()[0]).collect();
    assert_eq!(ids, (0..7).collect::<Vec<_>>());

    let so1 = order_next(&k, &so0, None).unwrap();
    let edges: Vec<Simplex> = so1.simplices().cloned().collect();
    let expected: Vec<Simplex> = [[0, 2], [0, 1], [0, 3], [1, 4], [1, 3], [2, 5], [2, 6], [2, 4], [2, 3]]
        .into_iter()
        .map(Simplex::from)
        .collect();
    assert_eq!(&edges[..9], &expected[..]);
    assert!(validate_sweeping_order(&k, &so1).unwrap().is_empty());

    let so2 = order_next(&k, &so1, None).unwrap();
    let tris: Vec<Simplex> = so2.simplices().cloned().collect();
    assert_eq!(
        tris,
        vec![Simplex::from([0, 2, 3]), Simplex::from([2, 5, 6]), Simplex::from([2, 3, 6]), Simplex::from([2, 4, 6])]
    );
    assert!(validate_sweeping_order(&k, &so2).unwrap().is_empty());

    let (result, _) = reconstruct(&k, Property::Embedded, 9).unwrap();
    assert_eq!(result.complex, k);
    for order in &result.orders {
        assert!(validate_sweeping_order(&k, order).unwrap().is_empty());
    }
}

#[test]
fn figure_style_structures() {
    let a = common::complex(2, &[&[0, 0], &[2, 0], &[1, 2], &[1, -2], &[4, 0], &[5, 1]], &[&[0, 1, 2], &[0, 1, 3], &[4, 5]]);
    assert!(check_structure(&a, Property::Embedded).unwrap().passes());
    assert!(check_structure(&a, Property::LocallyInjective).unwrap().passes());

    let b = common::complex(2, &[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[6, 1]], &[&[0, 1, 2], &[3, 4]]);
    assert!(!check_structure(&b, Property::Embedded).unwrap().passes());
    assert!(check_structure(&b, Property::LocallyInjective).unwrap().passes());

    let c = common::complex(2, &[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[5, 1]], &[&[0, 1, 2], &[0, 3, 4]]);
    assert!(!check_structure(&c, Property::Embedded).unwrap().passes());
    assert!(!check_structure(&c, Property::LocallyInjective).unwrap().passes());
}

#[test]
fn triangle_assumption_with_single_candidate() {
    let k1 = common::t1().skeleton(1);
    assert!(check_assumption_reconstruction(&k1, 1, Property::FacetsOnly).unwrap().is_empty());
}

#[test]
fn facets_only_reconstruction_of_triangle() {
    let (result, _) = reconstruct(&common::t1(), Property::FacetsOnly, 2).unwrap();
    assert_eq!(result.complex, common::t1());
}
