#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplex_sweep::geometry::{affine_dim, injective_pair_test};
use simplex_sweep::{Simplex, SimplicialComplex, Vector};

pub fn pts(raw: &[&[i64]]) -> Vec<Vector> {
    raw.iter().map(|c| Vector::from_ints(c)).collect()
}

pub fn complex(d: usize, raw: &[&[i64]], maximal: &[&[usize]]) -> SimplicialComplex {
    let maximal: Vec<Simplex> = maximal.iter().map(|m| Simplex::from(*m)).collect();
    SimplicialComplex::from_maximal(d, pts(raw), &maximal).unwrap()
}

/// Triangle (0,0), (2,0), (1,1).
pub fn t1() -> SimplicialComplex {
    complex(2, &[&[0, 0], &[2, 0], &[1, 1]], &[&[0, 1, 2]])
}

/// Path v0 - v1 - v2 with a bend at v1.
pub fn p1() -> SimplicialComplex {
    complex(2, &[&[0, 0], &[1, 1], &[2, 0]], &[&[0, 1], &[1, 2]])
}

/// Four collinear points joined consecutively.
pub fn l4() -> SimplicialComplex {
    complex(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0]], &[&[0, 1], &[1, 2], &[2, 3]])
}

/// Center 0 with neighbours A, B, C above and D below; only C and D are joined.
pub fn star() -> SimplicialComplex {
    complex(2, &[&[0, 0], &[-1, 1], &[0, 1], &[1, 1], &[0, -1]], &[&[0, 3], &[0, 4]])
}

/// Seven vertices in space sorted by height along the second axis, with
/// edges and triangles laid out so that v0 emits three edges, v1 two more and
/// v2 four more.
pub fn spatial_walkthrough() -> SimplicialComplex {
    complex(
        3,
        &[
            &[0, 0, 0],
            &[1, 1, 0],
            &[-3, 2, 0],
            &[5, 3, 3],
            &[6, 4, 1],
            &[-2, 5, -1],
            &[2, 6, 2],
        ],
        &[
            &[0, 1],
            &[1, 3],
            &[1, 4],
            &[0, 2, 3],
            &[2, 5, 6],
            &[2, 4, 6],
            &[2, 3, 6],
        ],
    )
}

/// Random embedded complex on `n` integer points, grown greedily: a simplex
/// is kept only if it is nondegenerate and meets everything already present
/// in a common face.
pub fn random_embedded(seed: u64, d: usize, n: usize) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vector> = Vec::new();
    while points.len() < n {
        let p = Vector::from_ints(&(0..d).map(|_| rng.gen_range(-12..=12)).collect::<Vec<_>>());
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut kept: Vec<Simplex> = (0..n).map(Simplex::vertex).collect();
    let fits = |kept: &[Simplex], tau: &Simplex| {
        let hull: Vec<Vector> = tau.ids().iter().map(|&i| points[i].clone()).collect();
        affine_dim(&hull).unwrap() == tau.dim()
            && kept.iter().all(|s| injective_pair_test(&points, tau.ids(), s.ids()).unwrap())
    };
    let mut pairs: Vec<Simplex> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Simplex::from([a, b]))).collect();
    pairs.shuffle(&mut rng);
    for e in pairs.into_iter().take(3 * n) {
        if rng.gen_bool(0.6) && fits(&kept, &e) {
            kept.push(e);
        }
    }
    for dim in 2..=d {
        let lower: Vec<Simplex> = kept.iter().filter(|s| s.dim() == dim - 1).cloned().collect();
        let mut tops: Vec<Simplex> = Vec::new();
        for s in &lower {
            for v in 0..n {
                if s.contains(v) || v < *s.ids().last().unwrap() {
                    continue;
                }
                let t = s.with(v);
                if t.facets().iter().all(|f| kept.contains(f)) {
                    tops.push(t);
                }
            }
        }
        tops.shuffle(&mut rng);
        for t in tops {
            if rng.gen_bool(0.7) && fits(&kept, &t) {
                kept.push(t);
            }
        }
    }
    SimplicialComplex::from_maximal(d, points, &kept).unwrap()
}
