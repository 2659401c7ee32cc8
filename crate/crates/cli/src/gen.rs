//! Random embedded test complexes on perturbed grids.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplex_sweep::geometry::ratio;
use simplex_sweep::{check_assumption_reconstruction, check_structure, Error, Property, Result, Simplex, SimplicialComplex, Vector};

const MAX_ATTEMPTS: u64 = 100;

/// Keep probabilities for the top simplices, the intermediate faces and the
/// edges of the grid triangulation.
struct Keep {
    top: f64,
    faces: f64,
    edges: f64,
}

/// An embedded complex on `n` vertices in dimension `d` (2 or 3), fully
/// determined by `seed`.
///
/// Vertices are the first `n` points of a square or cubic grid in row-major
/// order, each moved by a small rational offset inside its own cell. The
/// complex is a random face-closed subcomplex of the grid triangulation plus
/// every vertex.
pub fn gen_complex(d: usize, n: usize, seed: u64) -> Result<SimplicialComplex> {
    if !(2..=3).contains(&d) {
        return Err(Error::InvalidInput(format!("gen supports dimension 2 or 3, got {d}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("gen needs at least one vertex".into()));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        let k = if d == 2 { planar(n, &mut rng)? } else { spatial(n, &mut rng)? };
        if passes_validators(&k)? {
            return Ok(k);
        }
    }
    Err(Error::InvalidInput(format!(
        "no valid complex for d={d}, n={n}, seed={seed} after {MAX_ATTEMPTS} attempts"
    )))
}

fn passes_validators(k: &SimplicialComplex) -> Result<bool> {
    if !check_structure(k, Property::Embedded)?.passes() {
        return Ok(false);
    }
    for i in 0..k.top_dim().unwrap_or(0) {
        if !check_assumption_reconstruction(&k.skeleton(i), i, Property::Embedded)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn side(n: usize, d: u32) -> usize {
    let mut m: usize = 1;
    while m.pow(d) < n {
        m += 1;
    }
    m
}

fn offset(rng: &mut ChaCha8Rng, bound: i64) -> simplex_sweep::Scalar {
    ratio(rng.gen_range(-bound..=bound), 1000)
}

fn planar(n: usize, rng: &mut ChaCha8Rng) -> Result<SimplicialComplex> {
    let m = side(n, 2);
    let points: Vec<Vector> = (0..n)
        .map(|id| {
            let (row, col) = (id / m, id % m);
            let x = ratio(col as i64, 1) + offset(rng, 200);
            let y = ratio(row as i64, 1) + offset(rng, 200);
            Vector::new(vec![x, y])
        })
        .collect();
    let id = |row: usize, col: usize| {
        let id = row * m + col;
        (id < n).then_some(id)
    };
    let mut triangles = Vec::new();
    for row in 0..m.saturating_sub(1) {
        for col in 0..m - 1 {
            if let (Some(a), Some(b), Some(c), Some(e)) = (id(row, col), id(row, col + 1), id(row + 1, col + 1), id(row + 1, col)) {
                triangles.push(Simplex::from([a, b, c]));
                triangles.push(Simplex::from([a, c, e]));
            }
        }
    }
    let keep = Keep {
        top: 0.4,
        faces: 0.0,
        edges: 0.35,
    };
    build(2, points, &triangles, &keep, rng)
}

fn spatial(n: usize, rng: &mut ChaCha8Rng) -> Result<SimplicialComplex> {
    let m = side(n, 3);
    let points: Vec<Vector> = (0..n)
        .map(|id| {
            let (z, y, x) = (id / (m * m), (id / m) % m, id % m);
            Vector::new(
                [x, y, z]
                    .iter()
                    .map(|&c| ratio(c as i64, 1) + offset(rng, 100))
                    .collect(),
            )
        })
        .collect();
    let id = |c: [usize; 3]| {
        let id = (c[2] * m + c[1]) * m + c[0];
        (id < n).then_some(id)
    };
    const PATHS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut tets = Vec::new();
    let cells = m.saturating_sub(1);
    for z in 0..cells {
        for y in 0..cells {
            for x in 0..cells {
                for path in PATHS {
                    let mut corner = [x, y, z];
                    let mut ids = vec![id(corner)];
                    for axis in path {
                        corner[axis] += 1;
                        ids.push(id(corner));
                    }
                    if let Some(ids) = ids.into_iter().collect::<Option<Vec<usize>>>() {
                        tets.push(Simplex::from(ids.as_slice()));
                    }
                }
            }
        }
    }
    let keep = Keep {
        top: 0.2,
        faces: 0.15,
        edges: 0.15,
    };
    build(3, points, &tets, &keep, rng)
}

fn build(d: usize, points: Vec<Vector>, tops: &[Simplex], keep: &Keep, rng: &mut ChaCha8Rng) -> Result<SimplicialComplex> {
    let mut chosen: Vec<Simplex> = tops.iter().filter(|_| rng.gen_bool(keep.top)).cloned().collect();
    let mut faces: BTreeSet<Simplex> = BTreeSet::new();
    let mut edges: BTreeSet<Simplex> = BTreeSet::new();
    for t in tops {
        for f in t.faces() {
            match f.dim() {
                1 => {
                    edges.insert(f);
                }
                dim if dim >= 2 && dim < t.dim() => {
                    faces.insert(f);
                }
                _ => {}
            }
        }
    }
    if keep.faces > 0.0 {
        chosen.extend(faces.into_iter().filter(|_| rng.gen_bool(keep.faces)));
    }
    chosen.extend(edges.into_iter().filter(|_| rng.gen_bool(keep.edges)));
    SimplicialComplex::from_maximal(d, points, &chosen)
}
