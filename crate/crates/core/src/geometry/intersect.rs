use num_traits::{One, Signed, Zero};

use super::lp::{maximize, LpOutcome};
use super::{bounding_box, Scalar, Vector};
use crate::error::{Error, Result};

/// Equality system for `Σλ_k a_k = Σμ_k b_k`, `Σλ = 1`, `Σμ = 1` over the
/// columns `[λ | μ]`, together with the objective that weighs every vertex
/// outside the shared face.
fn pair_system(vertices: &[Vector], a: &[usize], b: &[usize]) -> Result<(Vec<Vec<Scalar>>, Vec<Scalar>, Vec<Scalar>)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("simplices must be nonempty".into()));
    }
    let lookup = |id: usize| {
        vertices
            .get(id)
            .ok_or_else(|| Error::InvalidInput(format!("vertex id {id} out of range")))
    };
    let d = lookup(a[0])?.dim();
    for &id in a.iter().chain(b) {
        if lookup(id)?.dim() != d {
            return Err(Error::InvalidInput("points have mixed dimensions".into()));
        }
    }
    let cols = a.len() + b.len();
    let mut rows = vec![vec![Scalar::zero(); cols]; d + 2];
    for (k, &id) in a.iter().enumerate() {
        for (r, x) in vertices[id].coords().iter().enumerate() {
            rows[r][k] = x.clone();
        }
        rows[d][k] = Scalar::one();
    }
    for (k, &id) in b.iter().enumerate() {
        for (r, x) in vertices[id].coords().iter().enumerate() {
            rows[r][a.len() + k] = -x;
        }
        rows[d + 1][a.len() + k] = Scalar::one();
    }
    let mut rhs = vec![Scalar::zero(); d + 2];
    rhs[d] = Scalar::one();
    rhs[d + 1] = Scalar::one();
    let outside = a
        .iter()
        .map(|id| !b.contains(id))
        .chain(b.iter().map(|id| !a.contains(id)))
        .map(|o| if o { Scalar::one() } else { Scalar::zero() })
        .collect();
    Ok((rows, rhs, outside))
}

/// True when `conv(A) ∩ conv(B) = conv(A ∩ B)`, the intersection being empty
/// when the simplices share no vertex.
///
/// The pair fails exactly when some common point has a convex representation
/// on either side putting weight on a vertex outside the shared face. That is
/// decided by maximizing the outside weight with an exact linear program.
pub fn injective_pair_test(vertices: &[Vector], a: &[usize], b: &[usize]) -> Result<bool> {
    let (rows, rhs, outside) = pair_system(vertices, a, b)?;
    if outside.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let mut union: Vec<usize> = a.iter().chain(b).copied().collect();
    union.sort_unstable();
    union.dedup();
    let shares = union.len() < a.len() + b.len();
    if !shares {
        let pa: Vec<&Vector> = a.iter().map(|&i| &vertices[i]).collect();
        let pb: Vec<&Vector> = b.iter().map(|&i| &vertices[i]).collect();
        let (lo_a, hi_a) = bounding_box(&pa);
        let (lo_b, hi_b) = bounding_box(&pb);
        if (0..lo_a.len()).any(|k| hi_a[k] < lo_b[k] || hi_b[k] < lo_a[k]) {
            return Ok(true);
        }
    }
    if union.len() <= vertices[a[0]].dim() + 1 {
        // both are faces of one nondegenerate simplex
        let points: Vec<Vector> = union.iter().map(|&i| vertices[i].clone()).collect();
        if super::affine_dim(&points)? + 1 == union.len() {
            return Ok(true);
        }
    }
    if !shares {
        for (point, hull) in [(a, b), (b, a)] {
            if let [p] = point {
                if let Some(inside) = point_in_independent_hull(vertices, hull, &vertices[*p]) {
                    return Ok(!inside);
                }
            }
        }
    }
    Ok(match maximize(&outside, &rows, &rhs) {
        LpOutcome::Infeasible => true,
        LpOutcome::Optimal(value) => value.is_zero(),
        LpOutcome::Unbounded => false,
    })
}

/// Barycentric membership of `p` in `conv(hull)`; `None` when the hull's
/// vertices are affinely dependent.
fn point_in_independent_hull(vertices: &[Vector], hull: &[usize], p: &Vector) -> Option<bool> {
    let d = p.dim();
    let mut rows = vec![vec![Scalar::zero(); hull.len()]; d + 1];
    for (k, &id) in hull.iter().enumerate() {
        for (r, x) in vertices[id].coords().iter().enumerate() {
            rows[r][k] = x.clone();
        }
        rows[d][k] = Scalar::one();
    }
    let mut rhs = p.coords().to_vec();
    rhs.push(Scalar::one());
    let support: Vec<usize> = (0..hull.len()).collect();
    match solve_unique(&rows, &rhs, &support) {
        Some(x) => Some(x.iter().all(|v| !v.is_negative())),
        None => {
            let points: Vec<Vector> = hull.iter().map(|&i| vertices[i].clone()).collect();
            let independent = super::affine_dim(&points).ok()? + 1 == hull.len();
            independent.then_some(false)
        }
    }
}

/// Same predicate decided by enumerating candidate supports: the best
/// representation is attained at a basic solution, whose columns are linearly
/// independent and determine it uniquely.
///
/// Exponential in the vertex count; intended as a cross-check.
pub fn injective_pair_test_by_supports(vertices: &[Vector], a: &[usize], b: &[usize]) -> Result<bool> {
    let (rows, rhs, outside) = pair_system(vertices, a, b)?;
    let cols = outside.len();
    for mask in 1u32..(1 << cols) {
        let support: Vec<usize> = (0..cols).filter(|k| mask & (1 << k) != 0).collect();
        if support.iter().all(|&k| outside[k].is_zero()) {
            continue;
        }
        if let Some(x) = solve_unique(&rows, &rhs, &support) {
            if x.iter().all(|v| !v.is_negative()) && support.iter().zip(&x).any(|(&k, v)| !outside[k].is_zero() && v.is_positive()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solves `rows[:, support] · x = rhs` when the chosen columns are linearly
/// independent and the system is consistent.
fn solve_unique(rows: &[Vec<Scalar>], rhs: &[Scalar], support: &[usize]) -> Option<Vec<Scalar>> {
    let n = support.len();
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut line: Vec<Scalar> = support.iter().map(|&k| row[k].clone()).collect();
            line.push(r.clone());
            line
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let found = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, found);
        let p = m[pivot_row][col].clone();
        for x in m[pivot_row].iter_mut() {
            *x = &*x / &p;
        }
        let pr = m[pivot_row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != pivot_row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, y) in line.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|line| !line[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|k| m[k][n].clone()).collect())
}
