//! Exact-arithmetic geometry: points and directions, affine hulls,
//! perpendicular circles of directions, γ-normals and simplex intersection.
//!
//! Nothing here ever takes a square root. Directions are kept unnormalized
//! and every predicate only looks at signs of rational expressions that are
//! invariant under positive scaling.

mod angle;
mod circle;
mod intersect;
mod lp;
mod vector;

pub use angle::AngleKey;
pub use circle::{CircleMode, DirectionCircle};
pub use intersect::{injective_pair_test, injective_pair_test_by_supports};
pub use lp::{maximize, LpOutcome};
pub use vector::{format_scalar, int, parse_scalar, ratio, Scalar, Vector};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::Simplex;
use crate::error::{Error, Result};

/// Position of a point relative to the hyperplane `⟨s, x⟩ = height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Below,
    On,
    Above,
}

pub fn halfspace_side(s: &Vector, sigma_height: &Scalar, v: &Vector) -> Side {
    match s.dot(v).cmp(sigma_height) {
        std::cmp::Ordering::Less => Side::Below,
        std::cmp::Ordering::Equal => Side::On,
        std::cmp::Ordering::Greater => Side::Above,
    }
}

/// Exact unnormalized Gram–Schmidt. Dependent inputs are skipped, so the
/// result is an orthogonal basis of the span and its length is the rank.
pub fn orthogonal_basis<'a>(vectors: impl IntoIterator<Item = &'a Vector>) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let reduced = basis.iter().fold(v.clone(), |acc, b| acc.reject_from(b));
        if !reduced.is_zero() {
            basis.push(reduced);
        }
    }
    basis
}

/// Edge vectors `p_k − p_0` spanning the direction space of the affine hull.
pub fn edge_vectors(points: &[Vector]) -> Vec<Vector> {
    match points.split_first() {
        Some((first, rest)) => rest.iter().map(|p| p - first).collect(),
        None => Vec::new(),
    }
}

fn check_uniform(points: &[Vector]) -> Result<usize> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("empty point sequence".into()))?;
    let d = first.dim();
    if points.iter().any(|p| p.dim() != d) {
        return Err(Error::InvalidInput("points have mixed dimensions".into()));
    }
    Ok(d)
}

/// Rank of a set of vectors by fraction-free elimination over the integers.
pub fn rank(vectors: &[Vector]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            let lcm = v.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            v.coords().iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut denom = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].clone();
        for row in rows[rank + 1..].iter_mut() {
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = (&pivot[col] * &*x - &f * y) / &denom;
            }
        }
        denom = pivot[col].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the affine hull of `points`.
pub fn affine_dim(points: &[Vector]) -> Result<usize> {
    check_uniform(points)?;
    Ok(rank(&edge_vectors(points)))
}

/// Orthogonal (unnormalized) basis of the orthogonal complement of the
/// direction space of `aff(points)`.
///
/// Completion is deterministic: standard basis vectors are tried in index
/// order. When `keep` is given it must be perpendicular to every edge and is
/// returned as the first basis vector.
///
/// A full-dimensional hull yields [`Error::NoPerpendicular`] labelled with an
/// empty simplex; callers that know the simplex relabel it.
pub fn complement_basis(points: &[Vector], keep: Option<&Vector>) -> Result<Vec<Vector>> {
    let d = check_uniform(points)?;
    let hull = orthogonal_basis(&edge_vectors(points));
    if hull.len() == d {
        return Err(Error::NoPerpendicular(Simplex::default()));
    }
    let mut complement: Vec<Vector> = Vec::with_capacity(d - hull.len());
    if let Some(keep) = keep {
        if keep.dim() != d || keep.is_zero() {
            return Err(Error::InvalidInput("kept direction must be a nonzero vector of the ambient dimension".into()));
        }
        if hull.iter().any(|h| !h.dot(keep).is_zero()) {
            return Err(Error::InvalidInput("kept direction is not perpendicular to the simplex".into()));
        }
        complement.push(keep.clone());
    }
    for index in 0..d {
        if complement.len() + hull.len() == d {
            break;
        }
        let candidate = hull
            .iter()
            .chain(complement.iter())
            .fold(Vector::basis(d, index), |acc, b| acc.reject_from(b));
        if !candidate.is_zero() {
            complement.push(candidate);
        }
    }
    Ok(complement)
}

/// True when `s` is nonzero and has zero dot product with every edge of the point set.
pub fn is_perpendicular(points: &[Vector], s: &Vector) -> bool {
    !s.is_zero() && edge_vectors(points).iter().all(|e| e.dot(s).is_zero())
}

/// Axis-aligned bounding box, used to skip exact tests on far-apart simplices.
pub(crate) fn bounding_box(points: &[&Vector]) -> (Vec<Scalar>, Vec<Scalar>) {
    let d = points[0].dim();
    let mut lo = points[0].0.clone();
    let mut hi = points[0].0.clone();
    for p in &points[1..] {
        for k in 0..d {
            if p.0[k] < lo[k] {
                lo[k] = p.0[k].clone();
            }
            if p.0[k] > hi[k] {
                hi[k] = p.0[k].clone();
            }
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(raw: &[&[i64]]) -> Vec<Vector> {
        raw.iter().map(|c| Vector::from_ints(c)).collect()
    }

    #[test]
    fn affine_dim_examples() {
        assert_eq!(affine_dim(&pts(&[&[0, 0]])).unwrap(), 0);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[1, 0], &[2, 0]])).unwrap(), 1);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[2, 0], &[1, 1]])).unwrap(), 2);
        assert!(matches!(affine_dim(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn complement_of_diagonal_edge() {
        let basis = complement_basis(&pts(&[&[0, 0], &[1, 1]]), None).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].same_direction(&Vector::from_ints(&[1, -1])));
    }

    #[test]
    fn complement_of_vertex_spans_space() {
        let basis = complement_basis(&pts(&[&[0, 0, 0]]), None).unwrap();
        assert_eq!(basis.len(), 3);
        for i in 0..3 {
            for j in 0..i {
                assert!(basis[i].dot(&basis[j]).is_zero());
            }
        }
    }

    #[test]
    fn complement_keeps_codimension_one_normal() {
        let tri = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let keep = Vector::from_ints(&[0, 0, 1]);
        let basis = complement_basis(&tri, Some(&keep)).unwrap();
        assert_eq!(basis, vec![keep]);
    }

    #[test]
    fn full_dimensional_hull_has_no_complement() {
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(complement_basis(&tri, None), Err(Error::NoPerpendicular(_))));
    }

    #[test]
    fn halfspace_examples() {
        let up = Vector::from_ints(&[0, 1]);
        let zero = int(0);
        assert_eq!(halfspace_side(&up, &zero, &Vector::from_ints(&[3, -1])), Side::Below);
        assert_eq!(halfspace_side(&up, &zero, &Vector::from_ints(&[3, 0])), Side::On);
        let up2 = Vector::from_ints(&[0, 2]);
        for y in -2..=2 {
            let v = Vector::from_ints(&[1, y]);
            assert_eq!(halfspace_side(&up, &zero, &v), halfspace_side(&up2, &zero, &v));
        }
    }

    proptest! {
        #[test]
        fn rank_matches_gram_schmidt(
            raw in proptest::collection::vec(proptest::collection::vec((-5i64..6, 1i64..4), 3), 0..5),
        ) {
            let vectors: Vec<Vector> = raw
                .iter()
                .map(|row| Vector::new(row.iter().map(|&(n, d)| ratio(n, d)).collect()))
                .collect();
            prop_assert_eq!(rank(&vectors), orthogonal_basis(&vectors).len());
        }

        #[test]
        fn complement_is_orthogonal_to_edges(raw in proptest::collection::vec(proptest::collection::vec(-5i64..5, 4), 1..4)) {
            let points: Vec<Vector> = raw.iter().map(|c| Vector::from_ints(c)).collect();
            let basis = complement_basis(&points, None).unwrap();
            let edges = edge_vectors(&points);
            prop_assert_eq!(basis.len() + affine_dim(&points).unwrap(), 4);
            for (i, b) in basis.iter().enumerate() {
                for e in &edges {
                    prop_assert!(b.dot(e).is_zero());
                }
                for other in &basis[..i] {
                    prop_assert!(b.dot(other).is_zero());
                }
            }
        }
    }
}
