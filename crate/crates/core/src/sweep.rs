//! Sweeping orders over the `i`-simplices of a complex.

use std::collections::HashSet;

use num_traits::Zero;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{edge_vectors, halfspace_side, AngleKey, CircleMode, DirectionCircle, Side, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub simplex: Simplex,
    /// Perpendicular to `simplex`, kept unnormalized.
    pub direction: Vector,
    /// Circle around `simplex` starting at `direction`, in circle-reporting orders.
    pub circle: Option<DirectionCircle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepingOrder {
    pub dim: usize,
    pub entries: Vec<SweepEntry>,
}

impl SweepingOrder {
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.entries.iter().map(|e| &e.simplex)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Vertices sorted by height along `γ(0)`, ties by id. With `report_circles`
/// every entry carries the circle moved onto its vertex.
pub fn order_vertices(k: &SimplicialComplex, circle: &DirectionCircle, report_circles: bool) -> Result<SweepingOrder> {
    if k.vertices().is_empty() {
        return Err(Error::InvalidInput("complex has no vertices".into()));
    }
    let s = circle.u().primitive();
    let mut ids: Vec<(crate::geometry::Scalar, usize)> =
        (0..k.vertices().len()).map(|id| (s.dot(k.vertex(id)), id)).collect();
    ids.sort();
    let entries = ids
        .into_iter()
        .map(|(_, id)| SweepEntry {
            simplex: Simplex::vertex(id),
            direction: s.clone(),
            circle: report_circles.then(|| circle.rebased(k.vertex(id).clone())),
        })
        .collect();
    Ok(SweepingOrder { dim: 0, entries })
}

/// Convenience for standalone use: vertices ordered along `s`.
pub fn order_vertices_along(k: &SimplicialComplex, s: &Vector) -> Result<SweepingOrder> {
    let first = k
        .vertices()
        .first()
        .ok_or_else(|| Error::InvalidInput("complex has no vertices".into()))?;
    let circle = DirectionCircle::deterministic(std::slice::from_ref(first), s)?;
    order_vertices(k, &circle, true)
}

/// Supplies the circle attached to a freshly emitted entry.
pub type CircleProvider<'a> = dyn FnMut(&Simplex, &Vector) -> Result<DirectionCircle> + 'a;

/// Sweeps the `i`-simplices of `k` from a sweeping order of its `(i−1)`-simplices.
///
/// Each previous entry rotates a halfspace around its simplex along the
/// entry's circle (or a deterministic one when none is attached) and emits
/// the not yet emitted cofacets in the order their apex is hit. With a
/// provider every emitted entry is annotated with a circle of its own.
pub fn order_next(
    k: &SimplicialComplex,
    prev: &SweepingOrder,
    mut provider: Option<&mut CircleProvider<'_>>,
) -> Result<SweepingOrder> {
    let mut emitted: HashSet<Simplex> = HashSet::new();
    let mut entries = Vec::new();
    for entry in &prev.entries {
        let rho = &entry.simplex;
        let cofacets = k.cofacets_of(rho)?;
        if cofacets.iter().all(|t| emitted.contains(t)) {
            continue;
        }
        let circle = match &entry.circle {
            Some(c) => c.clone(),
            None => DirectionCircle::deterministic(&k.points(rho), &entry.direction).map_err(|e| match e {
                Error::NoPerpendicular(_) => Error::NoPerpendicular(rho.clone()),
                other => other,
            })?,
        };
        let mut batch: Vec<(AngleKey, usize, Simplex, Vector)> = Vec::new();
        for tau in cofacets {
            if emitted.contains(tau) {
                continue;
            }
            let v = tau
                .apex_over(rho)
                .ok_or_else(|| Error::InternalInvariantViolation(format!("{tau} is not a cofacet of {rho}")))?;
            let (key, dir) = circle.gamma_normal(k.vertex(v));
            batch.push((key, v, tau.clone(), dir.primitive()));
        }
        batch.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, _, tau, dir) in batch {
            emitted.insert(tau.clone());
            let circle = match provider.as_deref_mut() {
                Some(p) => Some(p(&tau, &dir)?),
                None => None,
            };
            entries.push(SweepEntry {
                simplex: tau,
                direction: dir,
                circle,
            });
        }
    }
    Ok(SweepingOrder {
        dim: prev.dim + 1,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepViolation {
    NotPerpendicular { index: usize },
    NotInComplex(Simplex),
    Repeated(Simplex),
    Missing(Simplex),
    /// A cofacet strictly below entry `index` with no facet earlier in the order.
    UnsweptLowerCofacet { index: usize, cofacet: Simplex },
    BadCircle { index: usize, reason: String },
}

/// Brute-force check of perpendicularity, exactly-once coverage and the
/// lower halfspace property, plus consistency of any attached circles.
pub fn validate_sweeping_order(k: &SimplicialComplex, order: &SweepingOrder) -> Result<Vec<SweepViolation>> {
    let mut out = Vec::new();
    let mut seen: HashSet<&Simplex> = HashSet::new();
    for (index, entry) in order.entries.iter().enumerate() {
        let sigma = &entry.simplex;
        if sigma.dim() != order.dim || !k.contains(sigma) {
            out.push(SweepViolation::NotInComplex(sigma.clone()));
            continue;
        }
        let points = k.points(sigma);
        let s = &entry.direction;
        if s.is_zero() || edge_vectors(&points).iter().any(|e| !e.dot(s).is_zero()) {
            out.push(SweepViolation::NotPerpendicular { index });
        }
        if !seen.insert(sigma) {
            out.push(SweepViolation::Repeated(sigma.clone()));
        }
        let height = s.dot(&points[0]);
        for tau in k.cofacets_of(sigma)? {
            let v = tau.apex_over(sigma).expect("cofacet has an apex");
            if halfspace_side(s, &height, k.vertex(v)) != Side::Below {
                continue;
            }
            let covered = tau.facets().iter().any(|f| f != sigma && seen.contains(f));
            if !covered {
                out.push(SweepViolation::UnsweptLowerCofacet {
                    index,
                    cofacet: tau.clone(),
                });
            }
        }
        if let Some(circle) = &entry.circle {
            if let Err(reason) = check_circle(&points, s, circle) {
                out.push(SweepViolation::BadCircle { index, reason });
            }
        }
    }
    for sigma in k.simplices(order.dim) {
        if !seen.contains(sigma) {
            out.push(SweepViolation::Missing(sigma.clone()));
        }
    }
    Ok(out)
}

fn check_circle(points: &[Vector], s: &Vector, circle: &DirectionCircle) -> std::result::Result<(), String> {
    if !circle.u().same_direction(s) {
        return Err("circle does not start at the paired direction".into());
    }
    let edges = edge_vectors(points);
    if edges.iter().any(|e| !e.dot(circle.u()).is_zero()) {
        return Err("circle start is not perpendicular".into());
    }
    if circle.mode() == CircleMode::Perpendicular && edges.iter().any(|e| !e.dot(circle.w()).is_zero()) {
        return Err("circle leaves the perpendicular space".into());
    }
    let offset = circle.base() - &points[0];
    let in_hull = crate::geometry::orthogonal_basis(&edges)
        .iter()
        .fold(offset, |acc, b| acc.reject_from(b))
        .is_zero();
    if !in_hull {
        return Err("circle base is off the simplex's affine hull".into());
    }
    Ok(())
}
