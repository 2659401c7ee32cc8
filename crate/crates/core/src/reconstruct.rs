//! Recovering a hidden complex from its vertices and indegree queries.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::candidates::{
    candidate_ordering_circle, check_assumption_with, global_vertex_circle, CandidateSet, CandidateTable,
    DEFAULT_MAX_RETRIES,
};
use crate::complex::{Property, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{AngleKey, CircleMode, DirectionCircle, Side, Vector};
use crate::oracle::{IndegreeOracle, QueryStats};
use crate::sweep::{order_next, order_vertices, SweepingOrder};

/// Bookkeeping of one radial search around a simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRecord {
    pub sigma: Simplex,
    pub direction: Vector,
    pub known: Vec<usize>,
    pub candidates: usize,
    /// Candidates with angle in `[0, π]`.
    pub upper_candidates: usize,
    /// Cofacets on or above the simplex that were not yet known.
    pub unfound: usize,
    pub queries: usize,
    pub found: Vec<usize>,
    /// Most bisection steps spent on a single vertex.
    pub depth: usize,
}

impl SearchRecord {
    /// `1 + U·⌈log₂(l+1)⌉`.
    pub fn query_bound(&self) -> usize {
        1 + self.unfound * ceil_log2(self.upper_candidates + 1)
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Counts of known cofacet vertices in the closed lower halfspace of the
/// direction at each query angle.
///
/// A vertex with normal angle `β` lies in the closed lower halfspace of the
/// direction at angle `q` exactly when `β` is in `[q − π, q]` on the circle.
/// Both lists must be sorted ascending; the two pointers each pass once per
/// half of the circle.
pub fn known_at_most(queries: &[AngleKey], known: &[AngleKey]) -> Vec<usize> {
    let m = known.len();
    let mut out = Vec::with_capacity(queries.len());
    let mut upto = 0;
    let mut below_opposite = 0;
    let mut in_lower_half = false;
    for q in queries {
        while upto < m && known[upto] <= *q {
            upto += 1;
        }
        let opposite = q.opposite();
        if !q.below_pi() && !in_lower_half {
            in_lower_half = true;
            below_opposite = 0;
        }
        while below_opposite < m && known[below_opposite] < opposite {
            below_opposite += 1;
        }
        out.push(if in_lower_half {
            upto - below_opposite
        } else {
            upto + (m - below_opposite)
        });
    }
    out
}

fn checked_sub(total: usize, known: usize, sigma: &Simplex) -> Result<usize> {
    total.checked_sub(known).ok_or_else(|| {
        Error::InternalInvariantViolation(format!(
            "more known cofacets than the indegree of {sigma} allows ({known} > {total})"
        ))
    })
}

/// Finds the vertices of cofacets of `sigma` that lie on or above it along
/// `s` and are not yet in `known`.
///
/// `circle` must start at `s` and order the candidates. One query settles how
/// many such cofacets exist; each is then located by bisecting over the
/// candidates in the upper half circle.
pub fn find_unfound(
    oracle: &IndegreeOracle,
    k: &SimplicialComplex,
    sigma: &Simplex,
    s: &Vector,
    circle: &DirectionCircle,
    known: &[usize],
    cand: &CandidateSet,
) -> Result<(Vec<usize>, SearchRecord)> {
    let mut record = SearchRecord {
        sigma: sigma.clone(),
        direction: s.clone(),
        known: known.to_vec(),
        candidates: cand.len(),
        upper_candidates: 0,
        unfound: 0,
        queries: 0,
        found: Vec::new(),
        depth: 0,
    };
    if let Some(&stray) = known.iter().find(|&&v| !cand.contains(v)) {
        return Err(Error::InternalInvariantViolation(format!(
            "known vertex {stray} of {sigma} is not a candidate"
        )));
    }
    if cand.is_empty() {
        return Ok((Vec::new(), record));
    }

    let mut ordered: Vec<(AngleKey, usize, Vector)> = cand
        .vertices
        .iter()
        .map(|&v| {
            let (key, dir) = circle.gamma_normal(k.vertex(v));
            (key, v, dir)
        })
        .collect();
    ordered.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let known_set: HashSet<usize> = known.iter().copied().collect();
    let known_keys: Vec<AngleKey> = ordered
        .iter()
        .filter(|(_, v, _)| known_set.contains(v))
        .map(|(key, _, _)| key.clone())
        .collect();

    let down = -s;
    let indeg_down = oracle.indeg(sigma, &down)?;
    record.queries += 1;

    if circle.mode() == CircleMode::Codim1 {
        let height = down.dot(circle.base());
        let known_down = known
            .iter()
            .filter(|&&v| crate::geometry::halfspace_side(&down, &height, k.vertex(v)) != Side::Above)
            .count();
        record.unfound = checked_sub(indeg_down, known_down, sigma)?;
        if record.unfound > 0 {
            let (key, first, _) = &ordered[0];
            if !key.is_zero_angle() || known_set.contains(first) {
                return Err(Error::InternalInvariantViolation(format!(
                    "no unknown candidate above hyperplane simplex {sigma}"
                )));
            }
            record.found.push(*first);
        }
        record.upper_candidates = ordered.iter().filter(|(key, _, _)| key.is_zero_angle()).count();
        return Ok((record.found.clone(), record));
    }

    let upper: Vec<&(AngleKey, usize, Vector)> = ordered.iter().filter(|(key, _, _)| key.at_most_pi()).collect();
    let l = upper.len();
    record.upper_candidates = l;
    let mut query_keys: Vec<AngleKey> = upper.iter().map(|(key, _, _)| key.clone()).collect();
    query_keys.push(AngleKey::pi());
    let known_le = known_at_most(&query_keys, &known_keys);
    record.unfound = checked_sub(indeg_down, known_le[l], sigma)?;
    if record.unfound > 0 && l == 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "{sigma} has unfound cofacets but no candidate in the upper half circle"
        )));
    }

    while record.found.len() < record.unfound {
        let (mut a, mut b) = (1usize, l + 1);
        let mut steps = 0;
        while a + 1 < b {
            let c = (a + b) / 2 - 1;
            let (_, _, dir) = upper[c - 1];
            let count = oracle.indeg(sigma, dir)?;
            record.queries += 1;
            steps += 1;
            if count > record.found.len() + known_le[c - 1] {
                b = c + 1;
            } else {
                a = c + 1;
            }
        }
        record.depth = record.depth.max(steps);
        let v = upper[a - 1].1;
        if known_set.contains(&v) || record.found.contains(&v) {
            return Err(Error::InternalInvariantViolation(format!(
                "bisection around {sigma} landed on already recorded vertex {v}"
            )));
        }
        record.found.push(v);
    }
    Ok((record.found.clone(), record))
}

/// Known cofacet vertices per simplex.
#[derive(Debug, Clone, Default)]
pub struct KnownMap {
    lists: HashMap<Simplex, Vec<usize>>,
    guard: HashSet<(Simplex, usize)>,
}

impl KnownMap {
    pub fn get(&self, sigma: &Simplex) -> &[usize] {
        self.lists.get(sigma).map_or(&[], Vec::as_slice)
    }

    /// Records `rho` as a known cofacet of each of its facets.
    pub fn record(&mut self, rho: &Simplex) {
        for &v in rho.ids() {
            let facet = rho.without(v);
            if self.guard.insert((facet.clone(), v)) {
                self.lists.entry(facet).or_default().push(v);
            }
        }
    }
}

/// Finds all `(i+1)`-simplices by walking a circle-reporting sweeping order
/// of the `i`-simplices.
pub fn reconstruct_next(
    oracle: &IndegreeOracle,
    k: &SimplicialComplex,
    order: &SweepingOrder,
    table: &CandidateTable,
) -> Result<(Vec<Simplex>, Vec<SearchRecord>)> {
    let mut known = KnownMap::default();
    let mut emitted: HashSet<Simplex> = HashSet::new();
    let mut out = Vec::new();
    let mut records = Vec::with_capacity(order.len());
    for entry in &order.entries {
        let sigma = &entry.simplex;
        let circle = entry
            .circle
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("sweeping order entry {sigma} carries no circle")))?;
        let cand = table.get(sigma)?;
        let (found, record) = find_unfound(oracle, k, sigma, &entry.direction, circle, known.get(sigma), cand)?;
        for v in found {
            let rho = sigma.with(v);
            if !emitted.insert(rho.clone()) {
                return Err(Error::InternalInvariantViolation(format!("{rho} found twice")));
            }
            known.record(&rho);
            out.push(rho);
        }
        records.push(record);
    }
    Ok((out, records))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconStats {
    pub n: Vec<usize>,
    pub queries: QueryStats,
    pub max_binary_search_depth: usize,
    #[serde(skip)]
    pub unfound: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ReconstructOptions {
    pub max_retries: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub complex: SimplicialComplex,
    pub stats: ReconStats,
    /// The circle-reporting order of each swept dimension.
    pub orders: Vec<SweepingOrder>,
    pub searches: Vec<SearchRecord>,
}

fn ensure_assumption(k: &SimplicialComplex, table: &CandidateTable) -> Result<()> {
    let violations = check_assumption_with(k, table)?;
    if let Some(v) = violations.first() {
        return Err(Error::AssumptionViolation(format!(
            "adding the candidates of {} lets {} and {} meet outside a common face ({} violation(s) at dimension {})",
            v.center,
            v.first,
            v.second,
            violations.len(),
            table.level
        )));
    }
    Ok(())
}

/// Rebuilds the complex hidden behind `oracle`, starting from its vertices.
pub fn reconstruct_all<R: Rng + ?Sized>(
    oracle: &IndegreeOracle,
    vertices: &SimplicialComplex,
    property: Property,
    rng: &mut R,
    options: &ReconstructOptions,
) -> Result<Reconstruction> {
    let mut k = vertices.vertex_skeleton();
    let d = k.ambient_dim();
    let mut orders = Vec::new();
    let mut searches = Vec::new();

    let mut table = CandidateTable::build(&k, 0, property)?;
    ensure_assumption(&k, &table)?;
    if !table.is_exhausted() {
        let circle = global_vertex_circle(&k, &table, rng, options.max_retries)?;
        let mut order = order_vertices(&k, &circle, true)?;
        let mut i = 0;
        loop {
            let (new, records) = reconstruct_next(oracle, &k, &order, &table)?;
            searches.extend(records);
            orders.push(order);
            if new.is_empty() {
                break;
            }
            k.add_closed(&new)?;
            if property == Property::Embedded && i + 1 == d {
                break;
            }
            i += 1;
            table = CandidateTable::build(&k, i, property)?;
            ensure_assumption(&k, &table)?;
            if table.is_exhausted() {
                break;
            }
            let mut provider = |sigma: &Simplex, s: &Vector| {
                candidate_ordering_circle(&k, sigma, s, table.get(sigma)?, rng, options.max_retries)
            };
            order = order_next(&k, orders.last().expect("previous order"), Some(&mut provider))?;
        }
    }

    let stats = ReconStats {
        n: k.counts(),
        queries: oracle.stats(),
        max_binary_search_depth: searches.iter().map(|r| r.depth).max().unwrap_or(0),
        unfound: searches.iter().map(|r| r.unfound).collect(),
    };
    Ok(Reconstruction {
        complex: k,
        stats,
        orders,
        searches,
    })
}
