//! Candidate cofacets and candidate-ordering circles.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::Rng;

use crate::complex::{Property, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{affine_dim, edge_vectors, int, orthogonal_basis, AngleKey, CircleMode, DirectionCircle, Vector};

pub const DEFAULT_MAX_RETRIES: usize = 64;

/// Vertices whose join with `center` could be a cofacet under `property`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub center: Simplex,
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    pub property: Property,
}

impl CandidateSet {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Candidate sets for every `i`-simplex of a complex.
#[derive(Debug, Clone)]
pub struct CandidateTable {
    pub level: usize,
    pub property: Property,
    sets: BTreeMap<Simplex, CandidateSet>,
}

impl CandidateTable {
    /// Enumerates candidates for all `i`-simplices, looking only at the `i`-skeleton.
    pub fn build(k: &SimplicialComplex, i: usize, property: Property) -> Result<Self> {
        let sigmas: Vec<Simplex> = k.simplices(i).cloned().collect();
        let mut checker = Admissibility::new(k, i, property)?;
        let mut sets = BTreeMap::new();
        for sigma in sigmas {
            let mut vertices = Vec::new();
            for v in k.boundary_complete_vertices(&sigma)? {
                if checker.admits(&sigma.with(v))? {
                    vertices.push(v);
                }
            }
            vertices.sort_unstable();
            sets.insert(sigma.clone(), CandidateSet { center: sigma, vertices, property });
        }
        Ok(CandidateTable { level: i, property, sets })
    }

    pub fn get(&self, sigma: &Simplex) -> Result<&CandidateSet> {
        self.sets.get(sigma).ok_or_else(|| Error::NotFound(sigma.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &CandidateSet)> + '_ {
        self.sets.iter()
    }

    /// True when no simplex of this level has a candidate cofacet.
    pub fn is_exhausted(&self) -> bool {
        self.sets.values().all(CandidateSet::is_empty)
    }
}

/// Decides the geometric half of the candidate condition, memoized per joined simplex.
struct Admissibility<'a> {
    k: &'a SimplicialComplex,
    property: Property,
    skeleton: Vec<Simplex>,
    star: Vec<Vec<usize>>,
    memo: HashMap<Simplex, bool>,
}

impl<'a> Admissibility<'a> {
    fn new(k: &'a SimplicialComplex, i: usize, property: Property) -> Result<Self> {
        let mut skeleton: Vec<Simplex> = (0..=i).flat_map(|j| k.simplices(j).cloned()).collect();
        if property == Property::Embedded {
            let maximal: Vec<Simplex> = skeleton
                .iter()
                .filter(|s| s.dim() == i || k.cofacets_of(s).map_or(true, |c| c.is_empty()))
                .cloned()
                .collect();
            let mut nondegenerate = true;
            for m in &maximal {
                nondegenerate &= affine_dim(&k.points(m))? == m.dim();
            }
            if nondegenerate {
                skeleton = maximal;
            }
        }
        let mut star = vec![Vec::new(); k.vertices().len()];
        for (idx, s) in skeleton.iter().enumerate() {
            for &v in s.ids() {
                star[v].push(idx);
            }
        }
        Ok(Admissibility {
            k,
            property,
            skeleton,
            star,
            memo: HashMap::new(),
        })
    }

    fn admits(&mut self, tau: &Simplex) -> Result<bool> {
        if self.property == Property::FacetsOnly {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(tau) {
            return Ok(known);
        }
        let ok = self.compute(tau)?;
        self.memo.insert(tau.clone(), ok);
        Ok(ok)
    }

    fn compute(&self, tau: &Simplex) -> Result<bool> {
        if affine_dim(&self.k.points(tau))? != tau.dim() {
            return Ok(false);
        }
        let others: Vec<usize> = match self.property {
            Property::FacetsOnly => return Ok(true),
            Property::Embedded => (0..self.skeleton.len()).collect(),
            Property::LocallyInjective => {
                let mut touching: Vec<usize> = tau.ids().iter().flat_map(|&v| self.star[v].iter().copied()).collect();
                touching.sort_unstable();
                touching.dedup();
                touching
            }
        };
        for idx in others {
            if !self.k.pair_injective(tau, &self.skeleton[idx])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Candidate vertices of a single simplex.
pub fn candidate_vertices(k: &SimplicialComplex, sigma: &Simplex, property: Property) -> Result<CandidateSet> {
    if !k.contains(sigma) {
        return Err(Error::NotFound(sigma.clone()));
    }
    let mut checker = Admissibility::new(k, sigma.dim(), property)?;
    let mut vertices = Vec::new();
    for v in k.boundary_complete_vertices(sigma)? {
        if checker.admits(&sigma.with(v))? {
            vertices.push(v);
        }
    }
    vertices.sort_unstable();
    Ok(CandidateSet {
        center: sigma.clone(),
        vertices,
        property,
    })
}

/// A pair of simplices that would meet improperly if the candidates of `center` were added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionViolation {
    pub center: Simplex,
    pub first: Simplex,
    pub second: Simplex,
}

/// Checks, for every `i`-simplex, that adding all of its candidate cofacets
/// keeps the complex locally injective. Embedded complexes always pass.
pub fn check_assumption_reconstruction(
    k: &SimplicialComplex,
    i: usize,
    property: Property,
) -> Result<Vec<ReconstructionViolation>> {
    if property == Property::Embedded {
        return Ok(Vec::new());
    }
    let table = CandidateTable::build(k, i, property)?;
    check_assumption_with(k, &table)
}

/// Same check reusing an already built candidate table.
pub fn check_assumption_with(k: &SimplicialComplex, table: &CandidateTable) -> Result<Vec<ReconstructionViolation>> {
    if table.property == Property::Embedded {
        return Ok(Vec::new());
    }
    let skeleton: Vec<Simplex> = (0..=table.level).flat_map(|j| k.simplices(j).cloned()).collect();
    let mut memo: HashMap<(Simplex, Simplex), bool> = HashMap::new();
    let mut check = |a: &Simplex, b: &Simplex| -> Result<bool> {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        let v = k.pair_injective(a, b)?;
        memo.insert(key, v);
        Ok(v)
    };
    let mut out = Vec::new();
    for (sigma, set) in table.iter() {
        let taus: Vec<Simplex> = set.vertices.iter().map(|&v| sigma.with(v)).collect();
        for (x, tau) in taus.iter().enumerate() {
            for rho in skeleton.iter().filter(|r| r.ids().iter().any(|&v| tau.contains(v))) {
                if !check(tau, rho)? {
                    out.push(ReconstructionViolation {
                        center: sigma.clone(),
                        first: tau.clone(),
                        second: rho.clone(),
                    });
                }
            }
            for other in &taus[x + 1..] {
                if !check(tau, other)? {
                    out.push(ReconstructionViolation {
                        center: sigma.clone(),
                        first: tau.clone(),
                        second: other.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Checks that `circle` gives the candidates of `sigma` an order the radial
/// search can rely on.
///
/// Always required: pairwise distinct keys. For perpendicular circles also:
/// no candidate projects onto the base, antipodal keys belong to candidates
/// lying in one flat with `sigma`, and angles `0` and `π` are not both taken.
pub fn verify_candidate_ordering(
    k: &SimplicialComplex,
    sigma: &Simplex,
    circle: &DirectionCircle,
    cands: &CandidateSet,
) -> std::result::Result<(), String> {
    let mut keyed: Vec<(AngleKey, usize)> = Vec::with_capacity(cands.len());
    for &v in &cands.vertices {
        let p = k.vertex(v);
        if circle.projects_to_base(p) {
            return Err(format!("candidate {v} projects onto the circle's center"));
        }
        keyed.push((circle.gamma_normal(p).0, v));
    }
    keyed.sort();
    for pair in keyed.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(format!("candidates {} and {} share an angle", pair[0].1, pair[1].1));
        }
    }
    if circle.mode() == CircleMode::Codim1 {
        return Ok(());
    }
    if keyed.iter().any(|(key, _)| key.is_zero_angle()) && keyed.iter().any(|(key, _)| key.is_pi()) {
        return Err("candidates at both ends of the upper half circle".into());
    }
    let base_dim = affine_dim(&k.points(sigma)).map_err(|e| e.to_string())?;
    for (x, (key, v)) in keyed.iter().enumerate() {
        let opposite = key.opposite();
        let Ok(pos) = keyed[x + 1..].binary_search_by(|(other, _)| other.cmp(&opposite)) else {
            continue;
        };
        let partner = keyed[x + 1 + pos].1;
        let mut points = k.points(sigma);
        points.push(k.vertex(*v).clone());
        points.push(k.vertex(partner).clone());
        if affine_dim(&points).map_err(|e| e.to_string())? != base_dim + 1 {
            return Err(format!("antipodal candidates {v} and {partner} are not coplanar with the simplex"));
        }
    }
    Ok(())
}

fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| int(rng.gen_range(-1000..=1000))).collect())
}

/// A maximally perpendicular circle around `sigma` through `s` that orders
/// its candidates.
///
/// A simplex spanning a hyperplane gets the two-point circle `{s, −s}`; a
/// two-dimensional perpendicular space admits a single circle up to scaling;
/// otherwise the second spanning vector is sampled and verified up to
/// `max_retries` times.
pub fn candidate_ordering_circle<R: Rng + ?Sized>(
    k: &SimplicialComplex,
    sigma: &Simplex,
    s: &Vector,
    cands: &CandidateSet,
    rng: &mut R,
    max_retries: usize,
) -> Result<DirectionCircle> {
    let points = k.points(sigma);
    let d = k.ambient_dim();
    let aff = affine_dim(&points)?;
    if aff == d {
        return Err(Error::NoPerpendicular(sigma.clone()));
    }
    let edges = edge_vectors(&points);
    if s.is_zero() || edges.iter().any(|e| !e.dot(s).is_zero()) {
        return Err(Error::NotPerpendicular(sigma.clone()));
    }
    let relabel = |e: Error| match e {
        Error::NoPerpendicular(_) => Error::NoPerpendicular(sigma.clone()),
        other => other,
    };
    if aff + 2 >= d {
        let circle = DirectionCircle::deterministic(&points, s).map_err(relabel)?;
        return match verify_candidate_ordering(k, sigma, &circle, cands) {
            Ok(()) => Ok(circle),
            Err(reason) => Err(Error::VerificationFailed {
                simplex: sigma.clone(),
                attempts: 1,
                reason,
            }),
        };
    }
    let mut hull = orthogonal_basis(&edges);
    hull.push(s.clone());
    let mut last_reason = String::from("no usable direction sampled");
    for _ in 0..max_retries {
        let w = hull.iter().fold(random_vector(rng, d), |acc, b| acc.reject_from(b));
        if w.is_zero() {
            continue;
        }
        let circle = DirectionCircle::new(points[0].clone(), s.clone(), w.primitive(), CircleMode::Perpendicular)?;
        match verify_candidate_ordering(k, sigma, &circle, cands) {
            Ok(()) => return Ok(circle),
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::VerificationFailed {
        simplex: sigma.clone(),
        attempts: max_retries,
        reason: last_reason,
    })
}

/// One circle of directions that orders the candidates of every vertex at once.
///
/// The base is vertex 0; callers re-base it per vertex. In the plane the
/// upward direction is tried first.
pub fn global_vertex_circle<R: Rng + ?Sized>(
    k: &SimplicialComplex,
    table: &CandidateTable,
    rng: &mut R,
    max_retries: usize,
) -> Result<DirectionCircle> {
    let d = k.ambient_dim();
    if k.vertices().is_empty() {
        return Err(Error::InvalidInput("complex has no vertices".into()));
    }
    let base = k.vertex(0).clone();
    let verify_all = |circle: &DirectionCircle| -> std::result::Result<(), String> {
        for (sigma, set) in table.iter() {
            let local = circle.rebased(k.vertex(sigma.ids()[0]).clone());
            verify_candidate_ordering(k, sigma, &local, set).map_err(|r| format!("at vertex {sigma}: {r}"))?;
        }
        Ok(())
    };
    let mut last_reason = String::from("no usable direction sampled");
    let mut attempts = 0;
    if d == 2 {
        let circle = DirectionCircle::new(base.clone(), Vector::from_ints(&[0, 1]), Vector::from_ints(&[1, 0]), CircleMode::Perpendicular)?;
        attempts += 1;
        match verify_all(&circle) {
            Ok(()) => return Ok(circle),
            Err(reason) => last_reason = reason,
        }
    }
    while attempts < max_retries {
        attempts += 1;
        let u = random_vector(rng, d);
        if u.is_zero() {
            continue;
        }
        let w = if d == 2 {
            Vector::new(vec![-u.coords()[1].clone(), u.coords()[0].clone()])
        } else {
            random_vector(rng, d).reject_from(&u)
        };
        if w.is_zero() {
            continue;
        }
        let circle = DirectionCircle::new(base.clone(), u.primitive(), w.primitive(), CircleMode::Perpendicular)?;
        match verify_all(&circle) {
            Ok(()) => return Ok(circle),
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::VerificationFailed {
        simplex: Simplex::default(),
        attempts,
        reason: last_reason,
    })
}
