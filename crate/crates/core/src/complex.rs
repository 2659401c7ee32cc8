//! Geometric simplicial complexes: storage, face closure, cofacet lookup and
//! structural validators.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{affine_dim, injective_pair_test, Vector};

/// A simplex as a strictly increasing list of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the ids. Panics on duplicates.
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        assert!(ids.windows(2).all(|w| w[0] < w[1]), "duplicate vertex in simplex {ids:?}");
        Simplex(ids)
    }

    pub fn try_new(mut ids: Vec<usize>) -> Result<Self> {
        ids.sort_unstable();
        if ids.is_empty() || ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("malformed simplex {ids:?}")));
        }
        Ok(Simplex(ids))
    }

    pub fn vertex(id: usize) -> Self {
        Simplex(vec![id])
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    /// Number of vertices minus one.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn with(&self, id: usize) -> Simplex {
        let mut ids = self.0.clone();
        match ids.binary_search(&id) {
            Ok(_) => panic!("vertex {id} already in {self}"),
            Err(pos) => ids.insert(pos, id),
        }
        Simplex(ids)
    }

    pub fn without(&self, id: usize) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&x| x != id).collect())
    }

    /// All codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        self.0.iter().map(|&x| self.without(x)).collect()
    }

    /// All nonempty faces including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| Simplex((0..n).filter(|k| mask & (1 << k) != 0).map(|k| self.0[k]).collect()))
            .collect()
    }

    /// The single vertex of `self` missing from `face`, when `face` is a facet.
    pub fn apex_over(&self, face: &Simplex) -> Option<usize> {
        if face.0.len() + 1 != self.0.len() {
            return None;
        }
        let extra: Vec<usize> = self.0.iter().copied().filter(|x| !face.contains(*x)).collect();
        (extra.len() == 1).then(|| extra[0])
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[usize]> for Simplex {
    fn from(ids: &[usize]) -> Self {
        Simplex::new(ids.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Simplex {
    fn from(ids: [usize; N]) -> Self {
        Simplex::new(ids.to_vec())
    }
}

/// Which pairs of simplices must meet properly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// No geometric condition; only the boundary must be present.
    FacetsOnly,
    /// Pairs sharing a face meet exactly in that face.
    LocallyInjective,
    /// Every pair meets in a common face or not at all.
    Embedded,
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "facets-only" | "facets" | "none" => Ok(Property::FacetsOnly),
            "locally-injective" | "local" => Ok(Property::LocallyInjective),
            "embedded" => Ok(Property::Embedded),
            other => Err(Error::InvalidInput(format!("unknown property {other:?}"))),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::FacetsOnly => "facets-only",
            Property::LocallyInjective => "locally-injective",
            Property::Embedded => "embedded",
        })
    }
}

/// A simplicial complex with vertices mapped to distinct points of R^d.
#[derive(Clone)]
pub struct SimplicialComplex {
    dim: usize,
    vertices: Vec<Vector>,
    simplices: Vec<BTreeSet<Simplex>>,
    cofacets: HashMap<Simplex, BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    /// Closure of `maximal` plus every listed vertex. Ambient dimensions below
    /// two are padded with zero coordinates.
    pub fn from_maximal(dim: usize, vertices: Vec<Vector>, maximal: &[Simplex]) -> Result<Self> {
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::InvalidInput(format!(
                "vertex {bad:?} does not have {dim} coordinates"
            )));
        }
        let lifted_dim = dim.max(2);
        let vertices: Vec<Vector> = vertices.into_iter().map(|v| v.lifted(lifted_dim)).collect();
        let mut seen = HashSet::new();
        for (id, v) in vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("vertex {id} duplicates the point {v:?}")));
            }
        }
        let mut complex = SimplicialComplex {
            dim: lifted_dim,
            vertices,
            simplices: Vec::new(),
            cofacets: HashMap::new(),
        };
        for id in 0..complex.vertices.len() {
            complex.insert(Simplex::vertex(id));
        }
        complex.add_closed(maximal)?;
        Ok(complex)
    }

    /// Only the vertices of `self`.
    pub fn vertex_skeleton(&self) -> SimplicialComplex {
        self.skeleton(0)
    }

    /// All simplices of dimension at most `i`.
    pub fn skeleton(&self, i: usize) -> SimplicialComplex {
        let mut out = SimplicialComplex {
            dim: self.dim,
            vertices: self.vertices.clone(),
            simplices: Vec::new(),
            cofacets: HashMap::new(),
        };
        for level in self.simplices.iter().take(i + 1) {
            for s in level {
                out.insert(s.clone());
            }
        }
        out
    }

    /// Adds the given simplices together with all their faces.
    pub fn add_closed(&mut self, simplices: &[Simplex]) -> Result<()> {
        for s in simplices {
            if s.ids().is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            if let Some(&bad) = s.ids().iter().find(|&&id| id >= self.vertices.len()) {
                return Err(Error::InvalidInput(format!("vertex id {bad} out of range in {s}")));
            }
            let mut faces = s.faces();
            faces.sort_by_key(|f| f.dim());
            for face in faces {
                self.insert(face);
            }
        }
        Ok(())
    }

    fn insert(&mut self, s: Simplex) {
        let k = s.dim();
        if self.simplices.len() <= k {
            self.simplices.resize_with(k + 1, BTreeSet::new);
        }
        if !self.simplices[k].insert(s.clone()) {
            return;
        }
        for facet in s.facets() {
            self.cofacets.entry(facet).or_default().insert(s.clone());
        }
        self.cofacets.entry(s).or_default();
    }

    /// Ambient dimension (at least two).
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vector {
        &self.vertices[id]
    }

    pub fn points(&self, s: &Simplex) -> Vec<Vector> {
        s.ids().iter().map(|&id| self.vertices[id].clone()).collect()
    }

    /// Highest stored dimension, `None` for the empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|level| !level.is_empty())
    }

    /// Number of `i`-simplices.
    pub fn count(&self, i: usize) -> usize {
        self.simplices.get(i).map_or(0, BTreeSet::len)
    }

    /// Counts per dimension up to the top dimension.
    pub fn counts(&self) -> Vec<usize> {
        match self.top_dim() {
            Some(top) => (0..=top).map(|i| self.count(i)).collect(),
            None => Vec::new(),
        }
    }

    pub fn simplices(&self, i: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.get(i).into_iter().flatten()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.get(s.dim()).is_some_and(|level| level.contains(s))
    }

    pub fn cofacets_of(&self, s: &Simplex) -> Result<&BTreeSet<Simplex>> {
        self.cofacets.get(s).ok_or_else(|| Error::NotFound(s.clone()))
    }

    /// Simplices not contained in any other stored simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.all_simplices()
            .filter(|s| self.cofacets.get(*s).is_none_or(BTreeSet::is_empty))
            .cloned()
            .collect()
    }

    /// Vertices `v ∉ σ` for which every facet of `σ ∪ {v}` other than `σ` is stored.
    pub fn boundary_complete_vertices(&self, sigma: &Simplex) -> Result<Vec<usize>> {
        if !self.contains(sigma) {
            return Err(Error::NotFound(sigma.clone()));
        }
        if sigma.dim() == 0 {
            return Ok((0..self.vertices.len()).filter(|&v| !sigma.contains(v)).collect());
        }
        let first = sigma.ids()[0];
        let pivot = sigma.without(first);
        let mut out = Vec::new();
        for tau in self.cofacets_of(&pivot)? {
            let Some(v) = tau.apex_over(&pivot) else { continue };
            if v == first {
                continue;
            }
            let joined = sigma.with(v);
            if joined.facets().iter().all(|f| f == sigma || self.contains(f)) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Every facet of every stored simplex is stored.
    pub fn is_face_closed(&self) -> bool {
        self.all_simplices().all(|s| s.facets().iter().all(|f| self.contains(f)))
    }

    /// Whether two stored simplices meet properly, skipping the linear program
    /// when one is a face of a nondegenerate other.
    pub fn pair_injective(&self, a: &Simplex, b: &Simplex) -> Result<bool> {
        let (big, small) = if a.dim() >= b.dim() { (a, b) } else { (b, a) };
        if small.ids().iter().all(|&x| big.contains(x)) && affine_dim(&self.points(big))? == big.dim() {
            return Ok(true);
        }
        injective_pair_test(&self.vertices, a.ids(), b.ids())
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.vertices == other.vertices
            && self.top_dim() == other.top_dim()
            && (0..=self.top_dim().unwrap_or(0)).all(|i| self.simplices.get(i) == other.simplices.get(i))
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .field("maximal", &self.maximal_simplices())
            .finish()
    }
}

/// Outcome of [`check_structure`]; empty lists mean the complex passes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureReport {
    /// Simplices with a full-dimensional affine hull that would still need a perpendicular direction.
    pub no_perpendicular: Vec<Simplex>,
    pub non_injective: Vec<(Simplex, Simplex)>,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.no_perpendicular.is_empty() && self.non_injective.is_empty()
    }
}

/// Checks the perpendicular-direction requirement and the pairwise
/// intersection condition of `property`.
///
/// A simplex spanning the whole ambient space only matters when it could have
/// a cofacet, since that is the only time it is swept; so it is reported only
/// when some vertex completes its boundary.
pub fn check_structure(k: &SimplicialComplex, property: Property) -> Result<StructureReport> {
    let mut report = StructureReport::default();
    for s in k.all_simplices() {
        if affine_dim(&k.points(s))? == k.ambient_dim() && !k.boundary_complete_vertices(s)?.is_empty() {
            report.no_perpendicular.push(s.clone());
        }
    }
    let all: Vec<&Simplex> = k.all_simplices().collect();
    match property {
        Property::FacetsOnly => {}
        Property::Embedded => {
            // faces of nondegenerate simplices meet properly once their maximal cofaces do
            let maximal = k.maximal_simplices();
            let mut nondegenerate = true;
            for m in &maximal {
                nondegenerate &= affine_dim(&k.points(m))? == m.dim();
            }
            let pool: Vec<&Simplex> = if nondegenerate { maximal.iter().collect() } else { all };
            for (x, a) in pool.iter().enumerate() {
                for b in &pool[x + 1..] {
                    if !k.pair_injective(a, b)? {
                        report.non_injective.push(((*a).clone(), (*b).clone()));
                    }
                }
            }
        }
        Property::LocallyInjective => {
            let mut star: Vec<Vec<&Simplex>> = vec![Vec::new(); k.vertices().len()];
            for s in &all {
                for &v in s.ids() {
                    star[v].push(s);
                }
            }
            let mut pairs = BTreeSet::new();
            for group in &star {
                for (x, a) in group.iter().enumerate() {
                    for b in &group[x + 1..] {
                        pairs.insert(((*a).clone(), (*b).clone()));
                    }
                }
            }
            for (a, b) in pairs {
                if !k.pair_injective(&a, &b)? {
                    report.non_injective.push((a, b));
                }
            }
        }
    }
    Ok(report)
}
