//! Indegree queries against a hidden complex.

use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_traits::Zero;
use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{edge_vectors, format_scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryRecord {
    pub sigma: Simplex,
    #[serde(serialize_with = "serialize_vector")]
    pub s: Vector,
    pub result: usize,
}

pub(crate) fn serialize_vector<S: serde::Serializer>(v: &Vector, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(v.coords().iter().map(format_scalar))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    pub total: u64,
    pub per_dim: Vec<u64>,
}

/// Answers how many cofacets of a simplex have no vertex above it in a given
/// direction. Every answer is counted.
pub struct IndegreeOracle {
    hidden: SimplicialComplex,
    per_dim: Vec<AtomicU64>,
    trace: Option<Mutex<Vec<QueryRecord>>>,
}

impl std::fmt::Debug for IndegreeOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IndegreeOracle").field("queries", &self.stats()).finish_non_exhaustive()
    }
}

impl IndegreeOracle {
    pub fn new(hidden: SimplicialComplex) -> Self {
        let dims = hidden.top_dim().map_or(1, |t| t + 1);
        IndegreeOracle {
            hidden,
            per_dim: (0..dims).map(|_| AtomicU64::new(0)).collect(),
            trace: None,
        }
    }

    /// Also records every query and its answer.
    pub fn with_trace(hidden: SimplicialComplex) -> Self {
        let mut oracle = Self::new(hidden);
        oracle.trace = Some(Mutex::new(Vec::new()));
        oracle
    }

    /// The public part of the hidden complex: its vertices.
    pub fn vertex_skeleton(&self) -> SimplicialComplex {
        self.hidden.vertex_skeleton()
    }

    /// Number of cofacets `σ ∪ {v}` with `⟨s, v⟩ ≤ ⟨s, σ⟩`.
    pub fn indeg(&self, sigma: &Simplex, s: &Vector) -> Result<usize> {
        if !self.hidden.contains(sigma) {
            return Err(Error::NotFound(sigma.clone()));
        }
        let points = self.hidden.points(sigma);
        if s.dim() != self.hidden.ambient_dim() || s.is_zero() || edge_vectors(&points).iter().any(|e| !e.dot(s).is_zero()) {
            return Err(Error::NotPerpendicular(sigma.clone()));
        }
        let height = s.dot(&points[0]);
        let result = self
            .hidden
            .cofacets_of(sigma)?
            .iter()
            .filter(|tau| {
                let v = tau.apex_over(sigma).expect("cofacet has an apex");
                s.dot(self.hidden.vertex(v)) <= height
            })
            .count();
        self.per_dim[sigma.dim()].fetch_add(1, Ordering::SeqCst);
        if let Some(trace) = &self.trace {
            trace.lock().expect("trace lock").push(QueryRecord {
                sigma: sigma.clone(),
                s: s.clone(),
                result,
            });
        }
        Ok(result)
    }

    pub fn stats(&self) -> QueryStats {
        let per_dim: Vec<u64> = self.per_dim.iter().map(|c| c.load(Ordering::SeqCst)).collect();
        QueryStats {
            total: per_dim.iter().sum(),
            per_dim,
        }
    }

    pub fn total_queries(&self) -> u64 {
        self.per_dim.iter().map(|c| c.load(Ordering::SeqCst)).sum()
    }

    /// Recorded queries, empty unless built with [`IndegreeOracle::with_trace`].
    pub fn trace(&self) -> Vec<QueryRecord> {
        self.trace
            .as_ref()
            .map(|t| t.lock().expect("trace lock").clone())
            .unwrap_or_default()
    }

    /// One JSON object per line.
    pub fn write_trace_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for record in self.trace() {
            serde_json::to_writer(&mut out, &record)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> SimplicialComplex {
        let v = [[0, 0], [2, 0], [1, 1]].iter().map(|c| Vector::from_ints(c)).collect();
        SimplicialComplex::from_maximal(2, v, &[[0, 1, 2].into()]).unwrap()
    }

    #[test]
    fn edge_indegree_both_ways() {
        let oracle = IndegreeOracle::new(t1());
        assert_eq!(oracle.indeg(&[0, 1].into(), &Vector::from_ints(&[0, -1])).unwrap(), 1);
        assert_eq!(oracle.indeg(&[0, 1].into(), &Vector::from_ints(&[0, 1])).unwrap(), 0);
        assert_eq!(oracle.stats().total, 2);
        assert_eq!(oracle.stats().per_dim, vec![0, 2, 0]);
    }

    #[test]
    fn isolated_vertex_has_no_indegree() {
        let k = SimplicialComplex::from_maximal(2, vec![Vector::from_ints(&[1, 1])], &[]).unwrap();
        let oracle = IndegreeOracle::new(k);
        assert_eq!(oracle.stats().total, 0);
        assert_eq!(oracle.indeg(&Simplex::vertex(0), &Vector::from_ints(&[3, -1])).unwrap(), 0);
    }

    #[test]
    fn caller_errors() {
        let oracle = IndegreeOracle::new(t1());
        assert!(matches!(
            oracle.indeg(&[0, 1].into(), &Vector::from_ints(&[1, 1])),
            Err(Error::NotPerpendicular(_))
        ));
        assert!(matches!(
            oracle.indeg(&Simplex::vertex(0), &Vector::from_ints(&[0, 0])),
            Err(Error::NotPerpendicular(_))
        ));
        assert!(matches!(
            oracle.indeg(&[0, 7].into(), &Vector::from_ints(&[0, 1])),
            Err(Error::NotFound(_))
        ));
        assert_eq!(oracle.stats().total, 0);
    }

    #[test]
    fn trace_lines() {
        let oracle = IndegreeOracle::with_trace(t1());
        oracle.indeg(&Simplex::vertex(2), &Vector::from_ints(&[0, 1])).unwrap();
        let mut buf = Vec::new();
        oracle.write_trace_jsonl(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"sigma\":[2],\"s\":[\"0\",\"1\"],\"result\":2}\n");
    }
}
