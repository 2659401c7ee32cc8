//! Generalized sweeping orders over the `i`-simplices of a geometric
//! simplicial complex, and reconstruction of a hidden complex from its
//! vertices and indegree queries.
//!
//! All geometry is exact over the rationals. A sweep pairs each simplex with
//! a perpendicular direction so that every cofacet strictly below it was
//! already reachable from an earlier simplex; reconstruction walks such a
//! sweep and locates unknown cofacets by radial binary search.

pub mod candidates;
pub mod complex;
pub mod error;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod reconstruct;
pub mod sweep;

pub use candidates::{
    candidate_ordering_circle, candidate_vertices, check_assumption_reconstruction, global_vertex_circle,
    verify_candidate_ordering, CandidateSet, CandidateTable, ReconstructionViolation,
};
pub use complex::{check_structure, Property, Simplex, SimplicialComplex, StructureReport};
pub use error::{Error, Result};
pub use geometry::{AngleKey, CircleMode, DirectionCircle, Scalar, Vector};
pub use oracle::{IndegreeOracle, QueryRecord, QueryStats};
pub use reconstruct::{
    find_unfound, reconstruct_all, reconstruct_next, ReconStats, Reconstruction, ReconstructOptions, SearchRecord,
};
pub use sweep::{order_next, order_vertices, validate_sweeping_order, SweepEntry, SweepViolation, SweepingOrder};
