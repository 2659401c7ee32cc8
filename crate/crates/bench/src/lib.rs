//! Benchmark inputs shared by the criterion targets.

use simplex_sweep::SimplicialComplex;
use simplex_sweep_cli::gen_complex;

/// Generated complexes labeled `d{d}-n{n}`.
pub fn workloads() -> Vec<(String, SimplicialComplex)> {
    [(2, 16), (2, 40), (3, 20), (3, 40)]
        .into_iter()
        .map(|(d, n)| (format!("d{d}-n{n}"), gen_complex(d, n, 11).expect("generator")))
        .collect()
}
