//! Fixtures shared by the benchmarks.

use greenseq_core::{MutationSequence, Quiver};

/// Quivers whose maximal green sequences are enumerated in the search
/// benchmarks, with the length bound used for each.
pub fn search_workloads() -> Vec<(&'static str, Quiver, usize)> {
    vec![
        ("A3", Quiver::linear_a(3).unwrap(), 6),
        ("A4", Quiver::linear_a(4).unwrap(), 10),
        ("A5", Quiver::linear_a(5).unwrap(), 15),
        ("Q_{2,2,2}", Quiver::preset("Q_{2,2,2}").unwrap(), 12),
    ]
}

/// A deterministic walk of the given length cycling through the vertices
/// of `q` in order.
pub fn cycling_walk(q: &Quiver, len: usize) -> MutationSequence {
    let n = q.n();
    MutationSequence((0..len).map(|i| i % n + 1).collect())
}
