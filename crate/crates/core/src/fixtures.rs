//! Hand-built graphs with known coverage profiles.

use crate::graph::Graph;

/// 16-vertex bipartite graph on which the coverage profile is not concave:
/// `OPT(1..=3) = 6, 10, 15`.
///
/// `K_{3,3}` between `{1,2,3}` and `{4,5,6}`, two pendants on each of 1, 2
/// and 3, three pendants on 4 and one on 5.
pub fn fixture_mnc_counterexample() -> Graph {
    let mut edges = Vec::new();
    for u in 1..=3 {
        for v in 4..=6 {
            edges.push((u, v));
        }
    }
    edges.extend([(1, 7), (1, 8), (2, 9), (2, 10), (3, 11), (3, 12)]);
    edges.extend([(4, 13), (4, 14), (4, 15), (5, 16)]);
    Graph::new(16, edges).unwrap()
}

/// Nine-vertex tree: vertex 4 has three leaves, vertex 5 has four leaves,
/// and 4–5 are adjacent. Vertex 5 weighs 2, everything else 1.
pub fn fixture_weighted_spider() -> Graph {
    let edges = [
        (1, 4),
        (2, 4),
        (3, 4),
        (4, 5),
        (5, 6),
        (5, 7),
        (5, 8),
        (5, 9),
    ];
    let mut weights = vec![1; 9];
    weights[4] = 2;
    Graph::with_weights(9, edges, weights).unwrap()
}
