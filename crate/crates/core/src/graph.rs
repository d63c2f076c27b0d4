//! Undirected simple graphs with 1-based vertex ids, 2-coloring, and the
//! covering relation.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `1..=n`.
///
/// Edges are stored normalized as `(min, max)` and sorted, so two graphs built
/// from the same edge set compare equal regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a unit-weight graph.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_weights(n, edges, vec![1; n])
    }

    pub fn with_weights(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        weights: Vec<u64>,
    ) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} weights, got {}",
                weights.len()
            )));
        }
        if let Some((i, &w)) = weights.iter().enumerate().find(|(_, &w)| w < 1) {
            return Err(Error::InvalidWeight {
                vertex: i + 1,
                weight: w,
            });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id < 1 || id > n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            weights,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v - 1]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Same vertices and edges with every weight reset to 1.
    pub fn unweighted(&self) -> Graph {
        Graph {
            weights: vec![1; self.n],
            ..self.clone()
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adjacency[u - 1].binary_search(&v).is_ok()
    }

    pub(crate) fn check_vertex(&self, id: usize) -> Result<()> {
        if id < 1 || id > self.n {
            Err(Error::VertexOutOfRange { id, n: self.n })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_unit_weights(&self) -> Result<()> {
        if self.is_unit_weighted() {
            Ok(())
        } else {
            Err(Error::WeightedInput)
        }
    }

    /// Number of edges with at least one endpoint marked in `mask`
    /// (indexed by `id - 1`).
    pub(crate) fn coverage_of_mask(&self, mask: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| mask[u - 1] || mask[v - 1])
            .count()
    }

    pub(crate) fn mask_of(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            self.check_vertex(v)?;
            mask[v - 1] = true;
        }
        Ok(mask)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen[start - 1] {
                continue;
            }
            seen[start - 1] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w - 1] {
                        seen[w - 1] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Number of edges of `g` with at least one endpoint in `set`.
pub fn coverage(g: &Graph, set: &[usize]) -> Result<usize> {
    Ok(g.coverage_of_mask(&g.mask_of(set)?))
}

/// Connected with `m = n - 1`.
pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.m() + 1 == g.n() && g.components().len() == 1
}

/// Acyclic, possibly disconnected.
pub fn is_forest(g: &Graph) -> bool {
    g.m() + g.components().len() == g.n()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteLabeling {
    sides: Vec<Side>,
}

impl BipartiteLabeling {
    /// Wraps an explicit labeling after checking that every edge of `g`
    /// crosses sides.
    pub fn new(g: &Graph, sides: Vec<Side>) -> Result<Self> {
        let lab = BipartiteLabeling { sides };
        lab.validate(g)?;
        Ok(lab)
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v - 1]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn left(&self) -> Vec<usize> {
        self.members(Side::Left)
    }

    pub fn right(&self) -> Vec<usize> {
        self.members(Side::Right)
    }

    fn members(&self, side: Side) -> Vec<usize> {
        (1..=self.sides.len())
            .filter(|&v| self.sides[v - 1] == side)
            .collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.sides.len() != g.n() {
            return Err(Error::InvalidLabeling);
        }
        if g.edges().iter().any(|&(u, v)| self.side(u) == self.side(v)) {
            return Err(Error::InvalidLabeling);
        }
        Ok(())
    }
}

/// BFS 2-coloring. Each component's smallest vertex is labeled `Left`.
///
/// On failure the error carries an odd cycle as a vertex sequence starting at
/// the lowest common BFS ancestor of the conflicting edge.
pub fn bipartition(g: &Graph) -> Result<BipartiteLabeling> {
    let n = g.n();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![0usize; n];
    let mut depth = vec![0usize; n];
    for root in g.vertices() {
        if side[root - 1].is_some() {
            continue;
        }
        side[root - 1] = Some(Side::Left);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u - 1].unwrap();
            for &w in g.neighbors(u) {
                match side[w - 1] {
                    None => {
                        side[w - 1] = Some(su.opposite());
                        parent[w - 1] = u;
                        depth[w - 1] = depth[u - 1] + 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => {
                        return Err(Error::NonBipartite(odd_cycle(&parent, &depth, u, w)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(BipartiteLabeling {
        sides: side.into_iter().map(Option::unwrap).collect(),
    })
}

fn odd_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a - 1] > depth[b - 1] {
        a = parent[a - 1];
        up_a.push(a);
    }
    while depth[b - 1] > depth[a - 1] {
        b = parent[b - 1];
        up_b.push(b);
    }
    while a != b {
        a = parent[a - 1];
        b = parent[b - 1];
        up_a.push(a);
        up_b.push(b);
    }
    // both paths now end at the common ancestor
    up_b.pop();
    up_a.reverse();
    up_a.extend(up_b);
    up_a
}

/// A graph plus the number of edges a cover must reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PvcInstance {
    graph: Graph,
    t: usize,
}

impl PvcInstance {
    pub fn new(graph: Graph, t: usize) -> Result<Self> {
        if t > graph.m() {
            return Err(Error::Infeasible { t, m: graph.m() });
        }
        Ok(PvcInstance { graph, t })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn t(&self) -> usize {
        self.t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge(1, 2))
        );
        assert_eq!(
            Graph::new(2, [(1, 3)]),
            Err(Error::VertexOutOfRange { id: 3, n: 2 })
        );
        assert!(matches!(
            Graph::with_weights(2, [], vec![1, 0]),
            Err(Error::InvalidWeight { vertex: 2, .. })
        ));
    }

    #[test]
    fn edges_are_normalized() {
        let g = Graph::new(3, [(3, 2), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        assert_eq!(g.neighbors(2), &[1, 3]);
    }

    #[test]
    fn path_bipartition() {
        let lab = bipartition(&path(3)).unwrap();
        assert_eq!(lab.sides(), &[Side::Left, Side::Right, Side::Left]);
    }

    #[test]
    fn triangle_witness() {
        let g = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(bipartition(&g), Err(Error::NonBipartite(vec![1, 2, 3])));
    }

    #[test]
    fn pentagon_witness_is_a_cycle() {
        let g = Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let Err(Error::NonBipartite(w)) = bipartition(&g) else {
            panic!("expected odd cycle");
        };
        assert_eq!(w.len() % 2, 1);
        for i in 0..w.len() {
            assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
        }
    }

    #[test]
    fn isolated_vertices_are_left() {
        let g = Graph::new(3, [(2, 3)]).unwrap();
        let lab = bipartition(&g).unwrap();
        assert_eq!(lab.side(1), Side::Left);
        assert_eq!(lab.side(2), Side::Left);
        assert_eq!(lab.side(3), Side::Right);
    }

    #[test]
    fn coverage_basics() {
        let g = path(2);
        assert_eq!(coverage(&g, &[1]).unwrap(), 1);
        assert_eq!(coverage(&g, &[]).unwrap(), 0);
        assert_eq!(
            coverage(&g, &[4]),
            Err(Error::VertexOutOfRange { id: 4, n: 2 })
        );
    }

    #[test]
    fn tree_predicates() {
        assert!(is_tree(&path(4)));
        let tri = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(!is_tree(&tri));
        assert!(!is_forest(&tri));
        let two = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert!(!is_tree(&two));
        assert!(is_forest(&two));
        assert!(is_tree(&Graph::new(1, []).unwrap()));
    }

    #[test]
    fn instance_rejects_large_t() {
        assert_eq!(
            PvcInstance::new(path(2), 2),
            Err(Error::Infeasible { t: 2, m: 1 })
        );
    }

    #[test]
    fn labeling_validation() {
        let g = path(2);
        assert!(BipartiteLabeling::new(&g, vec![Side::Left, Side::Left]).is_err());
        assert!(BipartiteLabeling::new(&g, vec![Side::Right, Side::Left]).is_ok());
    }
}
