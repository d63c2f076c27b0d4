//! Seeded random instance generators.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labeled tree on `n` vertices, decoded from a random Prüfer
/// sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("tree needs n >= 1".into()));
    }
    if n <= 2 {
        return Graph::new(n, (n == 2).then_some((1, 2)));
    }
    let mut rng = rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    Graph::new(n, prufer_decode(n, &code))
}

pub(crate) fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("prufer code has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

/// Random bipartite graph with left ids `1..=nl` and right ids
/// `nl+1..=nl+nr`.
///
/// Every left/right pair is visited once in random order and becomes a
/// candidate with probability `edge_percent / 100`; a candidate is kept while
/// both endpoints still have degree below `max_degree`.
pub fn gen_random_bipartite(
    nl: usize,
    nr: usize,
    max_degree: usize,
    edge_percent: u32,
    seed: u64,
) -> Result<Graph> {
    if nl < 1 || nr < 1 {
        return Err(Error::InvalidParameter(
            "both sides need at least one vertex".into(),
        ));
    }
    if edge_percent > 100 {
        return Err(Error::InvalidParameter(format!(
            "edge percentage {edge_percent} exceeds 100"
        )));
    }
    let mut rng = rng(seed);
    let mut pairs: Vec<(usize, usize)> = (1..=nl)
        .flat_map(|u| (nl + 1..=nl + nr).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut degree = vec![0usize; nl + nr + 1];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if rng.gen_range(0..100) >= edge_percent {
            continue;
        }
        if degree[u] < max_degree && degree[v] < max_degree {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::new(nl + nr, edges)
}

/// Erdős–Rényi style graph: each pair independently with probability
/// `edge_percent / 100`. Not necessarily bipartite.
pub fn gen_random_graph(n: usize, edge_percent: u32, seed: u64) -> Result<Graph> {
    if edge_percent > 100 {
        return Err(Error::InvalidParameter(format!(
            "edge percentage {edge_percent} exceeds 100"
        )));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_range(0..100) < edge_percent {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartition, is_tree};

    #[test]
    fn tiny_trees() {
        let g = gen_random_tree(1, 0).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let g = gen_random_tree(2, 0).unwrap();
        assert_eq!(g.edges(), &[(1, 2)]);
        assert!(gen_random_tree(0, 0).is_err());
        assert!(is_tree(&gen_random_tree(8, 7).unwrap()));
    }

    #[test]
    fn prufer_known_code() {
        // code [4, 4, 4, 5] on 6 vertices gives the star-ish tree below
        let mut edges = prufer_decode(6, &[4, 4, 4, 5]);
        edges
            .iter_mut()
            .for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        edges.sort();
        assert_eq!(edges, vec![(1, 4), (2, 4), (3, 4), (4, 5), (5, 6)]);
    }

    #[test]
    fn trees_are_seeded() {
        assert_eq!(gen_random_tree(30, 3), gen_random_tree(30, 3));
        assert_ne!(gen_random_tree(30, 3), gen_random_tree(30, 4));
    }

    #[test]
    fn bipartite_degree_bound() {
        assert_eq!(gen_random_bipartite(4, 4, 0, 100, 1).unwrap().m(), 0);
        assert!(gen_random_bipartite(1, 1, 1, 100, 1).unwrap().m() <= 1);
        assert!(gen_random_bipartite(0, 1, 1, 100, 1).is_err());
        assert!(gen_random_bipartite(1, 1, 1, 101, 1).is_err());
        for seed in 0..50 {
            let g = gen_random_bipartite(6, 7, 3, 60, seed).unwrap();
            assert!(g.max_degree() <= 3);
            bipartition(&g).unwrap();
        }
    }
}
