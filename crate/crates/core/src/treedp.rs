//! Knapsack-style dynamic program for coverage profiles of trees and forests.
//!
//! Independent of the Lagrangian solver; used to cross-check it at sizes far
//! beyond subset enumeration.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{is_forest, is_tree, Graph, PvcInstance};
use crate::oracle::{CoverageProfile, PvcSolution};

/// The component of `root`, oriented away from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
}

impl RootedTree {
    /// Roots a tree at vertex 1.
    pub fn new(g: &Graph) -> Result<Self> {
        if !is_tree(g) {
            return Err(Error::NotAForest);
        }
        Ok(Self::component(g, 1))
    }

    /// Roots the component of `root`; callers guarantee it is acyclic.
    fn component(g: &Graph, root: usize) -> Self {
        let mut parent = vec![None; g.n()];
        let mut children = vec![Vec::new(); g.n()];
        let mut seen = vec![false; g.n()];
        let mut preorder = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root - 1] = true;
        while let Some(u) = queue.pop_front() {
            preorder.push(u);
            for &w in g.neighbors(u) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    parent[w - 1] = Some(u);
                    children[u - 1].push(w);
                    queue.push_back(w);
                }
            }
        }
        RootedTree {
            root,
            parent,
            children,
            preorder,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v - 1]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v - 1]
    }

    /// Vertices of the rooted component, parents before children.
    pub fn vertices(&self) -> &[usize] {
        &self.preorder
    }
}

const NEG: i64 = i64::MIN / 4;

/// `[not selected, selected]`, each indexed by the number of selected
/// vertices in the subtree.
type Table = [Vec<i64>; 2];

const NOT: usize = 0;
const SEL: usize = 1;

/// Per-vertex tables after absorbing each child in turn; `stages[v][0]` is
/// the leaf initialization and the last entry is the full subtree.
struct TreeDp {
    stages: Vec<Vec<Table>>,
}

impl TreeDp {
    fn run(tree: &RootedTree) -> Self {
        let n = tree.parent.len();
        let mut stages: Vec<Vec<Table>> = vec![Vec::new(); n];
        for &v in tree.preorder.iter().rev() {
            let mut cur: Table = [vec![0, NEG], vec![NEG, 0]];
            let mut hist = vec![cur.clone()];
            for &u in tree.children(v) {
                let child = stages[u - 1].last().unwrap();
                cur = absorb(&cur, child);
                hist.push(cur.clone());
            }
            stages[v - 1] = hist;
        }
        TreeDp { stages }
    }

    fn full(&self, v: usize) -> &Table {
        self.stages[v - 1].last().unwrap()
    }

    /// Best over both root states, per count.
    fn profile(&self, root: usize) -> Vec<i64> {
        let [a, b] = self.full(root);
        a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
    }

    /// Selected vertices realizing `count` in the subtree of `root`.
    fn witness(&self, tree: &RootedTree, count: usize, out: &mut Vec<usize>) {
        let [not, sel] = self.full(tree.root);
        let state = if not[count] >= sel[count] { NOT } else { SEL };
        let mut stack = vec![(tree.root, state, count)];
        while let Some((v, state, mut c)) = stack.pop() {
            if state == SEL {
                out.push(v);
            }
            let hist = &self.stages[v - 1];
            let kids = tree.children(v);
            for i in (1..hist.len()).rev() {
                let prev = &hist[i - 1][state];
                let target = hist[i][state][c];
                let child = self.full(kids[i - 1]);
                let (cs, c2) = split(prev, child, state, c, target);
                stack.push((kids[i - 1], cs, c2));
                c -= c2;
            }
            debug_assert_eq!(c, usize::from(state == SEL));
        }
    }
}

fn edge_gain(parent_state: usize, child_state: usize) -> i64 {
    i64::from(parent_state == SEL || child_state == SEL)
}

fn absorb(cur: &Table, child: &Table) -> Table {
    let len = cur[0].len() + child[0].len() - 1;
    let mut out: Table = [vec![NEG; len], vec![NEG; len]];
    for ps in [NOT, SEL] {
        for (c1, &base) in cur[ps].iter().enumerate() {
            if base == NEG {
                continue;
            }
            for cs in [NOT, SEL] {
                for (c2, &val) in child[cs].iter().enumerate() {
                    if val == NEG {
                        continue;
                    }
                    let cand = base + val + edge_gain(ps, cs);
                    let slot = &mut out[ps][c1 + c2];
                    if cand > *slot {
                        *slot = cand;
                    }
                }
            }
        }
    }
    out
}

/// Recovers the child state and count behind `target`, preferring an
/// unselected child and then the smallest child count.
fn split(prev: &[i64], child: &Table, ps: usize, c: usize, target: i64) -> (usize, usize) {
    for cs in [NOT, SEL] {
        for (c2, &a) in child[cs].iter().enumerate().take(c + 1) {
            let b = prev.get(c - c2).copied().unwrap_or(NEG);
            if a != NEG && b != NEG && a + b + edge_gain(ps, cs) == target {
                return (cs, c2);
            }
        }
    }
    unreachable!("dp table entry has no predecessor")
}

/// Per-component DPs plus the max-plus merge of their profiles.
struct ForestDp {
    trees: Vec<RootedTree>,
    dps: Vec<TreeDp>,
    /// `merged[i]` is the combined profile of the first `i` components.
    merged: Vec<Vec<i64>>,
}

impl ForestDp {
    fn run(g: &Graph) -> Result<Self> {
        g.require_unit_weights()?;
        if !is_forest(g) {
            return Err(Error::NotAForest);
        }
        let trees: Vec<_> = g
            .components()
            .iter()
            .map(|c| RootedTree::component(g, c[0]))
            .collect();
        let dps: Vec<_> = trees.iter().map(TreeDp::run).collect();
        let mut merged = vec![vec![0i64]];
        for (tree, dp) in trees.iter().zip(&dps) {
            let prof = dp.profile(tree.root);
            let acc = merged.last().unwrap();
            let mut next = vec![NEG; acc.len() + prof.len() - 1];
            for (a, &x) in acc.iter().enumerate() {
                for (b, &y) in prof.iter().enumerate() {
                    next[a + b] = next[a + b].max(x + y);
                }
            }
            merged.push(next);
        }
        Ok(ForestDp { trees, dps, merged })
    }

    fn profile(&self) -> Vec<usize> {
        self.merged
            .last()
            .unwrap()
            .iter()
            .map(|&x| x as usize)
            .collect()
    }

    fn witness(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut c = k;
        for i in (1..self.merged.len()).rev() {
            let target = self.merged[i][c];
            let prof = self.dps[i - 1].profile(self.trees[i - 1].root);
            let prev = &self.merged[i - 1];
            let c2 = (0..prof.len().min(c + 1))
                .find(|&c2| c - c2 < prev.len() && prev[c - c2] + prof[c2] == target)
                .expect("merged profile entry has no predecessor");
            self.dps[i - 1].witness(&self.trees[i - 1], c2, &mut out);
            c -= c2;
        }
        out.sort_unstable();
        out
    }
}

/// `opt[k]` for `k = 0..=n` on a forest with unit weights.
pub fn tree_profile(g: &Graph) -> Result<CoverageProfile> {
    CoverageProfile::new(ForestDp::run(g)?.profile(), false)
}

/// Minimum partial cover of a forest, with a witness recovered from the DP.
pub fn solve_pvc_tree(inst: &PvcInstance) -> Result<PvcSolution> {
    let g = inst.graph();
    let dp = ForestDp::run(g)?;
    let profile = dp.profile();
    let k = profile
        .iter()
        .position(|&c| c >= inst.t())
        .expect("the full vertex set covers every edge");
    let witness = dp.witness(k);
    debug_assert_eq!(witness.len(), k);
    PvcSolution::new(g, witness, inst.t())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_weighted_spider;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn small_profiles() {
        assert_eq!(tree_profile(&path(2)).unwrap().opt(), &[0, 1, 1]);
        assert_eq!(tree_profile(&path(4)).unwrap().opt(), &[0, 2, 3, 3, 3]);
        let spider = fixture_weighted_spider().unweighted();
        assert_eq!(
            tree_profile(&spider).unwrap().opt(),
            &[0, 5, 8, 8, 8, 8, 8, 8, 8, 8]
        );
    }

    #[test]
    fn solves() {
        let sol = solve_pvc_tree(&PvcInstance::new(path(2), 1).unwrap()).unwrap();
        assert_eq!(sol.size, 1);
        let spider = fixture_weighted_spider().unweighted();
        let sol = solve_pvc_tree(&PvcInstance::new(spider.clone(), 6).unwrap()).unwrap();
        assert_eq!(sol.vertices, vec![4, 5]);
        let sol = solve_pvc_tree(&PvcInstance::new(spider, 0).unwrap()).unwrap();
        assert_eq!(sol.size, 0);
    }

    #[test]
    fn forest_merges_components() {
        // P3 plus a disjoint edge plus an isolated vertex
        let g = Graph::new(6, [(1, 2), (2, 3), (4, 5)]).unwrap();
        assert_eq!(tree_profile(&g).unwrap().opt(), &[0, 2, 3, 3, 3, 3, 3]);
        let sol = solve_pvc_tree(&PvcInstance::new(g, 3).unwrap()).unwrap();
        assert_eq!(sol.size, 2);
        assert_eq!(sol.covered, 3);
    }

    #[test]
    fn rejects_cycles_and_weights() {
        let tri = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(tree_profile(&tri), Err(Error::NotAForest));
        assert_eq!(
            tree_profile(&fixture_weighted_spider()),
            Err(Error::WeightedInput)
        );
        assert_eq!(
            RootedTree::new(&Graph::new(2, []).unwrap()),
            Err(Error::NotAForest)
        );
    }

    #[test]
    fn rooting() {
        let t = RootedTree::new(&path(3)).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.parent(3), Some(2));
        assert_eq!(t.children(1), &[2]);
        assert_eq!(t.vertices(), &[1, 2, 3]);
    }
}
