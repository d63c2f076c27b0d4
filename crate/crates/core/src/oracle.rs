//! Exhaustive ground truth: coverage profiles, brute-force partial covers,
//! and the concavity (MNC) check.
//!
//! Everything here enumerates vertex subsets with branch-and-bound, so it is
//! guarded by a vertex-count limit (default [`DEFAULT_MAX_N`]).

use crate::error::{Error, Result};
use crate::graph::{Graph, PvcInstance};

pub const DEFAULT_MAX_N: usize = 24;

/// `opt[k]` is the maximum number of edges coverable with `k` vertices (unit
/// weights) or with total weight at most `k` (weighted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageProfile {
    opt: Vec<usize>,
    marginals: Vec<usize>,
    weighted: bool,
}

impl CoverageProfile {
    /// Validates `opt[0] == 0` and monotonicity.
    pub fn new(opt: Vec<usize>, weighted: bool) -> Result<Self> {
        if opt.first().copied().unwrap_or(0) != 0 {
            return Err(Error::InvalidParameter("profile must start at 0".into()));
        }
        if opt.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter(
                "profile must be nondecreasing".into(),
            ));
        }
        let marginals = opt.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(CoverageProfile {
            opt,
            marginals,
            weighted,
        })
    }

    pub fn opt(&self) -> &[usize] {
        &self.opt
    }

    /// `marginals()[i]` is the gain `a_{i+1} = opt[i+1] - opt[i]`.
    pub fn marginals(&self) -> &[usize] {
        &self.marginals
    }

    /// Gain of the `k`-th vertex, `k >= 1`.
    pub fn marginal(&self, k: usize) -> usize {
        self.marginals[k - 1]
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Smallest `k` with `opt[k] >= t`.
    pub fn min_size_for(&self, t: usize) -> Option<usize> {
        self.opt.iter().position(|&c| c >= t)
    }

    /// Number of marginals strictly above `j + 1/2`, i.e. at least `j + 1`.
    pub fn count_marginals_above_half(&self, j: usize) -> usize {
        self.marginals.iter().filter(|&&a| a > j).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MncReport {
    pub holds: bool,
    /// Smallest `k` with `a_{k+1} > a_k`.
    pub first_violation: Option<usize>,
}

pub fn check_mnc(p: &CoverageProfile) -> MncReport {
    let first_violation = p
        .marginals()
        .windows(2)
        .position(|w| w[1] > w[0])
        .map(|i| i + 1);
    MncReport {
        holds: first_violation.is_none(),
        first_violation,
    }
}

/// A partial cover together with the target it was solved for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PvcSolution {
    pub vertices: Vec<usize>,
    pub size: usize,
    pub covered: usize,
    pub t: usize,
}

impl PvcSolution {
    /// Sorts `vertices`, recomputes coverage and checks it reaches `t`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>, t: usize) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let covered = crate::graph::coverage(g, &vertices)?;
        if covered < t {
            return Err(Error::InvalidParameter(format!(
                "set {vertices:?} covers {covered} < {t} edges"
            )));
        }
        Ok(PvcSolution {
            size: vertices.len(),
            vertices,
            covered,
            t,
        })
    }
}

/// Subset-enumeration oracle with a vertex-count guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl Oracle {
    pub fn new(max_n: usize) -> Self {
        Oracle { max_n }
    }

    fn guard(&self, g: &Graph) -> Result<()> {
        if g.n() > self.max_n {
            Err(Error::TooLarge {
                n: g.n(),
                limit: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn opt_profile(&self, g: &Graph, k_max: usize) -> Result<CoverageProfile> {
        self.guard(g)?;
        g.require_unit_weights()?;
        if k_max > g.n() {
            return Err(Error::InvalidParameter(format!(
                "k_max {k_max} exceeds n = {}",
                g.n()
            )));
        }
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v + 1)));
        let mut search = Search::new(g, order);
        let mut best = vec![0usize; k_max + 1];
        search.profile(0, 0, 0, &mut best);
        CoverageProfile::new(best, false)
    }

    /// `opt[k]` for every budget `k = 0..=budget_max`: the most edges covered
    /// by a set of total weight at most `k`.
    pub fn weighted_profile(&self, g: &Graph, budget_max: usize) -> Result<CoverageProfile> {
        self.guard(g)?;
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v + 1)));
        let mut search = Search::new(g, order);
        let mut exact = vec![0usize; budget_max + 1];
        search.weighted(0, 0, 0, &mut exact);
        let mut running = 0;
        let opt = exact
            .into_iter()
            .map(|c| {
                running = running.max(c);
                running
            })
            .collect();
        CoverageProfile::new(opt, true)
    }

    /// Minimum-cardinality set covering at least `t` edges; among minimum
    /// sets, the lexicographically smallest sorted id sequence.
    pub fn solve_pvc_bruteforce(&self, inst: &PvcInstance) -> Result<PvcSolution> {
        let g = inst.graph();
        self.guard(g)?;
        g.require_unit_weights()?;
        let t = inst.t();
        let mut search = Search::new(g, (0..g.n()).collect());
        for k in 0..=g.n() {
            if let Some(set) = search.first_reaching(k, t) {
                return PvcSolution::new(g, set, t);
            }
        }
        unreachable!("the full vertex set covers every edge")
    }

    /// A smallest set of at most `k` vertices covering at least `t` edges,
    /// if one exists (lexicographically first among the smallest).
    pub fn cover_within(&self, g: &Graph, k: usize, t: usize) -> Result<Option<Vec<usize>>> {
        self.guard(g)?;
        g.require_unit_weights()?;
        let mut search = Search::new(g, (0..g.n()).collect());
        for size in 0..=k.min(g.n()) {
            if let Some(set) = search.first_reaching(size, t) {
                return Ok(Some(set));
            }
        }
        Ok(None)
    }
}

pub fn opt_profile(g: &Graph, k_max: usize) -> Result<CoverageProfile> {
    Oracle::default().opt_profile(g, k_max)
}

pub fn weighted_profile(g: &Graph, budget_max: usize) -> Result<CoverageProfile> {
    Oracle::default().weighted_profile(g, budget_max)
}

pub fn solve_pvc_bruteforce(inst: &PvcInstance) -> Result<PvcSolution> {
    Oracle::default().solve_pvc_bruteforce(inst)
}

/// Include/exclude DFS over vertices in a fixed order. Vertices are 0-based
/// internally.
struct Search {
    order: Vec<usize>,
    adj: Vec<Vec<usize>>,
    weight: Vec<usize>,
    /// selected neighbours per vertex
    hits: Vec<usize>,
    chosen: Vec<usize>,
    scratch: Vec<usize>,
}

impl Search {
    fn new(g: &Graph, order: Vec<usize>) -> Self {
        let adj = (1..=g.n())
            .map(|v| g.neighbors(v).iter().map(|&w| w - 1).collect())
            .collect();
        Search {
            order,
            adj,
            weight: g.weights().iter().map(|&w| w as usize).collect(),
            hits: vec![0; g.n()],
            chosen: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn gain(&self, v: usize) -> usize {
        self.adj[v].len() - self.hits[v]
    }

    fn select(&mut self, v: usize) {
        for &w in &self.adj[v] {
            self.hits[w] += 1;
        }
        self.chosen.push(v);
    }

    fn deselect(&mut self, v: usize) {
        for &w in &self.adj[v] {
            self.hits[w] -= 1;
        }
        self.chosen.pop();
    }

    /// Gains of the undecided vertices, sorted descending, as prefix sums
    /// (`scratch[r]` = best total gain of `r` more picks, ignoring overlap).
    fn prefix_gains(&mut self, pos: usize, limit: usize) {
        let mut gains: Vec<usize> = self.order[pos..].iter().map(|&v| self.gain(v)).collect();
        gains.sort_unstable_by(|a, b| b.cmp(a));
        self.scratch.clear();
        self.scratch.push(0);
        let mut acc = 0;
        for g in gains.into_iter().take(limit) {
            acc += g;
            self.scratch.push(acc);
        }
    }

    fn profile(&mut self, pos: usize, count: usize, cov: usize, best: &mut [usize]) {
        let k_max = best.len() - 1;
        best[count] = best[count].max(cov);
        if count == k_max || pos == self.order.len() {
            return;
        }
        self.prefix_gains(pos, k_max - count);
        let promising = self
            .scratch
            .iter()
            .enumerate()
            .skip(1)
            .any(|(r, &bound)| cov + bound > best[count + r]);
        if !promising {
            return;
        }
        let v = self.order[pos];
        let gain = self.gain(v);
        self.select(v);
        self.profile(pos + 1, count + 1, cov + gain, best);
        self.deselect(v);
        self.profile(pos + 1, count, cov, best);
    }

    fn weighted(&mut self, pos: usize, weight: usize, cov: usize, exact: &mut [usize]) {
        exact[weight] = exact[weight].max(cov);
        if pos == self.order.len() {
            return;
        }
        let remaining: usize = self.order[pos..].iter().map(|&v| self.gain(v)).sum();
        let floor = exact[..=weight].iter().copied().max().unwrap_or(0);
        if cov + remaining <= floor {
            return;
        }
        let v = self.order[pos];
        if weight + self.weight[v] < exact.len() {
            let gain = self.gain(v);
            self.select(v);
            self.weighted(pos + 1, weight + self.weight[v], cov + gain, exact);
            self.deselect(v);
        }
        self.weighted(pos + 1, weight, cov, exact);
    }

    /// Lexicographically first set of exactly `k` vertices (1-based ids)
    /// covering at least `t` edges. Requires `order` to be `0..n`.
    fn first_reaching(&mut self, k: usize, t: usize) -> Option<Vec<usize>> {
        self.chosen.clear();
        if self.reach(0, k, 0, t) {
            Some(self.chosen.iter().map(|&v| v + 1).collect())
        } else {
            None
        }
    }

    fn reach(&mut self, pos: usize, k: usize, cov: usize, t: usize) -> bool {
        let count = self.chosen.len();
        if count == k {
            return cov >= t;
        }
        let n = self.order.len();
        if n - pos < k - count {
            return false;
        }
        self.prefix_gains(pos, k - count);
        if cov + self.scratch[k - count] < t {
            return false;
        }
        let v = self.order[pos];
        let gain = self.gain(v);
        self.select(v);
        if self.reach(pos + 1, k, cov + gain, t) {
            return true;
        }
        self.deselect(v);
        self.reach(pos + 1, k, cov, t)
    }
}
