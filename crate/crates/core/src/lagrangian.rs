//! Exact partial vertex cover on bipartite graphs whose coverage profile is
//! concave, via a parametric Lagrangian relaxation solved by min cut.
//!
//! Dropping the coverage constraint and charging `λ` per uncovered edge gives
//! `min Σ x_v + λ Σ z_e` subject to `x_u + x_v + z_e >= 1`. Thresholds are
//! restricted to `1/λ = j + 1/2`; multiplying through by `2j + 1` makes every
//! coefficient an integer (vertex cost `2j + 1`, edge penalty `2`), so the
//! whole search runs in exact arithmetic.
//!
//! With a concave profile the relaxation at threshold `j + 1/2` selects
//! exactly the `k` vertices whose marginal gain exceeds the threshold, and
//! those `k` vertices cover `OPT(k)` edges. A binary search over `j` then
//! either hits the target exactly or brackets it between two adjacent
//! thresholds, where every marginal in between equals `j + 1`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::flow::{max_flow_min_cut, CutResult, FlowNetwork};
use crate::graph::{coverage, BipartiteLabeling, Graph, PvcInstance, Side};
use crate::oracle::PvcSolution;

/// Half-integral threshold `1/λ = j + 1/2`, stored as `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThresholdParam(usize);

impl ThresholdParam {
    pub const EDGE_PENALTY: u64 = 2;

    pub fn new(j: usize) -> Self {
        ThresholdParam(j)
    }

    pub fn j(self) -> usize {
        self.0
    }

    /// Scaled cost of one vertex, `2j + 1`.
    pub fn vertex_cost(self) -> u64 {
        2 * self.0 as u64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianSolution {
    pub threshold: ThresholdParam,
    pub selected: Vec<usize>,
    pub uncovered: Vec<(usize, usize)>,
    pub k: usize,
    /// `(2j + 1) * k + 2 * |uncovered|`
    pub scaled_objective: u64,
}

impl LagrangianSolution {
    pub fn covered(&self, g: &Graph) -> usize {
        g.m() - self.uncovered.len()
    }
}

fn check_inputs(g: &Graph, lab: &BipartiteLabeling) -> Result<()> {
    g.require_unit_weights()?;
    lab.validate(g)
}

/// Node 0 is the source, vertex `v` is node `v`, node `n + 1` is the sink.
///
/// Arcs, in order: `s -> u` for each left vertex, `u -> v` for each edge
/// (left to right), `v -> t` for each right vertex.
pub fn build_lagrangian_network(
    g: &Graph,
    lab: &BipartiteLabeling,
    p: ThresholdParam,
) -> Result<FlowNetwork> {
    check_inputs(g, lab)?;
    network_with_costs(g, lab, p.vertex_cost(), ThresholdParam::EDGE_PENALTY)
}

fn network_with_costs(
    g: &Graph,
    lab: &BipartiteLabeling,
    vertex_cost: u64,
    edge_penalty: u64,
) -> Result<FlowNetwork> {
    let sink = g.n() + 1;
    let mut net = FlowNetwork::new(g.n() + 2, 0, sink)?;
    for u in lab.left() {
        net.add_arc(0, u, vertex_cost)?;
    }
    for &(a, b) in g.edges() {
        let (u, v) = if lab.side(a) == Side::Left {
            (a, b)
        } else {
            (b, a)
        };
        net.add_arc(u, v, edge_penalty)?;
    }
    for v in lab.right() {
        net.add_arc(v, sink, vertex_cost)?;
    }
    Ok(net)
}

fn selection(g: &Graph, lab: &BipartiteLabeling, source_side: &[bool]) -> Vec<usize> {
    g.vertices()
        .filter(|&v| match lab.side(v) {
            Side::Left => !source_side[v],
            Side::Right => source_side[v],
        })
        .collect()
}

/// Optimal Lagrangian solution from the canonical min cut: a left vertex is
/// selected when cut off from the source, a right vertex when it stays on
/// the source side.
pub fn solve_lagrangian(
    g: &Graph,
    lab: &BipartiteLabeling,
    p: ThresholdParam,
) -> Result<LagrangianSolution> {
    let net = build_lagrangian_network(g, lab, p)?;
    let cut = max_flow_min_cut(&net);
    let selected = selection(g, lab, &cut.source_side);
    let mut mask = vec![false; g.n()];
    for &v in &selected {
        mask[v - 1] = true;
    }
    let uncovered: Vec<_> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !mask[u - 1] && !mask[v - 1])
        .collect();
    let k = selected.len();
    let scaled_objective =
        p.vertex_cost() * k as u64 + ThresholdParam::EDGE_PENALTY * uncovered.len() as u64;
    assert_eq!(
        scaled_objective, cut.max_flow_value,
        "cut does not map to a feasible Lagrangian solution"
    );
    Ok(LagrangianSolution {
        threshold: p,
        selected,
        uncovered,
        k,
        scaled_objective,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurvePoint {
    pub j: usize,
    pub k: usize,
    pub covered: usize,
}

/// One Lagrangian solve per threshold `j = 0..=Δ`.
pub fn selected_count_curve(g: &Graph, lab: &BipartiteLabeling) -> Result<Vec<CurvePoint>> {
    (0..=g.max_degree())
        .map(|j| {
            let sol = solve_lagrangian(g, lab, ThresholdParam::new(j))?;
            Ok(CurvePoint {
                j,
                k: sol.k,
                covered: sol.covered(g),
            })
        })
        .collect()
}

/// How the threshold search terminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `t = 0`; no solve needed.
    Trivial,
    /// The relaxation at threshold `j + 1/2` covered exactly `t` edges.
    Exact { j: usize },
    /// `covered(j_low) > t > covered(j_low + 1)`. The solve at `j_low + 1`
    /// picked `k_high` vertices covering `t_high` edges, and each further
    /// vertex adds `gain` edges.
    Bracketed {
        j_low: usize,
        k_high: usize,
        t_high: usize,
        gain: usize,
    },
}

/// Where a bracketed search found its witness set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessRoute {
    /// Peeled down from the selection at `j_low`.
    PeelLow,
    /// A minimum cut at the integral threshold `j_low + 1`.
    CutLattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MncSearch {
    pub solution: PvcSolution,
    pub outcome: SearchOutcome,
    /// Half-integral relaxations solved by the search.
    pub solves: usize,
    /// `None` unless the outcome is [`SearchOutcome::Bracketed`].
    pub witness: Option<WitnessRoute>,
}

/// Minimum partial vertex cover, exact when the profile of `g` is concave.
///
/// Concavity is not checked up front and does not follow from the graph
/// being a tree or having maximum degree 3: a spider with three legs of
/// length two already has profile `0, 3, 4, 6`. On such inputs the result may
/// be too large, or the search fails with [`Error::MncViolation`] when no
/// set of the size it derived covers `t` edges.
pub fn solve_pvc_mnc(inst: &PvcInstance, lab: &BipartiteLabeling) -> Result<PvcSolution> {
    solve_pvc_mnc_traced(inst, lab).map(|s| s.solution)
}

pub fn solve_pvc_mnc_traced(inst: &PvcInstance, lab: &BipartiteLabeling) -> Result<MncSearch> {
    let g = inst.graph();
    check_inputs(g, lab)?;
    let t = inst.t();
    if t == 0 {
        return Ok(MncSearch {
            solution: PvcSolution::new(g, Vec::new(), 0)?,
            outcome: SearchOutcome::Trivial,
            solves: 0,
            witness: None,
        });
    }

    let mut cache: HashMap<usize, LagrangianSolution> = HashMap::new();
    let mut solve = |j: usize| -> Result<(usize, usize)> {
        if let Entry::Vacant(slot) = cache.entry(j) {
            slot.insert(solve_lagrangian(g, lab, ThresholdParam::new(j))?);
        }
        let sol = &cache[&j];
        Ok((sol.k, sol.covered(g)))
    };

    // covered(0) = m >= t and covered(Δ) = 0 < t hold on every graph
    let (mut lo, mut hi) = (0usize, g.max_degree());
    let mut exact = None;
    if solve(lo)?.1 == t {
        exact = Some(lo);
    }
    while exact.is_none() && hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let covered = solve(mid)?.1;
        if covered == t {
            exact = Some(mid);
        } else if covered > t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if exact.is_none() {
        solve(hi)?;
    }
    let solves = cache.len();

    if let Some(j) = exact {
        let set = cache[&j].selected.clone();
        return Ok(MncSearch {
            solution: PvcSolution::new(g, set, t)?,
            outcome: SearchOutcome::Exact { j },
            solves,
            witness: None,
        });
    }

    let (k_high, t_high) = (cache[&hi].k, cache[&hi].covered(g));
    let gain = lo + 1;
    if t_high >= t || cache[&lo].covered(g) <= t {
        return Err(Error::MncViolation(format!(
            "coverage is not monotone between thresholds {lo} and {hi}"
        )));
    }
    let size = k_high + (t - t_high).div_ceil(gain);
    let Some((witness, route)) = bracket_witness(g, lab, &cache[&lo].selected, gain, size, t)?
    else {
        return Err(Error::MncViolation(format!(
            "bracket at j = {lo} predicts {size} vertices, but no set of that size covers {t} edges"
        )));
    };
    Ok(MncSearch {
        solution: PvcSolution::new(g, witness, t)?,
        outcome: SearchOutcome::Bracketed {
            j_low: lo,
            k_high,
            t_high,
            gain,
        },
        solves,
        witness: Some(route),
    })
}

/// A set of exactly `size` vertices covering at least `t` edges.
///
/// Peeling the `j_low` selection works on most instances but can get stuck
/// above `size`. The fallback works at the integral threshold `gain` (vertex
/// cost `gain`, edge penalty 1), where every maximum-coverage set of a size
/// inside the bracket is an optimal relaxation solution and hence a minimum
/// cut. Minimum cuts are exactly the residual-closed source sides, and moving
/// one strongly connected component across keeps a cut minimum. The search
/// walks from the optimal cut selecting the fewest vertices to the one
/// selecting the most, and stops at the first cut selecting `size`.
fn bracket_witness(
    g: &Graph,
    lab: &BipartiteLabeling,
    low_selection: &[usize],
    gain: usize,
    size: usize,
    t: usize,
) -> Result<Option<(Vec<usize>, WitnessRoute)>> {
    let fits = |set: &[usize]| set.len() == size && coverage(g, set).is_ok_and(|c| c >= t);
    let peeled = peel(g, low_selection, t);
    if fits(&peeled) {
        return Ok(Some((peeled, WitnessRoute::PeelLow)));
    }
    let net = network_with_costs(g, lab, gain as u64, 1)?;
    let cut = max_flow_min_cut(&net);
    // scaling by `scale > n` leaves the optimum intact and breaks ties by size
    let scale = g.n() as u64 + 2;
    let fewest = network_with_costs(g, lab, gain as u64 * scale + 1, scale)?;
    let most = network_with_costs(g, lab, gain as u64 * scale - 1, scale)?;
    let from = max_flow_min_cut(&fewest).source_side;
    let to = max_flow_min_cut(&most).source_side;
    let walked = walk_min_cuts(g, lab, &net, &cut, from, &to, size);
    Ok(walked
        .filter(|set| fits(set))
        .map(|set| (set, WitnessRoute::CutLattice)))
}

/// Strongly connected components of the residual graph. A source side is a
/// minimum cut exactly when it is a union of components closed under
/// residual arcs.
struct CutLattice {
    members: Vec<Vec<usize>>,
    /// Change in the number of selected vertices when the component joins
    /// the source side: `+1` per right vertex, `-1` per left vertex.
    weight: Vec<i64>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// Upper bound on cuts visited by the exhaustive phase of the walk.
const LATTICE_STATES: usize = 1 << 16;

impl CutLattice {
    fn new(g: &Graph, lab: &BipartiteLabeling, net: &FlowNetwork, cut: &CutResult) -> Self {
        let residual = cut.residual_graph(net);
        let (comp, count) = strong_components(&residual);
        let mut weight = vec![0i64; count];
        let mut members = vec![Vec::new(); count];
        for v in 0..net.nodes() {
            members[comp[v]].push(v);
            if (1..=g.n()).contains(&v) {
                weight[comp[v]] += match lab.side(v) {
                    Side::Left => -1,
                    Side::Right => 1,
                };
            }
        }
        let mut succ = vec![Vec::new(); count];
        let mut pred = vec![Vec::new(); count];
        for (u, outs) in residual.iter().enumerate() {
            for &v in outs {
                let (cu, cv) = (comp[u], comp[v]);
                if cu != cv {
                    succ[cu].push(cv);
                    pred[cv].push(cu);
                }
            }
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        CutLattice {
            members,
            weight,
            succ,
            pred,
        }
    }

    fn count(&self) -> usize {
        self.members.len()
    }

    fn components_of(&self, side: &[bool]) -> Vec<bool> {
        self.members.iter().map(|m| side[m[0]]).collect()
    }

    fn side_of(&self, inside: &[bool], nodes: usize) -> Vec<bool> {
        let mut side = vec![false; nodes];
        for (c, m) in self.members.iter().enumerate() {
            for &v in m {
                side[v] = inside[c];
            }
        }
        side
    }

    /// Components that can switch sides while keeping the cut minimum,
    /// restricted to `movable`, with the resulting change in size.
    fn moves<'a>(
        &'a self,
        inside: &'a [bool],
        movable: impl Fn(usize) -> bool + 'a,
    ) -> impl Iterator<Item = (usize, i64)> + 'a {
        (0..self.count())
            .filter(move |&c| movable(c))
            .filter_map(move |c| {
                if !inside[c] && self.succ[c].iter().all(|&d| inside[d]) {
                    Some((c, self.weight[c]))
                } else if inside[c] && self.pred[c].iter().all(|&d| !inside[d]) {
                    Some((c, -self.weight[c]))
                } else {
                    None
                }
            })
    }
}

/// Searches the minimum cuts for one selecting exactly `size` vertices.
///
/// First a greedy walk from `from` to `to`, moving only components on which
/// they differ. If that skips over `size`, a breadth-first search over all
/// minimum cuts reachable from `from`, capped at [`LATTICE_STATES`].
fn walk_min_cuts(
    g: &Graph,
    lab: &BipartiteLabeling,
    net: &FlowNetwork,
    cut: &CutResult,
    from: Vec<bool>,
    to: &[bool],
    size: usize,
) -> Option<Vec<usize>> {
    let lattice = CutLattice::new(g, lab, net, cut);
    let start = lattice.components_of(&from);
    let goal = lattice.components_of(to);
    let first = selection(g, lab, &from).len() as i64;
    let target = size as i64;
    let finish = |inside: &[bool]| selection(g, lab, &lattice.side_of(inside, net.nodes()));

    let mut inside = start.clone();
    let mut current = first;
    loop {
        if current == target {
            return Some(finish(&inside));
        }
        let gap = target - current;
        // exact hit, then the largest step towards the target without
        // overshooting, then neutral steps, then the smallest detour
        let pick = lattice
            .moves(&inside, |c| inside[c] != goal[c])
            .min_by_key(|&(c, w)| {
                let rank = if w == gap {
                    0
                } else if w.signum() == gap.signum() && w.abs() < gap.abs() {
                    1
                } else if w == 0 {
                    2
                } else {
                    3
                };
                let tie = if rank == 1 { -w.abs() } else { (gap - w).abs() };
                (rank, tie, c)
            });
        let Some((c, step)) = pick else { break };
        inside[c] = !inside[c];
        current += step;
    }

    // the source's and the sink's components never move
    let fixed_in = lattice.components_of(&cut.source_side);
    let fixed_out = lattice.components_of(&cut.maximal_source_side(net));
    let free = |c: usize| !fixed_in[c] && fixed_out[c];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, first)]);
    while let Some((state, size_now)) = queue.pop_front() {
        if size_now == target {
            return Some(finish(&state));
        }
        for (c, step) in lattice.moves(&state, free) {
            let mut next = state.clone();
            next[c] = !next[c];
            if seen.len() < LATTICE_STATES && seen.insert(next.clone()) {
                queue.push_back((next, size_now + step));
            }
        }
    }
    None
}

/// Tarjan's algorithm without recursion; returns the component of each node
/// and the number of components.
fn strong_components(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const NONE: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        let mut frames = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut i)) = frames.last_mut() {
            if let Some(&w) = adj[u].get(*i) {
                *i += 1;
                if index[w] == NONE {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(p, _)) = frames.last() {
                low[p] = low[p].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == u {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// Repeatedly drops the vertex whose removal loses the fewest covered edges
/// (largest id on ties) while coverage stays at least `t`.
fn peel(g: &Graph, start: &[usize], t: usize) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    for &v in start {
        inside[v - 1] = true;
    }
    let private =
        |v: usize, inside: &[bool]| g.neighbors(v).iter().filter(|&&w| !inside[w - 1]).count();
    let mut covered = g.coverage_of_mask(&inside);
    let mut set: Vec<usize> = start.to_vec();
    loop {
        let pick = set
            .iter()
            .map(|&v| (private(v, &inside), std::cmp::Reverse(v)))
            .filter(|&(loss, _)| covered - loss >= t)
            .min();
        let Some((loss, std::cmp::Reverse(v))) = pick else {
            break;
        };
        inside[v - 1] = false;
        covered -= loss;
        set.retain(|&u| u != v);
    }
    set
}
