//! Integer max-flow / min s-t cut (Dinic).

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// Directed network on nodes `0..nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(Error::InvalidParameter(format!(
                "terminal out of range for {nodes} nodes"
            )));
        }
        if source == sink {
            return Err(Error::InvalidParameter("source equals sink".into()));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> Result<()> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::InvalidParameter(format!(
                "arc ({from}, {to}) out of range for {} nodes",
                self.nodes
            )));
        }
        self.arcs.push(Arc { from, to, capacity });
        Ok(())
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub max_flow_value: u64,
    /// Nodes reachable from the source in the final residual graph.
    pub source_side: Vec<bool>,
    /// Flow on each arc, in the network's arc order.
    pub arc_flows: Vec<u64>,
}

impl CutResult {
    pub fn on_source_side(&self, node: usize) -> bool {
        self.source_side[node]
    }

    /// Adjacency lists of the final residual graph: `u -> v` when an arc
    /// `u -> v` has spare capacity or an arc `v -> u` carries flow.
    pub fn residual_graph(&self, net: &FlowNetwork) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); net.nodes()];
        for (a, &f) in net.arcs().iter().zip(&self.arc_flows) {
            if f < a.capacity {
                out[a.from].push(a.to);
            }
            if f > 0 {
                out[a.to].push(a.from);
            }
        }
        out
    }

    /// Nodes that can still reach the sink in the final residual graph.
    pub fn reaches_sink(&self, net: &FlowNetwork) -> Vec<bool> {
        let mut into = vec![Vec::new(); net.nodes()];
        for (u, outs) in self.residual_graph(net).iter().enumerate() {
            for &v in outs {
                into[v].push(u);
            }
        }
        let mut seen = vec![false; net.nodes()];
        seen[net.sink()] = true;
        let mut stack = vec![net.sink()];
        while let Some(u) = stack.pop() {
            for &w in &into[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// The largest minimum-cut source side: every node that cannot reach the
    /// sink in the final residual graph.
    pub fn maximal_source_side(&self, net: &FlowNetwork) -> Vec<bool> {
        self.reaches_sink(net).into_iter().map(|r| !r).collect()
    }

    /// Total capacity of arcs leaving the source side.
    pub fn cut_capacity(&self, net: &FlowNetwork) -> u64 {
        net.arcs()
            .iter()
            .filter(|a| self.source_side[a.from] && !self.source_side[a.to])
            .map(|a| a.capacity)
            .sum()
    }
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
    rev: usize,
}

struct Dinic {
    graph: Vec<Vec<Edge>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

const UNSEEN: usize = usize::MAX;

impl Dinic {
    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > 0 && self.level[e.to] == UNSEEN {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64) -> u64 {
        if u == t {
            return limit;
        }
        while self.next[u] < self.graph[u].len() {
            let i = self.next[u];
            let Edge { to, cap, rev } = self.graph[u][i];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.graph[u][i].cap -= pushed;
                    self.graph[to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.next[u] += 1;
        }
        0
    }
}

/// Maximum flow and the canonical (source-reachable) minimum cut.
///
/// Panics if the computed flow violates capacity, conservation, or
/// max-flow/min-cut equality; any of those would be an engine bug.
pub fn max_flow_min_cut(net: &FlowNetwork) -> CutResult {
    let n = net.nodes();
    let mut dinic = Dinic {
        graph: vec![Vec::new(); n],
        level: vec![UNSEEN; n],
        next: vec![0; n],
    };
    let mut handles = Vec::with_capacity(net.arcs().len());
    for a in net.arcs() {
        let fwd = dinic.graph[a.from].len();
        let back = dinic.graph[a.to].len() + usize::from(a.from == a.to);
        dinic.graph[a.from].push(Edge {
            to: a.to,
            cap: a.capacity,
            rev: back,
        });
        dinic.graph[a.to].push(Edge {
            to: a.from,
            cap: 0,
            rev: fwd,
        });
        handles.push((a.from, fwd));
    }

    let (s, t) = (net.source(), net.sink());
    let mut value = 0u64;
    while dinic.bfs(s, t) {
        dinic.next.fill(0);
        loop {
            let pushed = dinic.dfs(s, t, u64::MAX);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
    // the last BFS failed to reach t, so `level` marks the residual reach of s
    let source_side: Vec<bool> = dinic.level.iter().map(|&l| l != UNSEEN).collect();

    let arc_flows: Vec<u64> = net
        .arcs()
        .iter()
        .zip(&handles)
        .map(|(a, &(u, i))| a.capacity - dinic.graph[u][i].cap)
        .collect();

    let result = CutResult {
        max_flow_value: value,
        source_side,
        arc_flows,
    };
    check_flow(net, &result);
    result
}

fn check_flow(net: &FlowNetwork, r: &CutResult) {
    let mut balance = vec![0i128; net.nodes()];
    for (a, &f) in net.arcs().iter().zip(&r.arc_flows) {
        assert!(f <= a.capacity, "flow exceeds capacity on {a:?}");
        balance[a.from] -= f as i128;
        balance[a.to] += f as i128;
    }
    for (v, &b) in balance.iter().enumerate() {
        if v != net.source() && v != net.sink() {
            assert_eq!(b, 0, "flow not conserved at node {v}");
        }
    }
    assert_eq!(balance[net.sink()], r.max_flow_value as i128);
    assert!(r.source_side[net.source()] && !r.source_side[net.sink()]);
    assert_eq!(
        r.cut_capacity(net),
        r.max_flow_value,
        "max-flow/min-cut mismatch"
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn network(nodes: usize, arcs: &[(usize, usize, u64)]) -> FlowNetwork {
        let mut net = FlowNetwork::new(nodes, 0, nodes - 1).unwrap();
        for &(u, v, c) in arcs {
            net.add_arc(u, v, c).unwrap();
        }
        net
    }

    #[test]
    fn single_arc() {
        let r = max_flow_min_cut(&network(2, &[(0, 1, 5)]));
        assert_eq!(r.max_flow_value, 5);
        assert_eq!(r.source_side, vec![true, false]);
    }

    #[test]
    fn bottleneck() {
        let r = max_flow_min_cut(&network(3, &[(0, 1, 1), (1, 2, 2)]));
        assert_eq!(r.max_flow_value, 1);
        assert_eq!(r.source_side, vec![true, false, false]);
    }

    #[test]
    fn path_two_lagrangian() {
        // s -> u (1), u -> v (2), v -> t (1): cuts are worth 1, 2, 1
        let r = max_flow_min_cut(&network(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)]));
        assert_eq!(r.max_flow_value, 1);
    }

    #[test]
    fn disconnected_terminals() {
        let r = max_flow_min_cut(&network(4, &[(0, 1, 10), (2, 3, 5)]));
        assert_eq!(r.max_flow_value, 0);
        assert_eq!(r.source_side, vec![true, true, false, false]);
    }

    #[test]
    fn classic_network() {
        let r = max_flow_min_cut(&network(
            6,
            &[
                (0, 1, 10),
                (0, 2, 10),
                (1, 3, 4),
                (1, 4, 8),
                (2, 4, 9),
                (3, 5, 10),
                (4, 3, 6),
                (4, 5, 10),
            ],
        ));
        assert_eq!(r.max_flow_value, 19);
    }

    #[test]
    fn parallel_and_self_arcs() {
        let r = max_flow_min_cut(&network(3, &[(0, 1, 2), (0, 1, 3), (1, 1, 7), (1, 2, 9)]));
        assert_eq!(r.max_flow_value, 5);
    }

    #[test]
    fn maximal_cut_side() {
        // two equal bottlenecks: s -1-> a -1-> t gives minimal side {s} and
        // maximal side {s, a}
        let net = network(3, &[(0, 1, 1), (1, 2, 1)]);
        let r = max_flow_min_cut(&net);
        assert_eq!(r.source_side, vec![true, false, false]);
        let side = r.maximal_source_side(&net);
        assert_eq!(side, vec![true, true, false]);
        let cap: u64 = net
            .arcs()
            .iter()
            .filter(|a| side[a.from] && !side[a.to])
            .map(|a| a.capacity)
            .sum();
        assert_eq!(cap, r.max_flow_value);
    }

    #[test]
    fn rejects_bad_terminals() {
        assert!(FlowNetwork::new(2, 0, 0).is_err());
        assert!(FlowNetwork::new(2, 0, 2).is_err());
        let mut net = FlowNetwork::new(2, 0, 1).unwrap();
        assert!(net.add_arc(0, 2, 1).is_err());
    }
}
