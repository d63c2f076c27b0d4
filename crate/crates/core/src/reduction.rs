//! Karp reduction from CLIQUE to partial vertex cover on bipartite graphs.
//!
//! For a source graph `G'` with `n'` vertices, `m'` edges and clique size
//! `k`, the bipartite graph has one vertex per source vertex and, per source
//! edge `(i, j)`, an edge block: a hub joined to a pendant leaf, with the hub
//! also adjacent to the images of `i` and `j`. So `n = n' + 2m'` and
//! `m = 3m'`. `G'` has a `k`-clique iff some `k + m' - k(k-1)/2` vertices
//! cover at least `m - k(k-1)/2` edges; the proof of the reverse direction
//! needs `m' > k(k-1)/2` and `k >= 5`.
//!
//! Vertex ids: source vertex `i` keeps id `i`; the block of the `b`-th source
//! edge (0-based, sorted order) uses hub `n' + 2b + 1` and leaf `n' + 2b + 2`.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::{bipartition, coverage, BipartiteLabeling, Graph};
use crate::io::{parse_graph, write_graph};
use crate::oracle::Oracle;

/// Largest source graph [`verify_reduction`] enumerates cliques on.
pub const VERIFY_MAX_SOURCE_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    OriginalVertex(usize),
    /// Degree-3 hub of the block for source edge `(i, j)`.
    EdgeBlockLeft(usize, usize),
    /// Degree-1 leaf of the block for source edge `(i, j)`.
    EdgeBlockRight(usize, usize),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Provenance::OriginalVertex(v) => write!(f, "original {v}"),
            Provenance::EdgeBlockLeft(i, j) => write!(f, "block-left {i} {j}"),
            Provenance::EdgeBlockRight(i, j) => write!(f, "block-right {i} {j}"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad id '{t}'"));
        match toks.as_slice() {
            ["original", v] => Ok(Provenance::OriginalVertex(num(v)?)),
            ["block-left", i, j] => Ok(Provenance::EdgeBlockLeft(num(i)?, num(j)?)),
            ["block-right", i, j] => Ok(Provenance::EdgeBlockRight(num(i)?, num(j)?)),
            _ => Err(format!("unknown provenance '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub bipartite: Graph,
    pub labeling: BipartiteLabeling,
    /// `k + m' - k(k-1)/2`; negative when the source has too few edges.
    pub budget: i64,
    /// `m - k(k-1)/2`
    pub target_t: i64,
    /// Indexed by bipartite vertex id minus one.
    pub provenance: Vec<Provenance>,
    pub source_n: usize,
    pub source_m: usize,
    pub clique_k: usize,
}

impl ReductionArtifact {
    /// True when `m' > k(k-1)/2` or `k >= 5` fails, i.e. the no-instance
    /// direction of the reduction is not guaranteed.
    pub fn precondition_warning(&self) -> bool {
        !(self.source_m as i64 > pairs(self.clique_k) && self.clique_k >= 5)
    }

    pub fn provenance(&self, v: usize) -> Provenance {
        self.provenance[v - 1]
    }

    fn source_edges(&self) -> HashSet<(usize, usize)> {
        self.provenance
            .iter()
            .filter_map(|p| match *p {
                Provenance::EdgeBlockLeft(i, j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }
}

fn pairs(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

pub fn reduce_clique_to_pvcb(source: &Graph, k: usize) -> Result<ReductionArtifact> {
    let (n0, m0) = (source.n(), source.m());
    if k < 2 || k > n0 {
        return Err(Error::InvalidParameter(format!(
            "clique size k = {k} must lie in 2..={n0}"
        )));
    }
    let mut provenance: Vec<Provenance> = (1..=n0).map(Provenance::OriginalVertex).collect();
    let mut edges = Vec::with_capacity(3 * m0);
    for (b, &(i, j)) in source.edges().iter().enumerate() {
        let hub = n0 + 2 * b + 1;
        let leaf = hub + 1;
        provenance.push(Provenance::EdgeBlockLeft(i, j));
        provenance.push(Provenance::EdgeBlockRight(i, j));
        edges.extend([(hub, leaf), (i, hub), (j, hub)]);
    }
    let bipartite = Graph::new(n0 + 2 * m0, edges)?;
    let labeling = bipartition(&bipartite)?;
    let c = pairs(k);
    let art = ReductionArtifact {
        budget: k as i64 + m0 as i64 - c,
        target_t: bipartite.m() as i64 - c,
        bipartite,
        labeling,
        provenance,
        source_n: n0,
        source_m: m0,
        clique_k: k,
    };
    debug_assert_eq!(art.bipartite.n(), n0 + 2 * m0);
    debug_assert_eq!(art.bipartite.m(), 3 * m0);
    Ok(art)
}

/// Cover certificate for a `k`-clique: the clique's vertex images plus the
/// hub of every source edge outside the clique.
pub fn clique_to_cover(art: &ReductionArtifact, clique: &[usize]) -> Result<Vec<usize>> {
    let mut members: Vec<usize> = clique.to_vec();
    members.sort_unstable();
    members.dedup();
    let source_edges = art.source_edges();
    let not_clique = || Error::NotAClique(members.clone());
    if members.len() != art.clique_k || members.iter().any(|&v| v < 1 || v > art.source_n) {
        return Err(not_clique());
    }
    for (a, &u) in members.iter().enumerate() {
        for &v in &members[a + 1..] {
            if !source_edges.contains(&(u, v)) {
                return Err(not_clique());
            }
        }
    }
    let inside: HashSet<usize> = members.iter().copied().collect();
    let mut cover = members.clone();
    for v in art.bipartite.vertices() {
        if let Provenance::EdgeBlockLeft(i, j) = art.provenance(v) {
            if !(inside.contains(&i) && inside.contains(&j)) {
                cover.push(v);
            }
        }
    }
    cover.sort_unstable();
    assert_eq!(cover.len() as i64, art.budget);
    assert!(coverage(&art.bipartite, &cover)? as i64 >= art.target_t);
    Ok(cover)
}

/// Lexicographically first `k`-clique, by exhaustive search.
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, k: usize, from: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == k {
            return true;
        }
        for v in from..=g.n() {
            if g.n() - v + 1 < k - cur.len() {
                break;
            }
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                if extend(g, k, v + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    extend(g, k, 1, &mut cur).then_some(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionVerdict {
    pub clique: Option<Vec<usize>>,
    /// A set of exactly `budget` vertices covering at least `target_t` edges.
    pub cover: Option<Vec<usize>>,
    pub artifact: ReductionArtifact,
}

impl ReductionVerdict {
    /// Clique exists iff the budgeted cover exists.
    pub fn equivalent(&self) -> bool {
        self.clique.is_some() == self.cover.is_some()
    }
}

/// Decides both sides of the reduction independently by enumeration.
pub fn verify_reduction(source: &Graph, k: usize, oracle: &Oracle) -> Result<ReductionVerdict> {
    if source.n() > VERIFY_MAX_SOURCE_N {
        return Err(Error::TooLarge {
            n: source.n(),
            limit: VERIFY_MAX_SOURCE_N,
        });
    }
    let art = reduce_clique_to_pvcb(source, k)?;
    let g = &art.bipartite;
    if g.n() > oracle.max_n {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: oracle.max_n,
        });
    }
    let clique = find_clique(source, k);
    let cover = if art.budget < 0 {
        None
    } else {
        let budget = art.budget as usize;
        let target = art.target_t.max(0) as usize;
        oracle
            .cover_within(g, budget, target)?
            .map(|set| pad_to(g, set, budget))
    };
    Ok(ReductionVerdict {
        clique,
        cover,
        artifact: art,
    })
}

/// Adds the smallest unused ids until `set` has `size` members.
fn pad_to(g: &Graph, mut set: Vec<usize>, size: usize) -> Vec<usize> {
    let used: HashSet<usize> = set.iter().copied().collect();
    let missing = size.saturating_sub(set.len());
    set.extend(g.vertices().filter(|v| !used.contains(v)).take(missing));
    set.sort_unstable();
    set
}

/// Graph file with a metadata comment block in front:
///
/// ```text
/// c pvcb-reduction
/// c source <n'> <m'>
/// c clique <k>
/// c budget <B>
/// c target <t>
/// c provenance <id> <tag...>     (one line per vertex, ascending id)
/// p pvc <n> <m>
/// e ...
/// ```
pub fn write_artifact(art: &ReductionArtifact) -> String {
    let mut out = String::new();
    writeln!(out, "c pvcb-reduction").unwrap();
    writeln!(out, "c source {} {}", art.source_n, art.source_m).unwrap();
    writeln!(out, "c clique {}", art.clique_k).unwrap();
    writeln!(out, "c budget {}", art.budget).unwrap();
    writeln!(out, "c target {}", art.target_t).unwrap();
    for v in art.bipartite.vertices() {
        writeln!(out, "c provenance {} {}", v, art.provenance(v)).unwrap();
    }
    out.push_str(&write_graph(&art.bipartite));
    out
}

pub fn load_artifact(text: &str) -> Result<ReductionArtifact> {
    let bipartite = parse_graph(text)?;
    let mut source = None;
    let mut clique = None;
    let mut budget = None;
    let mut target = None;
    let mut provenance: Vec<Option<Provenance>> = vec![None; bipartite.n()];
    for (idx, line) in text.lines().enumerate() {
        let bad = |msg: String| Error::Parse {
            line: idx + 1,
            message: msg,
        };
        let Some(rest) = line.strip_prefix("c ") else {
            continue;
        };
        let (key, value) = rest.split_once(' ').unwrap_or((rest, ""));
        let int = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| bad(format!("bad integer '{s}'")))
        };
        match key {
            "source" => {
                let (a, b) = value
                    .split_once(' ')
                    .ok_or_else(|| bad("expected 'c source <n> <m>'".into()))?;
                source = Some((int(a)? as usize, int(b)? as usize));
            }
            "clique" => clique = Some(int(value)? as usize),
            "budget" => budget = Some(int(value)?),
            "target" => target = Some(int(value)?),
            "provenance" => {
                let (id, tag) = value
                    .split_once(' ')
                    .ok_or_else(|| bad("expected 'c provenance <id> <tag>'".into()))?;
                let id = int(id)? as usize;
                if id < 1 || id > bipartite.n() {
                    return Err(bad(format!("provenance id {id} out of range")));
                }
                provenance[id - 1] = Some(tag.parse().map_err(bad)?);
            }
            _ => {}
        }
    }
    let missing = |what: &str| Error::Parse {
        line: text.lines().count(),
        message: format!("artifact is missing '{what}' metadata"),
    };
    let (source_n, source_m) = source.ok_or_else(|| missing("source"))?;
    let provenance = provenance
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| missing("provenance"))?;
    let labeling = bipartition(&bipartite)?;
    Ok(ReductionArtifact {
        bipartite,
        labeling,
        budget: budget.ok_or_else(|| missing("budget"))?,
        target_t: target.ok_or_else(|| missing("target"))?,
        provenance,
        source_n,
        source_m,
        clique_k: clique.ok_or_else(|| missing("clique"))?,
    })
}
