//! Induced-subgraph detection and membership in the class of
//! `(K_t, sP1+P5)`-free graphs.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search;

/// The pair `(s, t)` naming the class of `(K_t, sP1+P5)`-free graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassParams {
    pub s: usize,
    pub t: usize,
}

impl ClassParams {
    pub fn new(s: usize, t: usize) -> Result<ClassParams> {
        if t == 0 {
            return Err(Error::Invalid("t must be at least 1".into()));
        }
        Ok(ClassParams { s, t })
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K{}, {})", self.t, Pattern::LinearForest(self.s))
    }
}

/// The named patterns used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Pattern {
    /// `K_t`
    Clique(usize),
    /// `P_n`
    Path(usize),
    /// `C_n`, n ≥ 3
    Cycle(usize),
    /// `kP1`
    Independent(usize),
    /// `sP1+P5`
    LinearForest(usize),
}

impl Pattern {
    pub fn graph(&self) -> Graph {
        match *self {
            Pattern::Clique(t) => complete(t),
            Pattern::Path(n) => path(n),
            Pattern::Cycle(n) => {
                let mut edges = path_edges(n);
                if n >= 3 {
                    edges.push((0, n as Vertex - 1));
                }
                Graph::from_edges(n, &edges).expect("cycle is simple")
            }
            Pattern::Independent(k) => Graph::edgeless(k),
            Pattern::LinearForest(s) => build_pattern_sp1_p5(s),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pattern::Clique(t) => write!(f, "K{t}"),
            Pattern::Path(n) => write!(f, "P{n}"),
            Pattern::Cycle(n) => write!(f, "C{n}"),
            Pattern::Independent(k) => write!(f, "{k}P1"),
            Pattern::LinearForest(0) => write!(f, "P5"),
            Pattern::LinearForest(s) => write!(f, "{s}P1+P5"),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        let bad = || Error::Invalid(format!("unknown pattern {s:?}"));
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let s = s.trim();
        if let Some(prefix) = s.strip_suffix("P1+P5") {
            return Ok(Pattern::LinearForest(if prefix.is_empty() { 1 } else { num(prefix)? }));
        }
        if let Some(prefix) = s.strip_suffix("P1") {
            if !prefix.is_empty() {
                return Ok(Pattern::Independent(num(prefix)?));
            }
        }
        if let Some(rest) = s.strip_prefix('K') {
            return Ok(Pattern::Clique(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('P') {
            return Ok(Pattern::Path(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('C') {
            let n = num(rest)?;
            if n < 3 {
                return Err(bad());
            }
            return Ok(Pattern::Cycle(n));
        }
        Err(bad())
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Pattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Pattern> {
        s.parse()
    }
}

/// Vertices of a host graph that induce a copy of `pattern`, listed in the
/// order of the pattern's own vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub vertices: Vec<Vertex>,
    pub pattern: Pattern,
}

fn path_edges(n: usize) -> Vec<(Vertex, Vertex)> {
    (1..n as Vertex).map(|i| (i - 1, i)).collect()
}

pub(crate) fn path(n: usize) -> Graph {
    Graph::from_edges(n, &path_edges(n)).expect("path is simple")
}

pub(crate) fn complete(n: usize) -> Graph {
    let n32 = n as Vertex;
    let edges: Vec<_> = (0..n32).flat_map(|i| (i + 1..n32).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges).expect("clique is simple")
}

/// `sP1+P5`: the path on ids `0..5` followed by `s` isolated vertices.
pub fn build_pattern_sp1_p5(s: usize) -> Graph {
    Graph::from_edges(s + 5, &path_edges(5)).expect("linear forest is simple")
}

/// Finds an induced copy of `pattern` in `g`.
///
/// The result lists host vertices in pattern-vertex order and is the
/// lexicographically first such list. Backtracks over pattern vertices in
/// index order, checking adjacency and non-adjacency against every earlier
/// assignment. Pattern twins are assigned in increasing host order, which
/// only discards embeddings that are not lexicographically first.
pub fn find_induced(g: &Graph, pattern: &Graph) -> Option<Vec<Vertex>> {
    let k = pattern.n();
    if k > g.n() {
        return None;
    }
    // earlier twins and earliest earlier neighbour of each pattern vertex
    let twins: Vec<Vec<usize>> = (0..k)
        .map(|v| (0..v).filter(|&u| are_twins(pattern, u, v)).collect())
        .collect();
    let anchor: Vec<Option<usize>> = (0..k).map(|v| pattern.neighbors_idx(v).iter().copied().find(|&u| u < v)).collect();

    let mut assign = Vec::with_capacity(k);
    let mut used = FixedBitSet::with_capacity(g.n());
    if extend(g, pattern, &twins, &anchor, &mut assign, &mut used) {
        Some(assign.into_iter().map(|i| g.id(i)).collect())
    } else {
        None
    }
}

fn are_twins(p: &Graph, u: usize, v: usize) -> bool {
    (0..p.n()).filter(|&w| w != u && w != v).all(|w| p.adjacent_idx(u, w) == p.adjacent_idx(v, w))
}

fn extend(
    g: &Graph,
    pattern: &Graph,
    twins: &[Vec<usize>],
    anchor: &[Option<usize>],
    assign: &mut Vec<usize>,
    used: &mut FixedBitSet,
) -> bool {
    let pos = assign.len();
    if pos == pattern.n() {
        return true;
    }
    let all: Vec<usize>;
    let candidates: &[usize] = match anchor[pos] {
        Some(q) => g.neighbors_idx(assign[q]),
        None => {
            all = (0..g.n()).collect();
            &all
        }
    };
    let floor = twins[pos].iter().map(|&u| assign[u] + 1).max().unwrap_or(0);
    for &h in candidates {
        if h < floor || used.contains(h) {
            continue;
        }
        if (0..pos).any(|q| g.adjacent_idx(h, assign[q]) != pattern.adjacent_idx(pos, q)) {
            continue;
        }
        assign.push(h);
        used.insert(h);
        if extend(g, pattern, twins, anchor, assign, used) {
            return true;
        }
        used.set(h, false);
        assign.pop();
    }
    false
}

pub fn find_pattern(g: &Graph, pattern: Pattern) -> Option<PatternWitness> {
    find_induced(g, &pattern.graph()).map(|vertices| PatternWitness { vertices, pattern })
}

pub fn contains_pattern(g: &Graph, pattern: Pattern) -> bool {
    find_pattern(g, pattern).is_some()
}

/// The first forbidden pattern found in `g` (`K_t` checked before `sP1+P5`).
pub fn class_violation(g: &Graph, params: ClassParams) -> Option<PatternWitness> {
    find_pattern(g, Pattern::Clique(params.t)).or_else(|| find_pattern(g, Pattern::LinearForest(params.s)))
}

pub fn is_class_member(g: &Graph, params: ClassParams) -> bool {
    class_violation(g, params).is_none()
}

/// An independent set of exactly `target` vertices inside `within`, the
/// lexicographically first one.
pub fn max_independent_in(g: &Graph, within: &VertexSet, target: usize) -> Result<Option<VertexSet>> {
    let pool: Vec<usize> = within.iter().map(|v| g.require_index(v)).collect::<Result<_>>()?;
    fn go(g: &Graph, pool: &[usize], from: usize, target: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == target {
            return true;
        }
        for k in from..pool.len() {
            if pool.len() - k < target - chosen.len() {
                break;
            }
            let v = pool[k];
            if chosen.iter().all(|&c| !g.adjacent_idx(c, v)) {
                chosen.push(v);
                if go(g, pool, k + 1, target, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(go(g, &pool, 0, target, &mut chosen).then(|| chosen.into_iter().map(|i| g.id(i)).collect()))
}

/// Size of a largest clique; 0 for the empty graph.
pub fn clique_number(g: &Graph) -> usize {
    let rows: Vec<FixedBitSet> = (0..g.n()).map(|i| g.adjacency_row(i).clone()).collect();
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    search::max_clique(&rows, &all)
}
