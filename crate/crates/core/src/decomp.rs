//! Branch decompositions, cut evaluation and an exhaustive mim-width oracle.
//!
//! A branch decomposition is a subcubic tree whose leaves are in bijection
//! with the vertices of a graph. Removing a tree edge splits the leaves, and
//! hence the vertices, into two sides; the width of that edge is the size of
//! a maximum induced matching among the graph edges crossing the split.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search;

/// Default vertex limit for [`exact_mimw`].
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// A tree on nodes `0..nodes` plus a map from graph vertices to its leaves.
///
/// Serializes as `{"nodes": .., "tree_edges": [[a,b],..], "leaf_map": {"<vertex>": node}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDecomposition {
    pub nodes: usize,
    pub tree_edges: Vec<[usize; 2]>,
    pub leaf_map: BTreeMap<Vertex, usize>,
}

impl BranchDecomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(v: Vertex) -> Self {
        BranchDecomposition { nodes: 1, tree_edges: Vec::new(), leaf_map: BTreeMap::from([(v, 0)]) }
    }

    /// Caterpillar whose leaves carry `vertices` in the given order: the
    /// first two and the last two leaves share a spine node, every other
    /// leaf hangs off its own spine node.
    pub fn caterpillar(vertices: &[Vertex]) -> Self {
        let k = vertices.len();
        match k {
            0 => return Self::empty(),
            1 => return Self::single(vertices[0]),
            _ => {}
        }
        let leaf_map = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if k == 2 {
            return BranchDecomposition { nodes: 2, tree_edges: vec![[0, 1]], leaf_map };
        }
        let spine = |j: usize| k + j;
        let mut tree_edges = vec![[spine(0), 0]];
        for j in 1..k - 1 {
            tree_edges.push([spine(j - 1), j]);
        }
        tree_edges.push([spine(k - 3), k - 1]);
        for j in 0..k - 3 {
            tree_edges.push([spine(j), spine(j + 1)]);
        }
        tree_edges.sort_unstable();
        BranchDecomposition { nodes: 2 * k - 2, tree_edges, leaf_map }
    }

    pub fn vertices(&self) -> VertexSet {
        self.leaf_map.keys().copied().collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes];
        for &[a, b] in &self.tree_edges {
            if a < self.nodes {
                deg[a] += 1;
            }
            if b < self.nodes {
                deg[b] += 1;
            }
        }
        deg
    }

    /// Node → vertex for leaf nodes.
    pub fn node_labels(&self) -> BTreeMap<usize, Vertex> {
        self.leaf_map.iter().map(|(&v, &node)| (node, v)).collect()
    }

    /// Checks the tree shape and the leaf bijection against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidDecomposition(what.to_string()));
        if self.nodes == 0 {
            if !self.tree_edges.is_empty() || !self.leaf_map.is_empty() || !g.is_empty() {
                return fail("bijection violated: empty tree for a nonempty graph");
            }
            return Ok(());
        }
        if self.tree_edges.iter().any(|&[a, b]| a >= self.nodes || b >= self.nodes) {
            return fail("tree edge endpoint out of range");
        }
        if self.tree_edges.iter().any(|&[a, b]| a == b) {
            return fail("tree has a self-loop");
        }
        if self.tree_edges.len() + 1 != self.nodes || !self.tree_connected() {
            return fail("not a tree");
        }
        let deg = self.degrees();
        if deg.iter().any(|&d| d > 3) {
            return fail("subcubic violated");
        }
        let leaves: Vec<usize> = (0..self.nodes).filter(|&x| deg[x] <= 1).collect();
        let mut targets: Vec<usize> = self.leaf_map.values().copied().collect();
        targets.sort_unstable();
        let keys_match = self.leaf_map.len() == g.n() && self.leaf_map.keys().zip(g.ids()).all(|(a, b)| a == b);
        if !keys_match || targets != leaves {
            return fail("bijection violated");
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    fn tree_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Per node: (neighbour, edge index).
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for (e, &[a, b]) in self.tree_edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    /// For every tree edge, the vertices on the side that contains the
    /// smaller endpoint. Assumes a valid tree.
    pub fn cuts(&self) -> Vec<(usize, VertexSet)> {
        if self.tree_edges.is_empty() {
            return Vec::new();
        }
        let adj = self.adjacency();
        let labels = self.node_labels();
        // root at node 0; parent and DFS order
        let mut parent = vec![usize::MAX; self.nodes];
        let mut order = Vec::with_capacity(self.nodes);
        let mut stack = vec![0];
        parent[0] = 0;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &(y, _) in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut below: Vec<VertexSet> = vec![VertexSet::new(); self.nodes];
        for &x in order.iter().rev() {
            if let Some(&v) = labels.get(&x) {
                below[x].insert(v);
            }
            if x != 0 {
                let set = std::mem::take(&mut below[x]);
                let p = parent[x];
                below[p] = below[p].union(&set);
                below[x] = set;
            }
        }
        let all = self.vertices();
        self.tree_edges
            .iter()
            .enumerate()
            .map(|(e, &[a, b])| {
                let child = if parent[b] == a && b != 0 { b } else { a };
                let side = if a.min(b) == child { below[child].clone() } else { all.difference(&below[child]) };
                (e, side)
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let labels = self.node_labels();
        let mut out = String::from("graph T {\n");
        for x in 0..self.nodes {
            match labels.get(&x) {
                Some(v) => {
                    let _ = writeln!(out, "  n{x} [label=\"{v}\", shape=box];");
                }
                None => {
                    let _ = writeln!(out, "  n{x} [label=\"\", shape=point];");
                }
            }
        }
        for &[a, b] in &self.tree_edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// A maximum induced matching: its size and the lexicographically smallest
/// optimal edge list, each edge written `(smaller id, larger id)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMatching {
    pub size: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub tree_edge: usize,
    pub side_a: VertexSet,
    pub mim_value: usize,
    pub matching_witness: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub width: usize,
    pub cuts: Vec<CutReport>,
}

/// Maximum induced matching of `cut_graph`, which must only have edges
/// between `a` and its complement.
///
/// Reduces to a maximum independent set in the conflict graph on the cut
/// edges: two edges conflict when they share an end or a graph edge joins
/// their ends.
pub fn max_induced_matching_bipartite(cut_graph: &Graph, a: &VertexSet) -> Result<InducedMatching> {
    let side = cut_graph.side_mask(a)?;
    if let Some((i, j)) = cut_graph.edges_idx().into_iter().find(|&(i, j)| side.contains(i) == side.contains(j)) {
        return Err(Error::Invalid(format!(
            "edge {}-{} does not cross the cut",
            cut_graph.id(i),
            cut_graph.id(j)
        )));
    }
    Ok(induced_matching_across(cut_graph, &side))
}

/// `cutmim_g(a, V(g) \ a)` with its witness.
pub fn cutmim(g: &Graph, a: &VertexSet) -> Result<InducedMatching> {
    let side = g.side_mask(a)?;
    Ok(induced_matching_across(g, &side))
}

/// Maximum induced matching among the edges of `g` crossing `side`.
pub(crate) fn induced_matching_across(g: &Graph, side: &FixedBitSet) -> InducedMatching {
    let cut: Vec<(usize, usize)> =
        g.edges_idx().into_iter().filter(|&(i, j)| side.contains(i) != side.contains(j)).collect();
    let m = cut.len();
    if m == 0 {
        return InducedMatching { size: 0, edges: Vec::new() };
    }
    let compatible = |e: (usize, usize), f: (usize, usize)| {
        let (a, b) = e;
        let (c, d) = f;
        a != c && a != d && b != c && b != d && !cross_adjacent(g, side, a, c) && !cross_adjacent(g, side, a, d)
            && !cross_adjacent(g, side, b, c) && !cross_adjacent(g, side, b, d)
    };
    let mut compat = vec![FixedBitSet::with_capacity(m); m];
    for x in 0..m {
        for y in x + 1..m {
            if compatible(cut[x], cut[y]) {
                compat[x].insert(y);
                compat[y].insert(x);
            }
        }
    }
    let mut cand = FixedBitSet::with_capacity(m);
    cand.insert_range(..);
    let size = search::max_clique(&compat, &cand);

    // cut is sorted by (smaller index, larger index), which matches id order
    let mut chosen = Vec::with_capacity(size);
    for x in 0..m {
        if chosen.len() == size {
            break;
        }
        if !cand.contains(x) {
            continue;
        }
        let mut next = cand.clone();
        next.intersect_with(&compat[x]);
        next.set_range(..x + 1, false);
        if chosen.len() + 1 + search::max_clique(&compat, &next) >= size {
            chosen.push(x);
            cand = next;
        } else {
            cand.set(x, false);
        }
    }
    let edges = chosen.into_iter().map(|x| (g.id(cut[x].0), g.id(cut[x].1))).collect();
    InducedMatching { size, edges }
}

// Only edges across the cut count when checking that a matching is induced.
#[inline]
fn cross_adjacent(g: &Graph, side: &FixedBitSet, u: usize, v: usize) -> bool {
    side.contains(u) != side.contains(v) && g.adjacent_idx(u, v)
}

/// Width of `bd` on `g` with a report for every tree edge.
pub fn mimw_of(bd: &BranchDecomposition, g: &Graph) -> Result<WidthReport> {
    bd.validate(g)?;
    let cuts: Vec<CutReport> = bd
        .cuts()
        .into_par_iter()
        .map(|(tree_edge, side_a)| {
            let side = g.side_mask(&side_a).expect("validated leaf map");
            let mim = induced_matching_across(g, &side);
            CutReport { tree_edge, side_a, mim_value: mim.size, matching_witness: mim.edges }
        })
        .collect();
    let width = cuts.iter().map(|c| c.mim_value).max().unwrap_or(0);
    Ok(WidthReport { width, cuts })
}

/// Exact mim-width by enumerating every leaf-labelled tree whose internal
/// nodes all have degree 3, built by inserting vertices one at a time into
/// every edge of the current tree.
///
/// A partially built tree restricts to the subgraph on the vertices inserted
/// so far and its width can only grow as vertices are added, so branches
/// already at least as wide as the best complete tree are cut off.
pub fn exact_mimw(g: &Graph, max_n: usize) -> Result<(usize, BranchDecomposition)> {
    let n = g.n();
    if n > max_n {
        return Err(Error::TooLarge { n, limit: max_n });
    }
    if n > 63 {
        return Err(Error::TooLarge { n, limit: 63 });
    }
    match n {
        0 => return Ok((0, BranchDecomposition::empty())),
        1 => return Ok((0, BranchDecomposition::single(g.id(0)))),
        2 => {
            let bd = BranchDecomposition::caterpillar(g.ids());
            let w = usize::from(g.m() > 0);
            return Ok((w, bd));
        }
        _ => {}
    }
    let mut search = TreeSearch {
        g,
        n,
        memo: HashMap::new(),
        best: usize::MAX,
        best_edges: Vec::new(),
        floor: usize::from(g.m() > 0),
    };
    // rooted at leaf 0; internal nodes are numbered from n
    let centre = n;
    let start = vec![
        TreeEdge { upper: 0, lower: centre, below: 0b110 },
        TreeEdge { upper: centre, lower: 1, below: 0b010 },
        TreeEdge { upper: centre, lower: 2, below: 0b100 },
    ];
    search.descend(start, 3);
    let tree_edges = search.best_edges.iter().map(|e| [e.upper, e.lower]).collect();
    let leaf_map = g.ids().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Ok((search.best, BranchDecomposition { nodes: 2 * n - 2, tree_edges, leaf_map }))
}

#[derive(Clone, Copy, Debug)]
struct TreeEdge {
    upper: usize,
    lower: usize,
    /// vertex indices below the edge, rooted at leaf 0
    below: u64,
}

struct TreeSearch<'a> {
    g: &'a Graph,
    n: usize,
    memo: HashMap<(u64, usize), usize>,
    best: usize,
    best_edges: Vec<TreeEdge>,
    floor: usize,
}

impl TreeSearch<'_> {
    /// `placed` vertices `0..placed` are already leaves of `edges`.
    fn descend(&mut self, edges: Vec<TreeEdge>, placed: usize) {
        let width = edges.iter().map(|e| self.cut_value(e.below, placed)).max().unwrap_or(0);
        if width >= self.best {
            return;
        }
        if placed == self.n {
            self.best = width;
            self.best_edges = edges;
            return;
        }
        let v = placed;
        let node = self.n + placed - 2;
        for k in 0..edges.len() {
            let target = edges[k];
            let mut next = edges.clone();
            for e in next.iter_mut() {
                if e.below & target.below == target.below {
                    e.below |= 1 << v;
                }
            }
            next[k].lower = node;
            next.push(TreeEdge { upper: node, lower: target.lower, below: target.below });
            next.push(TreeEdge { upper: node, lower: v, below: 1 << v });
            self.descend(next, placed + 1);
            if self.best <= self.floor {
                return;
            }
        }
    }

    fn cut_value(&mut self, below: u64, placed: usize) -> usize {
        let g = self.g;
        *self.memo.entry((below, placed)).or_insert_with(|| {
            let idx: Vec<usize> = (0..placed).collect();
            let sub = g.induced_on_indices(&idx);
            let mut side = FixedBitSet::with_capacity(placed);
            for i in 0..placed {
                if below >> i & 1 == 1 {
                    side.insert(i);
                }
            }
            induced_matching_across(&sub, &side).size
        })
    }
}
