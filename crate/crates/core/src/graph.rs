//! Simple undirected graphs over small integer vertex ids.
//!
//! A [`Graph`] keeps its vertex ids in ascending order and stores adjacency
//! both as sorted neighbour lists and as a dense bit matrix, indexed by the
//! position of a vertex in that order. Every traversal follows ascending id
//! order, so every algorithm built on top of it is deterministic.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An ordered set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().copied().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(vs: [Vertex; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(vs: Vec<Vertex>) -> Self {
        vs.into_iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simple undirected graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<Vertex>,
    nbrs: Vec<Vec<usize>>,
    adj: Vec<FixedBitSet>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty()
    }
}

impl Graph {
    /// The graph with no vertices.
    pub fn empty() -> Graph {
        Graph { ids: Vec::new(), nbrs: Vec::new(), adj: Vec::new() }
    }

    /// Edgeless graph on `0..n`.
    pub fn edgeless(n: usize) -> Graph {
        Graph::new(0..n as Vertex, std::iter::empty()).expect("edgeless graph is valid")
    }

    /// Graph on vertex ids `0..n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        Graph::new(0..n as Vertex, edges.iter().copied())
    }

    /// Builds a graph from explicit vertex ids and an edge list.
    ///
    /// Rejects self-loops, repeated edges, repeated ids and edges whose
    /// endpoints are not listed.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut ids: Vec<Vertex> = vertices.into_iter().collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        let n = ids.len();
        let mut nbrs = vec![Vec::new(); n];
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let i = ids.binary_search(&u).map_err(|_| Error::UnknownVertex(u))?;
            let j = ids.binary_search(&v).map_err(|_| Error::UnknownVertex(v))?;
            if adj[i].contains(j) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[i].insert(j);
            adj[j].insert(i);
            nbrs[i].push(j);
            nbrs[j].push(i);
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Ok(Graph { ids, nbrs, adj })
    }

    /// Builds the subgraph on the given vertex indices (ascending), keeping ids.
    pub(crate) fn induced_on_indices(&self, idx: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (k, &i) in idx.iter().enumerate() {
            local[i] = k;
        }
        let n = idx.len();
        let ids = idx.iter().map(|&i| self.ids[i]).collect();
        let mut nbrs = vec![Vec::new(); n];
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (k, &i) in idx.iter().enumerate() {
            for &j in &self.nbrs[i] {
                let l = local[j];
                if l != usize::MAX {
                    nbrs[k].push(l);
                    adj[k].insert(l);
                }
            }
        }
        Graph { ids, nbrs, adj }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex ids in ascending order.
    pub fn ids(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> Vertex {
        self.ids[index]
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub(crate) fn require_index(&self, v: Vertex) -> Result<usize> {
        self.index_of(v).ok_or(Error::UnknownVertex(v))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.ids.iter().copied().collect()
    }

    /// Largest id plus one, or 0 for the empty graph.
    pub fn id_bound(&self) -> Vertex {
        self.ids.last().map_or(0, |&v| v + 1)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i].contains(j),
            _ => false,
        }
    }

    #[inline]
    pub fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    #[inline]
    pub fn neighbors_idx(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub(crate) fn adjacency_row(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let list: &[usize] = match self.index_of(v) {
            Some(i) => &self.nbrs[i],
            None => &[],
        };
        list.iter().map(move |&j| self.ids[j])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.index_of(v).map_or(0, |i| self.nbrs[i].len())
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges_idx().into_iter().map(|(i, j)| (self.ids[i], self.ids[j])).collect()
    }

    pub(crate) fn edges_idx(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (i, list) in self.nbrs.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    fn indices_of(&self, s: &VertexSet) -> Result<Vec<usize>> {
        s.iter().map(|v| self.require_index(v)).collect()
    }

    /// The subgraph induced by `s`, with vertex ids preserved.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        let idx = self.indices_of(s)?;
        Ok(self.induced_on_indices(&idx))
    }

    /// The bipartite graph on all of `V(g)` keeping only the edges with
    /// exactly one end in `a`.
    pub fn cut_bipartite(&self, a: &VertexSet) -> Result<Graph> {
        let side = self.side_mask(a)?;
        let edges = self
            .edges_idx()
            .into_iter()
            .filter(|&(i, j)| side.contains(i) != side.contains(j))
            .map(|(i, j)| (self.ids[i], self.ids[j]));
        Graph::new(self.ids.iter().copied(), edges)
    }

    pub(crate) fn side_mask(&self, a: &VertexSet) -> Result<FixedBitSet> {
        let mut side = FixedBitSet::with_capacity(self.n());
        for v in a {
            side.insert(self.require_index(v)?);
        }
        Ok(side)
    }

    /// Connected components, each listed once, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.component_indices()
            .into_iter()
            .map(|comp| comp.into_iter().map(|i| self.ids[i]).collect())
            .collect()
    }

    pub(crate) fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.nbrs[u] {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    /// True iff every vertex is in `d` or has a neighbour in `d`.
    pub fn is_dominating(&self, d: &VertexSet) -> Result<bool> {
        let inside = self.side_mask(d)?;
        Ok((0..self.n()).all(|i| inside.contains(i) || self.nbrs[i].iter().any(|&j| inside.contains(j))))
    }

    /// Union of graphs with pairwise disjoint id sets.
    pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for g in gs {
            for &v in g.ids() {
                if !seen.insert(v) {
                    return Err(Error::DuplicateVertex(v));
                }
            }
        }
        let edges: Vec<_> = gs.iter().flat_map(|g| g.edges()).collect();
        Graph::new(seen, edges)
    }

    /// Union of graphs after relabelling: the vertices of `gs[0]` become
    /// `0..n0`, the next graph follows on, each in ascending id order.
    pub fn disjoint_union_relabelled(gs: &[Graph]) -> Graph {
        let mut offset = 0 as Vertex;
        let mut edges = Vec::new();
        for g in gs {
            edges.extend(g.edges_idx().into_iter().map(|(i, j)| (offset + i as Vertex, offset + j as Vertex)));
            offset += g.n() as Vertex;
        }
        Graph::from_edges(offset as usize, &edges).expect("relabelled union is valid")
    }

    /// Same vertices, plus the edge `uv`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        let mut edges = self.edges();
        edges.push((u, v));
        Graph::new(self.ids.iter().copied(), edges)
    }

    /// Same vertices, minus the edge `uv` (no-op if absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let (a, b) = (u.min(v), u.max(v));
        let edges = self.edges().into_iter().filter(|&e| e != (a, b));
        Graph::new(self.ids.iter().copied(), edges).expect("edge removal keeps graph valid")
    }

    /// Same graph with additional isolated vertices.
    pub fn with_vertices(&self, extra: impl IntoIterator<Item = Vertex>) -> Result<Graph> {
        Graph::new(self.ids.iter().copied().chain(extra), self.edges())
    }

    /// Relabels vertices to `0..n` preserving order.
    pub fn canonical(&self) -> Graph {
        Graph::from_edges(self.n(), &self.edges_idx().into_iter().map(|(i, j)| (i as Vertex, j as Vertex)).collect::<Vec<_>>())
            .expect("canonical relabelling is valid")
    }

    /// Sorted degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.nbrs.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}
