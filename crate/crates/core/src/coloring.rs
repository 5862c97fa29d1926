//! List colouring: the reduction from List k-Colouring to k-Colouring by
//! adding a k-clique, plus an exact backtracking solver used as the oracle.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::decomp;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pattern;

pub type Colour = u32;

/// Allowed colours per vertex, all within `1..=k`.
///
/// JSON: `{"k": 3, "lists": {"0": [1, 2], ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    pub k: Colour,
    pub lists: BTreeMap<Vertex, BTreeSet<Colour>>,
}

impl ListAssignment {
    /// Every vertex may take every colour.
    pub fn full(g: &Graph, k: Colour) -> Self {
        let all: BTreeSet<Colour> = (1..=k).collect();
        ListAssignment { k, lists: g.ids().iter().map(|&v| (v, all.clone())).collect() }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        for &v in g.ids() {
            let list = self.lists.get(&v).ok_or_else(|| Error::Invalid(format!("vertex {v} has no list")))?;
            if let Some(c) = list.iter().find(|&&c| c == 0 || c > self.k) {
                return Err(Error::Invalid(format!("colour {c} of vertex {v} outside 1..={}", self.k)));
            }
        }
        if let Some(v) = self.lists.keys().find(|&&v| !g.contains(v)) {
            return Err(Error::UnknownVertex(*v));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub assignment: BTreeMap<Vertex, Colour>,
}

impl Colouring {
    /// Total, proper, and within the lists when given.
    pub fn is_valid(&self, g: &Graph, lists: Option<&ListAssignment>) -> bool {
        let total = self.assignment.len() == g.n() && g.ids().iter().all(|v| self.assignment.contains_key(v));
        let proper = g.edges().iter().all(|(u, v)| self.assignment.get(u) != self.assignment.get(v));
        let listed = lists.is_none_or(|la| {
            self.assignment.iter().all(|(v, c)| la.lists.get(v).is_some_and(|l| l.contains(c)))
        });
        total && proper && listed
    }
}

/// The reduced instance and which new vertex stands for which colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    pub clique: BTreeMap<Vertex, Colour>,
}

/// `G'`: `g` plus new pairwise adjacent vertices `u_1..u_k`, with `u_i`
/// adjacent to `v` exactly when colour `i` is missing from `v`'s list. The
/// new ids follow the largest id of `g`.
pub fn kwon_reduce(g: &Graph, la: &ListAssignment) -> Result<Reduction> {
    la.validate(g)?;
    let base = g.id_bound();
    let clique: BTreeMap<Vertex, Colour> = (1..=la.k).map(|i| (base + i - 1, i)).collect();
    let mut edges = g.edges();
    let new: Vec<Vertex> = clique.keys().copied().collect();
    for (a, &ua) in new.iter().enumerate() {
        edges.extend(new[a + 1..].iter().map(|&ub| (ua, ub)));
    }
    for (&u, &colour) in &clique {
        for &v in g.ids() {
            if !la.lists[&v].contains(&colour) {
                edges.push((v, u));
            }
        }
    }
    let graph = Graph::new(g.ids().iter().copied().chain(new), edges)?;
    Ok(Reduction { graph, clique })
}

/// Exact list colouring by backtracking with forward checking. Vertices
/// are coloured in ascending id order, colours tried lowest first.
pub fn solve_list_colouring(g: &Graph, la: &ListAssignment) -> Result<Option<Colouring>> {
    la.validate(g)?;
    let n = g.n();
    let mut domains: Vec<BTreeSet<Colour>> = g.ids().iter().map(|v| la.lists[v].clone()).collect();
    let mut colour = vec![0; n];
    if !assign(g, 0, &mut domains, &mut colour) {
        return Ok(None);
    }
    Ok(Some(Colouring { assignment: g.ids().iter().copied().zip(colour).collect() }))
}

pub fn solve_k_colouring(g: &Graph, k: Colour) -> Result<Option<Colouring>> {
    solve_list_colouring(g, &ListAssignment::full(g, k))
}

fn assign(g: &Graph, v: usize, domains: &mut [BTreeSet<Colour>], colour: &mut [Colour]) -> bool {
    if v == g.n() {
        return true;
    }
    let options: Vec<Colour> = domains[v].iter().copied().collect();
    for c in options {
        let mut pruned = Vec::new();
        let mut wiped = false;
        for &w in g.neighbors_idx(v) {
            if w > v && domains[w].remove(&c) {
                pruned.push(w);
                if domains[w].is_empty() {
                    wiped = true;
                }
            }
        }
        if !wiped {
            colour[v] = c;
            if assign(g, v + 1, domains, colour) {
                return true;
            }
        }
        for w in pruned {
            domains[w].insert(c);
        }
    }
    false
}

/// `g` is `K_{k+1}`-free; failing this rules out a k-colouring.
pub fn guard_clique(g: &Graph, k: usize) -> bool {
    !pattern::contains_pattern(g, pattern::Pattern::Clique(k + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub k: Colour,
    pub original: usize,
    pub reduced: usize,
    /// `reduced ≤ original + k`
    pub holds: bool,
}

/// Exact mim-width of `g` and of its reduction, compared.
pub fn check_mimw_transfer(g: &Graph, la: &ListAssignment, limit: usize) -> Result<TransferReport> {
    let reduction = kwon_reduce(g, la)?;
    let (original, _) = decomp::exact_mimw(g, limit)?;
    let (reduced, _) = decomp::exact_mimw(&reduction.graph, limit)?;
    Ok(TransferReport { k: la.k, original, reduced, holds: reduced <= original + la.k as usize })
}
