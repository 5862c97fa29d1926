//! Gluing branch decompositions of the parts of a vertex partition into one
//! decomposition of the whole graph, and re-attaching a small vertex set.
//!
//! Every construction returns a [`WidthCertificate`] alongside the tree. A
//! certificate is a derivation tree whose nodes record which bound rule was
//! applied and its inputs, so the final bound can be rechecked from the
//! arithmetic alone.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decomp::{self, BranchDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// empty graph, bound 0
    Empty,
    /// leaf whose bound was measured on a concrete decomposition
    Measured,
    /// `max{c⌊p²/4⌋, max child + c(p−1)}` over `p` parts with pairwise cross cap `c`
    Glue,
    /// glue of connected components, `c = 0`
    Components,
    /// one child of bound `k` plus `p` re-attached vertices: `max{k+p, p+1}`
    Attach,
    /// caterpillar on `p` vertices only: `max{p−1, 0}`
    Caterpillar,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("rule serializes");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthCertificate {
    pub rule: Rule,
    pub bound: usize,
    pub c: usize,
    pub p: usize,
    pub children: Vec<WidthCertificate>,
}

/// `max{c⌊(p/2)²⌋, max_child + c(p−1)}`.
pub fn glue_bound(c: usize, p: usize, max_child: usize) -> usize {
    (c * (p * p / 4)).max(max_child + c * p.saturating_sub(1))
}

/// `max{k + p, p + 1}`.
pub fn attach_bound(k: usize, p: usize) -> usize {
    (k + p).max(p + 1)
}

impl WidthCertificate {
    pub fn empty() -> Self {
        WidthCertificate { rule: Rule::Empty, bound: 0, c: 0, p: 0, children: Vec::new() }
    }

    pub fn measured(width: usize) -> Self {
        WidthCertificate { rule: Rule::Measured, bound: width, c: 0, p: 0, children: Vec::new() }
    }

    pub fn caterpillar(p: usize) -> Self {
        WidthCertificate { rule: Rule::Caterpillar, bound: p.saturating_sub(1), c: 0, p, children: Vec::new() }
    }

    pub fn glue(c: usize, children: Vec<WidthCertificate>) -> Self {
        Self::glue_with(Rule::Glue, c, children)
    }

    pub fn components(children: Vec<WidthCertificate>) -> Self {
        Self::glue_with(Rule::Components, 0, children)
    }

    fn glue_with(rule: Rule, c: usize, children: Vec<WidthCertificate>) -> Self {
        let p = children.len();
        let max_child = children.iter().map(|ch| ch.bound).max().unwrap_or(0);
        WidthCertificate { rule, bound: glue_bound(c, p, max_child), c, p, children }
    }

    pub fn attach(p: usize, child: WidthCertificate) -> Self {
        WidthCertificate { rule: Rule::Attach, bound: attach_bound(child.bound, p), c: 0, p, children: vec![child] }
    }

    /// Recomputes every bound bottom-up and checks it against the stored
    /// value. Returns the root bound.
    pub fn recompute(&self) -> Result<usize> {
        let child_bounds = self.children.iter().map(WidthCertificate::recompute).collect::<Result<Vec<_>>>()?;
        let bad = |msg: String| Err(Error::InvalidCertificate(format!("{} node: {msg}", self.rule)));
        let expected = match self.rule {
            Rule::Empty | Rule::Measured | Rule::Caterpillar if !self.children.is_empty() => {
                return bad("leaf rule has children".into())
            }
            Rule::Empty => 0,
            Rule::Measured => self.bound,
            Rule::Caterpillar => self.p.saturating_sub(1),
            Rule::Glue | Rule::Components => {
                if self.children.len() != self.p || self.p < 2 {
                    return bad(format!("p = {} with {} children", self.p, self.children.len()));
                }
                if self.rule == Rule::Components && self.c != 0 {
                    return bad(format!("components glued with c = {}", self.c));
                }
                glue_bound(self.c, self.p, child_bounds.iter().copied().max().unwrap_or(0))
            }
            Rule::Attach => {
                if child_bounds.len() != 1 || self.p == 0 {
                    return bad(format!("needs one child and p ≥ 1, has {} children, p = {}", child_bounds.len(), self.p));
                }
                attach_bound(child_bounds[0], self.p)
            }
        };
        if expected != self.bound {
            return bad(format!("stored bound {} but rule gives {expected}", self.bound));
        }
        Ok(expected)
    }
}

/// One part of a vertex partition with its own decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub vertices: VertexSet,
    pub decomposition: BranchDecomposition,
    pub certificate: WidthCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedDecomposition {
    pub parts: Vec<Part>,
    pub cross_cap: usize,
}

/// Glues the parts' decompositions into one for `g`.
///
/// The parts hang off a caterpillar with one leaf `ℓ_i` per part. For each
/// part, the leaf of its tree holding the smallest vertex is merged into
/// `ℓ_i` and that vertex moves to a new pendant leaf at `ℓ_i`. A part with a
/// single vertex puts that vertex on `ℓ_i` directly.
pub fn glue(g: &Graph, pd: &PartitionedDecomposition) -> Result<(BranchDecomposition, WidthCertificate)> {
    glue_rule(g, pd, Rule::Glue)
}

pub(crate) fn glue_rule(
    g: &Graph,
    pd: &PartitionedDecomposition,
    rule: Rule,
) -> Result<(BranchDecomposition, WidthCertificate)> {
    check_partition(g, pd)?;
    let p = pd.parts.len();
    if p == 1 {
        let part = &pd.parts[0];
        return Ok((part.decomposition.clone(), part.certificate.clone()));
    }

    // T_0: a caterpillar on leaves 0..p, spine nodes from p upwards
    let placeholders: Vec<Vertex> = (0..p as Vertex).collect();
    let t0 = BranchDecomposition::caterpillar(&placeholders);
    let mut nodes = t0.nodes;
    let mut tree_edges = t0.tree_edges;
    let mut leaf_map = BTreeMap::new();

    for (i, part) in pd.parts.iter().enumerate() {
        let ti = &part.decomposition;
        let (&lowest, &vi) = ti.leaf_map.iter().next().expect("parts are nonempty");
        if ti.nodes == 1 {
            leaf_map.insert(lowest, i);
            continue;
        }
        let mut remap = vec![0; ti.nodes];
        for (x, slot) in remap.iter_mut().enumerate() {
            if x == vi {
                *slot = i;
            } else {
                *slot = nodes;
                nodes += 1;
            }
        }
        tree_edges.extend(ti.tree_edges.iter().map(|&[a, b]| [remap[a], remap[b]]));
        for (&v, &x) in &ti.leaf_map {
            if v != lowest {
                leaf_map.insert(v, remap[x]);
            }
        }
        let pendant = nodes;
        nodes += 1;
        tree_edges.push([i, pendant]);
        leaf_map.insert(lowest, pendant);
    }

    let bd = BranchDecomposition { nodes, tree_edges, leaf_map };
    let children = pd.parts.iter().map(|part| part.certificate.clone()).collect();
    let cert = match rule {
        Rule::Components => WidthCertificate::components(children),
        _ => WidthCertificate::glue(pd.cross_cap, children),
    };
    Ok((bd, cert))
}

fn check_partition(g: &Graph, pd: &PartitionedDecomposition) -> Result<()> {
    if pd.parts.is_empty() {
        return Err(Error::Invalid("cannot glue zero parts".into()));
    }
    let mut covered = VertexSet::new();
    for (i, part) in pd.parts.iter().enumerate() {
        if part.vertices.is_empty() {
            return Err(Error::Invalid(format!("part {i} is empty")));
        }
        if !part.vertices.is_disjoint(&covered) {
            return Err(Error::Invalid(format!("part {i} overlaps an earlier part")));
        }
        covered = covered.union(&part.vertices);
        let sub = g.induced_subgraph(&part.vertices)?;
        part.decomposition
            .validate(&sub)
            .map_err(|e| Error::InvalidDecomposition(format!("part {i}: {e}")))?;
    }
    if covered != g.vertex_set() {
        return Err(Error::Invalid("parts do not cover the graph".into()));
    }
    Ok(())
}

/// `cutmim_g(X_i, X_j)` for every pair `i < j`.
pub fn cross_caps(g: &Graph, parts: &[VertexSet]) -> Result<Vec<((usize, usize), usize)>> {
    for (i, a) in parts.iter().enumerate() {
        if parts[..i].iter().any(|b| !a.is_disjoint(b)) {
            return Err(Error::Invalid(format!("part {i} overlaps an earlier part")));
        }
    }
    let mut out = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let pair = g.induced_subgraph(&parts[i].union(&parts[j]))?;
            out.push(((i, j), decomp::cutmim(&pair, &parts[i])?.size));
        }
    }
    Ok(out)
}

/// Largest pairwise cross cut value; 0 for fewer than two parts.
pub fn measure_cross_cap(g: &Graph, parts: &[VertexSet]) -> Result<usize> {
    Ok(cross_caps(g, parts)?.into_iter().map(|(_, c)| c).max().unwrap_or(0))
}

/// Extends a decomposition of `g - d` to one of `g`.
///
/// A caterpillar with `|d| + 2` leaves is joined to the tree of `rest` by
/// merging its first leaf into the leaf of `rest` holding the smallest
/// vertex; that vertex moves to the caterpillar's second leaf and `d`
/// fills the remaining leaves in ascending order.
pub fn attach_dominators(
    g: &Graph,
    rest: &BranchDecomposition,
    rest_cert: &WidthCertificate,
    d: &VertexSet,
) -> Result<(BranchDecomposition, WidthCertificate)> {
    if d.is_empty() {
        return Err(Error::Invalid("no vertices to attach".into()));
    }
    let remaining = g.vertex_set().difference(d);
    if remaining.len() + d.len() != g.n() {
        return Err(Error::Invalid("attached set is not inside the graph".into()));
    }
    let rest_graph = g.induced_subgraph(&remaining)?;
    rest.validate(&rest_graph)?;
    let p = d.len();
    let dominators = d.to_vec();

    if remaining.is_empty() {
        return Ok((BranchDecomposition::caterpillar(&dominators), WidthCertificate::caterpillar(p)));
    }
    let cert = WidthCertificate::attach(p, rest_cert.clone());
    let (&lowest, &x) = rest.leaf_map.iter().next().expect("rest is nonempty");
    if rest.nodes == 1 {
        let order: Vec<Vertex> = std::iter::once(lowest).chain(dominators).collect();
        return Ok((BranchDecomposition::caterpillar(&order), cert));
    }

    // S leaves: 0 joins the rest tree, 1 takes the displaced vertex, 2.. take d
    let mut s_order = vec![0, 0];
    s_order.extend(dominators.iter().copied());
    let placeholders: Vec<Vertex> = (0..s_order.len() as Vertex).collect();
    let s = BranchDecomposition::caterpillar(&placeholders);
    let base = rest.nodes;
    let node = |y: usize| if y == 0 { x } else { base + y - 1 };

    let mut tree_edges = rest.tree_edges.clone();
    tree_edges.extend(s.tree_edges.iter().map(|&[a, b]| [node(a), node(b)]));
    let mut leaf_map = rest.leaf_map.clone();
    leaf_map.insert(lowest, node(1));
    for (k, &v) in dominators.iter().enumerate() {
        leaf_map.insert(v, node(k + 2));
    }
    let bd = BranchDecomposition { nodes: base + s.nodes - 1, tree_edges, leaf_map };
    Ok((bd, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::mimw_of;
    use crate::pattern::{complete, path};

    fn part(g: &Graph, vs: &[Vertex]) -> Part {
        let decomposition = BranchDecomposition::caterpillar(vs);
        let sub = g.induced_subgraph(&VertexSet::from(vs.to_vec())).unwrap();
        let w = mimw_of(&decomposition, &sub).unwrap().width;
        Part { vertices: VertexSet::from(vs.to_vec()), decomposition, certificate: WidthCertificate::measured(w) }
    }

    #[test]
    fn glue_bound_examples() {
        assert_eq!(glue_bound(1, 2, 0), 1);
        assert_eq!(glue_bound(2, 4, 3), 9);
        assert_eq!(glue_bound(0, 3, 2), 2);
        let cert = WidthCertificate::glue(
            2,
            vec![3, 1, 0, 2].into_iter().map(WidthCertificate::measured).collect(),
        );
        assert_eq!(cert.bound, 9);
        assert_eq!(cert.recompute().unwrap(), 9);
    }

    #[test]
    fn attach_bound_examples() {
        assert_eq!(attach_bound(2, 3), 5);
        assert_eq!(attach_bound(0, 1), 2);
        assert_eq!(WidthCertificate::attach(3, WidthCertificate::measured(2)).bound, 5);
    }

    #[test]
    fn glue_two_paths() {
        // P6 split into two halves
        let g = path(6);
        let pd = PartitionedDecomposition { parts: vec![part(&g, &[0, 1, 2]), part(&g, &[3, 4, 5])], cross_cap: 1 };
        let (bd, cert) = glue(&g, &pd).unwrap();
        bd.validate(&g).unwrap();
        assert!(mimw_of(&bd, &g).unwrap().width <= cert.bound);
        assert_eq!(cert.bound, glue_bound(1, 2, 1));
    }

    #[test]
    fn glue_single_vertex_parts() {
        let g = complete(4);
        let parts = (0..4).map(|v| part(&g, &[v])).collect();
        let pd = PartitionedDecomposition { parts, cross_cap: 1 };
        let (bd, cert) = glue(&g, &pd).unwrap();
        bd.validate(&g).unwrap();
        assert_eq!(bd, BranchDecomposition::caterpillar(&[0, 1, 2, 3]));
        assert!(mimw_of(&bd, &g).unwrap().width <= cert.bound);
    }

    #[test]
    fn glue_one_part_is_identity() {
        let g = path(4);
        let only = part(&g, &[0, 1, 2, 3]);
        let pd = PartitionedDecomposition { parts: vec![only.clone()], cross_cap: 0 };
        let (bd, cert) = glue(&g, &pd).unwrap();
        assert_eq!(bd, only.decomposition);
        assert_eq!(cert, only.certificate);
    }

    #[test]
    fn glue_rejects_bad_partitions() {
        let g = path(4);
        let pd = PartitionedDecomposition { parts: vec![part(&g, &[0, 1]), part(&g, &[1, 2, 3])], cross_cap: 1 };
        assert!(glue(&g, &pd).is_err());
        let pd = PartitionedDecomposition { parts: vec![part(&g, &[0, 1])], cross_cap: 1 };
        assert!(glue(&g, &pd).is_err());
        let mut bad = part(&g, &[2, 3]);
        bad.decomposition.leaf_map.remove(&3);
        let pd = PartitionedDecomposition { parts: vec![part(&g, &[0, 1]), bad], cross_cap: 1 };
        assert!(matches!(glue(&g, &pd), Err(Error::InvalidDecomposition(_))));
        assert!(glue(&g, &PartitionedDecomposition { parts: vec![], cross_cap: 0 }).is_err());
    }

    #[test]
    fn cross_cap_examples() {
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert_eq!(measure_cross_cap(&k33, &[VertexSet::from([0, 1, 2]), VertexSet::from([3, 4, 5])]).unwrap(), 1);
        let three_k2 = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(measure_cross_cap(&three_k2, &[VertexSet::from([0, 2, 4]), VertexSet::from([1, 3, 5])]).unwrap(), 3);
        let two_p3 = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(measure_cross_cap(&two_p3, &two_p3.components()).unwrap(), 0);
        assert_eq!(measure_cross_cap(&two_p3, &[two_p3.vertex_set()]).unwrap(), 0);
    }

    #[test]
    fn attach_smallest_case() {
        let g = complete(2);
        let rest = BranchDecomposition::single(1);
        let (bd, cert) = attach_dominators(&g, &rest, &WidthCertificate::measured(0), &VertexSet::from([0])).unwrap();
        bd.validate(&g).unwrap();
        assert_eq!(bd.tree_edges.len(), 1);
        assert_eq!(mimw_of(&bd, &g).unwrap().width, 1);
        assert_eq!(cert.bound, 2);
    }

    #[test]
    fn attach_to_larger_tree() {
        let g = path(6);
        let d = VertexSet::from([1, 4]);
        let rest_vs = [0, 2, 3, 5];
        let rest = BranchDecomposition::caterpillar(&rest_vs);
        let rest_graph = g.induced_subgraph(&VertexSet::from(rest_vs.to_vec())).unwrap();
        let k = mimw_of(&rest, &rest_graph).unwrap().width;
        let (bd, cert) = attach_dominators(&g, &rest, &WidthCertificate::measured(k), &d).unwrap();
        bd.validate(&g).unwrap();
        assert!(mimw_of(&bd, &g).unwrap().width <= cert.bound);
        assert_eq!(cert.recompute().unwrap(), attach_bound(k, 2));
    }

    #[test]
    fn attach_edgeless_and_all_dominators() {
        let g = Graph::edgeless(5);
        let rest = BranchDecomposition::caterpillar(&[0, 3, 4]);
        let (bd, _) = attach_dominators(&g, &rest, &WidthCertificate::measured(0), &VertexSet::from([1, 2])).unwrap();
        assert_eq!(mimw_of(&bd, &g).unwrap().width, 0);

        let c5 = crate::pattern::Pattern::Cycle(5).graph();
        let (bd, cert) =
            attach_dominators(&c5, &BranchDecomposition::empty(), &WidthCertificate::empty(), &c5.vertex_set()).unwrap();
        bd.validate(&c5).unwrap();
        assert_eq!(cert.rule, Rule::Caterpillar);
        assert_eq!(cert.bound, 4);
        assert!(mimw_of(&bd, &c5).unwrap().width <= cert.bound);
    }

    #[test]
    fn certificate_recheck_catches_tampering() {
        let mut cert = WidthCertificate::attach(
            2,
            WidthCertificate::glue(1, vec![WidthCertificate::measured(1), WidthCertificate::caterpillar(3)]),
        );
        assert_eq!(cert.recompute().unwrap(), 5);
        cert.children[0].bound = 1;
        assert!(matches!(cert.recompute(), Err(Error::InvalidCertificate(_))));

        let bogus = WidthCertificate { rule: Rule::Components, bound: 3, c: 1, p: 2, children: vec![
            WidthCertificate::measured(1),
            WidthCertificate::measured(1),
        ] };
        assert!(bogus.recompute().is_err());
    }

    #[test]
    fn certificate_json_layout() {
        let cert = WidthCertificate::attach(1, WidthCertificate::empty());
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"rule": "attach", "bound": 2, "c": 0, "p": 1, "children": [
                {"rule": "empty", "bound": 0, "c": 0, "p": 0, "children": []}
            ]})
        );
    }
}
