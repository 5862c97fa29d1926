//! Recursive construction of bounded-width branch decompositions for
//! `(K_t, sP1+P5)`-free graphs.
//!
//! For a connected member `G` with `t ≥ 2`:
//!
//! 1. find a small dominating set `D = (d_1, .., d_p)`;
//! 2. put each vertex outside `D` into the part `X_i` of the first `d_i`
//!    it is adjacent to;
//! 3. each `G[X_i]` is dominated by `d_i`, hence `K_{t-1}`-free, so recurse
//!    with `t - 1`;
//! 4. glue the parts' decompositions, with the largest pairwise cross cut
//!    value as the cap `c`;
//! 5. re-attach `D`.
//!
//! Disconnected graphs are decomposed component by component and glued
//! with `c = 0`. Certificates use the measured cross cap; the trace keeps
//! the Ramsey-type cap `R(t-1, R(t-1, s+2))` next to it.

use serde::{Deserialize, Serialize};

use crate::composer::{self, Part, PartitionedDecomposition, Rule, WidthCertificate};
use crate::decomp::{self, BranchDecomposition};
use crate::domfind::{self, DominatorKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::pattern::{self, ClassParams, Pattern, PatternWitness};

/// An upper bound on a Ramsey number. `saturated` is set when the true
/// bound does not fit and `value` was clamped to `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyBound {
    pub value: u64,
    pub saturated: bool,
}

impl RamseyBound {
    fn exact(value: u64) -> Self {
        RamseyBound { value, saturated: false }
    }

    fn clamped() -> Self {
        RamseyBound { value: u64::MAX, saturated: true }
    }
}

/// `R(p, q) ≤ C(p+q-2, p-1)`, the closed form of
/// `R(p, q) ≤ R(p-1, q) + R(p, q-1)` with `R(1, q) = R(p, 1) = 1`.
pub fn ramsey_upper(p: u64, q: u64) -> Result<RamseyBound> {
    if p == 0 || q == 0 {
        return Err(Error::Invalid("Ramsey arguments must be positive".into()));
    }
    let n = p - 1 + q - 1;
    let k = (p - 1).min(q - 1);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) / i stays integral at every step
        acc = match acc.checked_mul(n as u128 - k as u128 + i) {
            Some(x) => x / i,
            None => return Ok(RamseyBound::clamped()),
        };
        if acc > u64::MAX as u128 {
            return Ok(RamseyBound::clamped());
        }
    }
    Ok(RamseyBound::exact(acc as u64))
}

/// `R(t-1, R(t-1, s+2))`, the strict upper bound on `cutmim(X_i, X_j)`.
pub fn theoretical_cross_cap(params: ClassParams) -> Result<RamseyBound> {
    if params.t < 2 {
        return Err(Error::Invalid("the cross cap needs t ≥ 2".into()));
    }
    let k = params.t as u64 - 1;
    let inner = ramsey_upper(k, params.s as u64 + 2)?;
    if inner.saturated {
        return Ok(RamseyBound::clamped());
    }
    ramsey_upper(k, inner.value)
}

/// `X_i` = vertices outside `d` adjacent to `d[i]` but to no earlier
/// `d[h]`. Empty parts are kept so indices line up with `d`.
pub fn partition_by_dominators(g: &Graph, d: &[Vertex]) -> Result<Vec<VertexSet>> {
    let dset: VertexSet = d.iter().collect();
    if dset.len() != d.len() {
        return Err(Error::Invalid("dominator list has repeats".into()));
    }
    if !g.is_dominating(&dset)? {
        return Err(Error::Invalid(format!("{dset} does not dominate the graph")));
    }
    let mut parts = vec![VertexSet::new(); d.len()];
    for &v in g.ids() {
        if dset.contains(v) {
            continue;
        }
        let i = d.iter().position(|&di| g.adjacent(di, v)).expect("dominated");
        parts[i].insert(v);
    }
    Ok(parts)
}

/// Largest dominating set the construction may use at level `t`.
pub fn dominator_size_bound(params: ClassParams) -> usize {
    let p5_free = domfind::p5_free_bound(params.t);
    if params.s == 0 {
        p5_free
    } else {
        p5_free.max(params.s + 4)
    }
}

/// The bound obtained by unrolling the recursion with the largest possible
/// dominating set at each level and the Ramsey-type cross cap. No
/// certificate produced for the class can exceed it. Saturates.
pub fn certificate_ceiling(params: ClassParams) -> u64 {
    let mut bound: u64 = 0;
    for t in 2..=params.t {
        let level = ClassParams { s: params.s, t };
        let p = dominator_size_bound(level) as u64;
        let c = theoretical_cross_cap(level).map(|r| r.value).unwrap_or(u64::MAX);
        let glued = c.saturating_mul(p * p / 4).max(bound.saturating_add(c.saturating_mul(p - 1)));
        bound = glued.saturating_add(p).max(p + 1);
    }
    bound
}

/// One connected node of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    /// the `t` in force at this node
    pub level: usize,
    pub vertices: usize,
    pub dominators: Vec<Vertex>,
    pub kind: DominatorKind,
    /// nonempty parts only, in dominator order
    pub parts: Vec<VertexSet>,
    pub part_sizes: Vec<usize>,
    pub measured_cross_cap: usize,
    pub theoretical_cross_cap: RamseyBound,
    /// filled in audit mode: measured width of this node's decomposition
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured_width: Option<usize>,
    /// filled in audit mode: child bound `k` plus `|D|`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attach_without_slack: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub bd: BranchDecomposition,
    pub cert: WidthCertificate,
    pub trace: Vec<TraceRecord>,
    pub measured_width: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// verify class membership first (costs `O(n^(s+5))`)
    pub check_membership: bool,
    /// measure every recursion node's decomposition into the trace
    pub audit: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { check_membership: true, audit: false }
    }
}

pub fn decompose(g: &Graph, params: ClassParams) -> Result<DecompositionResult> {
    decompose_with(g, params, DecomposeOptions::default())
}

pub fn decompose_with(g: &Graph, params: ClassParams, opts: DecomposeOptions) -> Result<DecompositionResult> {
    if opts.check_membership {
        if let Some(w) = pattern::class_violation(g, params) {
            return Err(Error::NotInClass(w));
        }
    }
    let mut builder = Builder { s: params.s, audit: opts.audit, trace: Vec::new() };
    let (bd, cert) = builder.build(g, params.t)?;

    bd.validate(g).map_err(|e| Error::Internal(format!("constructed decomposition is invalid: {e}")))?;
    let bound = cert.recompute().map_err(|e| Error::Internal(format!("certificate does not recompute: {e}")))?;
    let measured_width = decomp::mimw_of(&bd, g)?.width;
    if measured_width > bound {
        return Err(Error::Internal(format!("measured width {measured_width} exceeds certified {bound}")));
    }
    Ok(DecompositionResult { bd, cert, trace: builder.trace, measured_width })
}

struct Builder {
    s: usize,
    audit: bool,
    trace: Vec<TraceRecord>,
}

impl Builder {
    fn build(&mut self, g: &Graph, t: usize) -> Result<(BranchDecomposition, WidthCertificate)> {
        if g.is_empty() {
            return Ok((BranchDecomposition::empty(), WidthCertificate::empty()));
        }
        if t <= 1 {
            let witness = PatternWitness { vertices: vec![g.id(0)], pattern: Pattern::Clique(1) };
            return Err(Error::NotInClass(witness));
        }
        let components = g.components();
        if components.len() > 1 {
            let mut parts = Vec::with_capacity(components.len());
            for comp in components {
                let sub = g.induced_subgraph(&comp)?;
                let (decomposition, certificate) = self.build(&sub, t)?;
                parts.push(Part { vertices: comp, decomposition, certificate });
            }
            let pd = PartitionedDecomposition { parts, cross_cap: 0 };
            return composer::glue_rule(g, &pd, Rule::Components);
        }
        self.build_connected(g, t)
    }

    fn build_connected(&mut self, g: &Graph, t: usize) -> Result<(BranchDecomposition, WidthCertificate)> {
        let params = ClassParams { s: self.s, t };
        let witness = domfind::find_bounded_dominating_structure(g, params)?;
        let dominators = witness.dom_set.to_vec();
        let parts: Vec<VertexSet> =
            partition_by_dominators(g, &dominators)?.into_iter().filter(|x| !x.is_empty()).collect();
        let measured_cross_cap = composer::measure_cross_cap(g, &parts)?;
        let theoretical = theoretical_cross_cap(params)?;

        let record = self.trace.len();
        self.trace.push(TraceRecord {
            level: t,
            vertices: g.n(),
            dominators,
            kind: witness.kind,
            part_sizes: parts.iter().map(VertexSet::len).collect(),
            parts: parts.clone(),
            measured_cross_cap,
            theoretical_cross_cap: theoretical,
            measured_width: None,
            attach_without_slack: None,
        });

        let rest_vertices = g.vertex_set().difference(&witness.dom_set);
        let rest_graph = g.induced_subgraph(&rest_vertices)?;
        let (rest_bd, rest_cert) = if parts.is_empty() {
            (BranchDecomposition::empty(), WidthCertificate::empty())
        } else {
            let mut glued = Vec::with_capacity(parts.len());
            for x in parts {
                let sub = g.induced_subgraph(&x)?;
                let (decomposition, certificate) = self.build(&sub, t - 1)?;
                glued.push(Part { vertices: x, decomposition, certificate });
            }
            let pd = PartitionedDecomposition { parts: glued, cross_cap: measured_cross_cap };
            composer::glue(&rest_graph, &pd)?
        };
        let (bd, cert) = composer::attach_dominators(g, &rest_bd, &rest_cert, &witness.dom_set)?;

        if self.audit {
            let width = decomp::mimw_of(&bd, g)?.width;
            let entry = &mut self.trace[record];
            entry.measured_width = Some(width);
            if cert.rule == Rule::Attach {
                entry.attach_without_slack = Some(rest_cert.bound + witness.dom_set.len());
            }
        }
        Ok((bd, cert))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCap {
    pub i: usize,
    pub j: usize,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCapReport {
    pub theoretical: RamseyBound,
    pub pairs: Vec<PairCap>,
    /// every part `X_i` lies in the neighbourhood of `d[i]`
    pub consistent: bool,
    /// every pair value is strictly below the theoretical cap
    pub holds: bool,
}

/// Measures `cutmim(X_i, X_j)` for all pairs and compares with
/// `R(t-1, R(t-1, s+2))`. `parts` is indexed like `d`; empty parts are
/// allowed.
pub fn verify_cross_cap_claim(
    g: &Graph,
    params: ClassParams,
    parts: &[VertexSet],
    d: &[Vertex],
) -> Result<CrossCapReport> {
    let theoretical = theoretical_cross_cap(params)?;
    let pairs: Vec<PairCap> = composer::cross_caps(g, parts)?
        .into_iter()
        .map(|((i, j), value)| PairCap { i, j, value })
        .collect();
    let consistent = parts.len() <= d.len()
        && parts.iter().zip(d).all(|(x, &di)| x.iter().all(|v| g.adjacent(di, v)));
    let holds = pairs.iter().all(|pc| (pc.value as u64) < theoretical.value);
    Ok(CrossCapReport { theoretical, pairs, consistent, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::path;

    #[test]
    fn ramsey_examples() {
        assert_eq!(ramsey_upper(2, 5).unwrap(), RamseyBound::exact(5));
        assert_eq!(ramsey_upper(3, 3).unwrap(), RamseyBound::exact(6));
        assert_eq!(ramsey_upper(1, 99).unwrap(), RamseyBound::exact(1));
        assert_eq!(ramsey_upper(99, 1).unwrap(), RamseyBound::exact(1));
        assert_eq!(ramsey_upper(4, 4).unwrap(), RamseyBound::exact(20));
        assert!(ramsey_upper(0, 3).is_err());
        let huge = ramsey_upper(200, 200).unwrap();
        assert!(huge.saturated);
    }

    #[test]
    fn ramsey_matches_recurrence() {
        let mut table = vec![vec![0u64; 12]; 12];
        for p in 1..12 {
            for q in 1..12 {
                table[p][q] = if p == 1 || q == 1 { 1 } else { table[p - 1][q] + table[p][q - 1] };
                assert_eq!(ramsey_upper(p as u64, q as u64).unwrap().value, table[p][q]);
            }
        }
    }

    #[test]
    fn cross_cap_examples() {
        assert_eq!(theoretical_cross_cap(ClassParams { s: 0, t: 3 }).unwrap().value, 2);
        assert_eq!(theoretical_cross_cap(ClassParams { s: 1, t: 3 }).unwrap().value, 3);
        assert_eq!(theoretical_cross_cap(ClassParams { s: 0, t: 2 }).unwrap().value, 1);
        assert_eq!(theoretical_cross_cap(ClassParams { s: 2, t: 4 }).unwrap().value, 55);
        assert!(theoretical_cross_cap(ClassParams { s: 0, t: 1 }).is_err());
        assert!(theoretical_cross_cap(ClassParams { s: 0, t: 60 }).unwrap().saturated);
    }

    #[test]
    fn partition_examples() {
        let parts = partition_by_dominators(&path(5), &[1, 3]).unwrap();
        assert_eq!(parts, vec![VertexSet::from([0, 2]), VertexSet::from([4])]);

        let c5 = Pattern::Cycle(5).graph();
        let parts = partition_by_dominators(&c5, &[0, 1, 2, 3, 4]).unwrap();
        assert!(parts.iter().all(VertexSet::is_empty));

        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(partition_by_dominators(&star, &[0]).unwrap(), vec![VertexSet::from([1, 2, 3, 4])]);

        assert!(partition_by_dominators(&path(5), &[0]).is_err());
    }

    #[test]
    fn decompose_edgeless() {
        let g = Graph::edgeless(5);
        let res = decompose(&g, ClassParams { s: 0, t: 2 }).unwrap();
        assert_eq!(res.measured_width, 0);
        assert_eq!(res.cert.rule, Rule::Components);
        res.bd.validate(&g).unwrap();
    }

    #[test]
    fn decompose_c5() {
        let c5 = Pattern::Cycle(5).graph();
        let res = decompose(&c5, ClassParams { s: 0, t: 3 }).unwrap();
        let (exact, _) = decomp::exact_mimw(&c5, 8).unwrap();
        assert!(exact <= res.measured_width && res.measured_width <= res.cert.bound);
        assert_eq!(res.trace[0].kind, DominatorKind::P3);
        assert_eq!(res.trace[0].dominators, vec![0, 1, 2]);
    }

    #[test]
    fn decompose_disconnected() {
        let g = pattern::build_pattern_sp1_p5(1);
        let params = ClassParams { s: 2, t: 3 };
        let res = decompose(&g, params).unwrap();
        assert_eq!(res.cert.rule, Rule::Components);
        assert_eq!(res.cert.c, 0);
        let comps = g.components();
        assert_eq!(composer::measure_cross_cap(&g, &comps).unwrap(), 0);
        let widths: Vec<usize> = comps
            .iter()
            .map(|c| {
                let sub = g.induced_subgraph(c).unwrap();
                decompose(&sub, params).unwrap().measured_width
            })
            .collect();
        assert_eq!(res.measured_width, *widths.iter().max().unwrap());
    }

    #[test]
    fn decompose_rejects_non_members() {
        let k4 = pattern::complete(4);
        match decompose(&k4, ClassParams { s: 0, t: 4 }) {
            Err(Error::NotInClass(w)) => assert_eq!(w.pattern, Pattern::Clique(4)),
            other => panic!("expected class violation, got {other:?}"),
        }
        match decompose(&Graph::edgeless(1), ClassParams { s: 0, t: 1 }) {
            Err(Error::NotInClass(w)) => assert_eq!(w.pattern, Pattern::Clique(1)),
            other => panic!("expected class violation, got {other:?}"),
        }
        let res = decompose(&Graph::empty(), ClassParams { s: 0, t: 1 }).unwrap();
        assert_eq!(res.cert.bound, 0);
    }

    #[test]
    fn skipping_the_check_surfaces_search_failures() {
        // P6 is not P5-free, so s = 0 promises something false
        let opts = DecomposeOptions { check_membership: false, audit: false };
        assert!(matches!(decompose_with(&path(6), ClassParams { s: 0, t: 3 }, opts), Err(Error::NoDominator(_))));
    }

    #[test]
    fn cross_cap_report() {
        let c5 = Pattern::Cycle(5).graph();
        let params = ClassParams { s: 0, t: 3 };
        let d = vec![0, 1, 2];
        let parts = partition_by_dominators(&c5, &d).unwrap();
        let report = verify_cross_cap_claim(&c5, params, &parts, &d).unwrap();
        assert!(report.consistent && report.holds);
        assert!(report.pairs.iter().all(|pc| pc.value <= 1));
    }

    #[test]
    fn ceiling_examples() {
        // t = 2: p ≤ 3, c = 1 → glue max{2, 0 + 2} = 2, attach max{5, 4} = 5
        assert_eq!(certificate_ceiling(ClassParams { s: 0, t: 2 }), 5);
        assert_eq!(certificate_ceiling(ClassParams { s: 0, t: 1 }), 0);
        assert!(certificate_ceiling(ClassParams { s: 2, t: 4 }) > certificate_ceiling(ClassParams { s: 2, t: 3 }));
    }
}
