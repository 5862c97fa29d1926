//! Batch experiments: decompose a seeded corpus and tabulate the results.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct;
use crate::decomp;
use crate::error::{Error, Result};
use crate::generators::{self, GenSpec};
use crate::pattern::ClassParams;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub seed: u64,
    /// instances per `(s, t)` pair
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub edge_prob: f64,
    pub s_values: Vec<usize>,
    pub t_values: Vec<usize>,
    /// graphs up to this size also get their exact width
    pub exact_limit: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 1,
            count: 10,
            n_min: 4,
            n_max: 12,
            edge_prob: 0.3,
            s_values: vec![0, 1, 2],
            t_values: vec![2, 3, 4],
            exact_limit: 7,
        }
    }
}

/// One CSV row. Column order is the field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub s: usize,
    pub t: usize,
    pub instance: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// largest `|D|` per recursion level, from level `t` down, `;`-separated
    pub dominator_sizes: String,
    pub measured_width: usize,
    pub certificate_bound: usize,
    /// empty when `n` exceeds the exact limit
    pub exact_width: Option<usize>,
}

/// The generator spec for instance `i` of pair `(s, t)`.
pub fn instance_spec(cfg: &SweepConfig, params: ClassParams, i: usize) -> GenSpec {
    let span = cfg.n_max - cfg.n_min + 1;
    let seed = cfg
        .seed
        .wrapping_mul(1_000_003)
        .wrapping_add((params.s as u64) << 40)
        .wrapping_add((params.t as u64) << 32)
        .wrapping_add(i as u64 * 7919);
    GenSpec { seed, n: cfg.n_min + i % span, edge_prob: cfg.edge_prob, params }
}

pub fn run(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.n_min > cfg.n_max {
        return Err(Error::Invalid("n_min exceeds n_max".into()));
    }
    let jobs: Vec<(ClassParams, usize)> = cfg
        .s_values
        .iter()
        .flat_map(|&s| cfg.t_values.iter().map(move |&t| ClassParams { s, t }))
        .flat_map(|params| (0..cfg.count).map(move |i| (params, i)))
        .collect();
    let mut rows = jobs
        .into_par_iter()
        .map(|(params, i)| row(cfg, params, i))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.s, r.t, r.instance));
    Ok(rows)
}

fn row(cfg: &SweepConfig, params: ClassParams, instance: usize) -> Result<SweepRow> {
    let spec = instance_spec(cfg, params, instance);
    let g = generators::random_class_member(&spec)?;
    let res = construct::decompose(&g, params)?;
    let mut per_level: BTreeMap<usize, usize> = BTreeMap::new();
    for rec in &res.trace {
        let e = per_level.entry(rec.level).or_default();
        *e = (*e).max(rec.dominators.len());
    }
    let dominator_sizes = per_level.values().rev().map(|d| d.to_string()).collect::<Vec<_>>().join(";");
    let exact_width = if g.n() <= cfg.exact_limit { Some(decomp::exact_mimw(&g, cfg.exact_limit)?.0) } else { None };
    Ok(SweepRow {
        s: params.s,
        t: params.t,
        instance,
        seed: spec.seed,
        n: g.n(),
        m: g.m(),
        dominator_sizes,
        measured_width: res.measured_width,
        certificate_bound: res.cert.bound,
        exact_width,
    })
}

pub fn to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
