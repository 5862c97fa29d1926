//! Named graphs and seeded random members of a class.
//!
//! Random graphs use SplitMix64 (Steele, Lea and Flood, 2014) so the same
//! seed yields the same graph in any implementation:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)                       (all arithmetic mod 2^64)
//! ```
//!
//! A draw becomes a real in `[0, 1)` as `(z >> 11) * 2^-53`. Vertex pairs
//! `(i, j)`, `i < j`, are visited in lexicographic order and each becomes
//! an edge when its draw is below `edge_prob`.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::pattern::{self, ClassParams, Pattern};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub edge_prob: f64,
    pub params: ClassParams,
}

/// Reseeding attempts before [`random_class_member`] gives up.
pub const MAX_RESEEDS: u64 = 32;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// `P<n>`, `K<n>`, `C<n>`, `<k>P1`, `<s>P1+P5`, `star<n>` (centre 0 with
/// `n` leaves) or `petersen`.
pub fn named(name: &str) -> Result<Graph> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("petersen") {
        return Ok(petersen());
    }
    if let Some(rest) = name.strip_prefix("star") {
        let leaves: usize = rest.parse().map_err(|_| Error::Invalid(format!("unknown graph name {name:?}")))?;
        let edges: Vec<_> = (1..=leaves as Vertex).map(|v| (0, v)).collect();
        return Graph::from_edges(leaves + 1, &edges);
    }
    let pattern: Pattern = name.parse().map_err(|_| Error::Invalid(format!("unknown graph name {name:?}")))?;
    Ok(pattern.graph())
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen graph is simple")
}

/// `G(n, p)` with the pair order and draw rule described above.
pub fn erdos_renyi(seed: u64, n: usize, edge_prob: f64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for i in 0..n as Vertex {
        for j in i + 1..n as Vertex {
            if rng.next_f64() < edge_prob {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("sampled graph is simple")
}

/// A seeded graph on `n` vertices in the class of `spec.params`.
///
/// Samples `G(n, p)`, then repairs it while a forbidden pattern remains:
/// an induced `K_t` loses the lexicographically first edge among its
/// vertices; an induced `sP1+P5` gains the lexicographically first missing
/// edge among its vertices that does not close a `K_t` (or simply the first
/// missing edge if every one would). After `50·n²` edits the seed is
/// incremented and sampling starts over.
pub fn random_class_member(spec: &GenSpec) -> Result<Graph> {
    if !(0.0..=1.0).contains(&spec.edge_prob) {
        return Err(Error::Invalid(format!("edge probability {} outside [0, 1]", spec.edge_prob)));
    }
    if spec.params.t <= 1 && spec.n > 0 {
        return Err(Error::Invalid("only the empty graph is K1-free".into()));
    }
    let cap = 50 * spec.n * spec.n;
    for attempt in 0..MAX_RESEEDS {
        let mut g = erdos_renyi(spec.seed.wrapping_add(attempt), spec.n, spec.edge_prob);
        let mut edits = 0;
        while let Some(witness) = pattern::class_violation(&g, spec.params) {
            edits += 1;
            if edits > cap {
                break;
            }
            let mut vs = witness.vertices.clone();
            vs.sort_unstable();
            g = match witness.pattern {
                Pattern::Clique(_) => g.without_edge(vs[0], vs[1]),
                _ => {
                    let missing: Vec<(Vertex, Vertex)> = vs
                        .iter()
                        .enumerate()
                        .flat_map(|(a, &u)| vs[a + 1..].iter().map(move |&v| (u, v)))
                        .filter(|&(u, v)| !g.adjacent(u, v))
                        .collect();
                    let (u, v) = missing
                        .iter()
                        .copied()
                        .find(|&(u, v)| !closes_clique(&g, u, v, spec.params.t))
                        .unwrap_or(missing[0]);
                    g.with_edge(u, v)?
                }
            };
        }
        if edits <= cap {
            return Ok(g);
        }
    }
    Err(Error::Invalid(format!("repair did not converge after {MAX_RESEEDS} reseeds")))
}

/// Adding `uv` creates a `K_t` iff their common neighbourhood holds a `K_{t-2}`.
fn closes_clique(g: &Graph, u: Vertex, v: Vertex, t: usize) -> bool {
    let common: VertexSet = g.neighbors(u).filter(|&w| g.adjacent(v, w)).collect();
    let sub = g.induced_subgraph(&common).expect("neighbours are vertices");
    pattern::clique_number(&sub) + 2 >= t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0, as published with the algorithm
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn named_examples() {
        let p5 = named("P5").unwrap();
        assert_eq!((p5.n(), p5.m()), (5, 4));
        let lf = named("2P1+P5").unwrap();
        assert_eq!((lf.n(), lf.m()), (7, 4));
        assert_eq!(named("K1").unwrap().n(), 1);
        assert_eq!(named("star4").unwrap().degree(0), 4);
        let pet = named("petersen").unwrap();
        assert_eq!((pet.n(), pet.m()), (10, 15));
        assert!(pet.degree_sequence().iter().all(|&d| d == 3));
        assert_eq!(named("C6").unwrap().m(), 6);
        assert!(named("wheel5").is_err());
    }

    #[test]
    fn extreme_probabilities() {
        let spec = GenSpec { seed: 3, n: 9, edge_prob: 0.0, params: ClassParams { s: 0, t: 2 } };
        assert_eq!(random_class_member(&spec).unwrap().m(), 0);

        let spec = GenSpec { seed: 3, n: 4, edge_prob: 1.0, params: ClassParams { s: 0, t: 6 } };
        assert_eq!(random_class_member(&spec).unwrap(), pattern::complete(4));
    }

    #[test]
    fn outputs_are_members_and_reproducible() {
        for s in 0..3 {
            for t in 2..5 {
                for seed in 0..4 {
                    let spec = GenSpec { seed, n: 10, edge_prob: 0.3, params: ClassParams { s, t } };
                    let g = random_class_member(&spec).unwrap();
                    assert_eq!(g.n(), 10);
                    assert!(pattern::is_class_member(&g, spec.params));
                    assert_eq!(random_class_member(&spec).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let spec = GenSpec { seed: 0, n: 3, edge_prob: 1.5, params: ClassParams { s: 0, t: 3 } };
        assert!(random_class_member(&spec).is_err());
        let spec = GenSpec { seed: 0, n: 3, edge_prob: 0.5, params: ClassParams { s: 0, t: 1 } };
        assert!(random_class_member(&spec).is_err());
        let spec = GenSpec { seed: 0, n: 0, edge_prob: 0.5, params: ClassParams { s: 0, t: 1 } };
        assert!(random_class_member(&spec).unwrap().is_empty());
    }
}
