#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use mimkit::generators::SplitMix64;
use mimkit::{BranchDecomposition, Graph, Vertex};

/// Every labelled graph on `0..n`, indexed by a bitmask over the pairs in
/// lexicographic order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).tuple_combinations().collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Smallest adjacency code over all relabellings; equal iff isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let edges = g.edges();
    let index: HashMap<Vertex, usize> = g.ids().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    (0..n)
        .permutations(n)
        .map(|perm| {
            edges.iter().fold(0u64, |code, (u, v)| {
                let (a, b) = (perm[index[u]], perm[index[v]]);
                let (a, b) = (a.min(b), a.max(b));
                code | 1 << (a * n + b)
            })
        })
        .min()
        .unwrap_or(0)
}

/// One representative per isomorphism class on `n` vertices.
pub fn nonisomorphic(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    all_graphs(n).filter(|g| seen.insert(canonical_code(g))).collect()
}

/// Largest induced matching among `edges`, by subset enumeration.
pub fn brute_induced_matching(g: &Graph, edges: &[(Vertex, Vertex)]) -> usize {
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let induced = chosen.iter().tuple_combinations().all(|(&(a, b), &(c, d))| {
            a != c && a != d && b != c && b != d && !g.adjacent(a, c) && !g.adjacent(a, d) && !g.adjacent(b, c) && !g.adjacent(b, d)
        });
        if induced {
            best = size;
        }
    }
    best
}

/// Induced matching across the cut `side | rest`, by subset enumeration.
pub fn brute_cutmim(g: &Graph, side: &BTreeSet<Vertex>) -> usize {
    let cross: Vec<_> = g.edges().into_iter().filter(|(u, v)| side.contains(u) != side.contains(v)).collect();
    // within-side edges do not count as conflicts
    let cut = Graph::new(g.ids().iter().copied(), cross.clone()).unwrap();
    brute_induced_matching(&cut, &cross)
}

/// Exact mim-width by a second enumeration: leaves inserted from the
/// largest vertex downwards, every tree scored in full, cut values by
/// brute force.
pub fn reference_mimw(g: &Graph) -> usize {
    let ids: Vec<Vertex> = g.ids().iter().rev().copied().collect();
    if ids.len() <= 1 {
        return 0;
    }
    let mut memo: HashMap<BTreeSet<Vertex>, usize> = HashMap::new();
    let mut best = usize::MAX;
    // edges as (x, y) over tree nodes; leaves hold their vertex id
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    let mut leaf_of: Vec<Option<Vertex>> = vec![Some(ids[0]), Some(ids[1])];
    enumerate(g, &ids, 2, &mut edges, &mut leaf_of, &mut memo, &mut best);
    best
}

fn enumerate(
    g: &Graph,
    ids: &[Vertex],
    next: usize,
    edges: &mut Vec<(usize, usize)>,
    leaf_of: &mut Vec<Option<Vertex>>,
    memo: &mut HashMap<BTreeSet<Vertex>, usize>,
    best: &mut usize,
) {
    if next == ids.len() {
        let width = tree_width(g, edges, leaf_of, memo);
        *best = (*best).min(width);
        return;
    }
    for e in 0..edges.len() {
        let (x, y) = edges[e];
        let mid = leaf_of.len();
        let leaf = mid + 1;
        leaf_of.push(None);
        leaf_of.push(Some(ids[next]));
        edges[e] = (x, mid);
        edges.push((mid, y));
        edges.push((mid, leaf));
        enumerate(g, ids, next + 1, edges, leaf_of, memo, best);
        edges.pop();
        edges.pop();
        edges[e] = (x, y);
        leaf_of.pop();
        leaf_of.pop();
    }
}

fn tree_width(
    g: &Graph,
    edges: &[(usize, usize)],
    leaf_of: &[Option<Vertex>],
    memo: &mut HashMap<BTreeSet<Vertex>, usize>,
) -> usize {
    let mut adj = vec![Vec::new(); leaf_of.len()];
    for &(x, y) in edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut width = 0;
    for &(x, y) in edges {
        let mut side = BTreeSet::new();
        let mut stack = vec![(y, x)];
        while let Some((node, from)) = stack.pop() {
            if let Some(v) = leaf_of[node] {
                side.insert(v);
            }
            stack.extend(adj[node].iter().filter(|&&z| z != from).map(|&z| (z, node)));
        }
        let value = *memo.entry(side.clone()).or_insert_with(|| brute_cutmim(g, &side));
        width = width.max(value);
    }
    width
}

/// A random decomposition: leaves inserted into uniformly chosen edges,
/// then, when `subdivide`, some tree edges get degree-2 nodes.
pub fn random_decomposition(vertices: &[Vertex], rng: &mut SplitMix64, subdivide: bool) -> BranchDecomposition {
    match vertices.len() {
        0 => return BranchDecomposition::empty(),
        1 => return BranchDecomposition::single(vertices[0]),
        _ => {}
    }
    let mut order = vertices.to_vec();
    for i in (1..order.len()).rev() {
        order.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
    }
    let mut edges: Vec<[usize; 2]> = vec![[0, 1]];
    let mut leaf_map = BTreeMap::from([(order[0], 0), (order[1], 1)]);
    let mut nodes = 2;
    for &v in &order[2..] {
        let e = (rng.next_u64() % edges.len() as u64) as usize;
        let [x, y] = edges[e];
        let (mid, leaf) = (nodes, nodes + 1);
        nodes += 2;
        edges[e] = [x, mid];
        edges.push([mid, y]);
        edges.push([mid, leaf]);
        leaf_map.insert(v, leaf);
    }
    if subdivide {
        for e in 0..edges.len() {
            if rng.next_u64().is_multiple_of(3) {
                let [x, y] = edges[e];
                edges[e] = [x, nodes];
                edges.push([nodes, y]);
                nodes += 1;
            }
        }
    }
    BranchDecomposition { nodes, tree_edges: edges, leaf_map }
}
