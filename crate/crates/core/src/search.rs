//! Exact maximum-clique search shared by the clique-number and
//! induced-matching routines.

use fixedbitset::FixedBitSet;

/// Size of a largest clique inside `cand`, where `adj[v]` is the
/// neighbourhood of `v`. Branch and bound with a greedy colouring bound.
pub(crate) fn max_clique(adj: &[FixedBitSet], cand: &FixedBitSet) -> usize {
    let mut best = 0;
    expand(adj, 0, cand.clone(), &mut best);
    best
}

fn expand(adj: &[FixedBitSet], size: usize, mut cand: FixedBitSet, best: &mut usize) {
    if cand.is_clear() {
        *best = (*best).max(size);
        return;
    }
    let (order, colours) = colour_sort(adj, &cand);
    for k in (0..order.len()).rev() {
        if size + colours[k] <= *best {
            return;
        }
        let v = order[k];
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        expand(adj, size + 1, next, best);
        cand.set(v, false);
    }
}

/// Greedy colouring of `cand`; returns vertices in colour order together
/// with the number of colours used up to each position.
fn colour_sort(adj: &[FixedBitSet], cand: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = cand.clone();
    let mut order = Vec::with_capacity(cand.count_ones(..));
    let mut colours = Vec::with_capacity(order.capacity());
    let mut colour = 0;
    while !uncoloured.is_clear() {
        colour += 1;
        let mut class = uncoloured.clone();
        while let Some(v) = class.ones().next() {
            order.push(v);
            colours.push(colour);
            uncoloured.set(v, false);
            class.set(v, false);
            class.difference_with(&adj[v]);
        }
    }
    (order, colours)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    fn full(n: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        s
    }

    #[test]
    fn small_cliques() {
        assert_eq!(max_clique(&rows(0, &[]), &full(0)), 0);
        assert_eq!(max_clique(&rows(3, &[]), &full(3)), 1);
        let k4_plus_tail = rows(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(max_clique(&k4_plus_tail, &full(6)), 4);
        let mut cand = full(6);
        cand.set(0, false);
        assert_eq!(max_clique(&k4_plus_tail, &cand), 3);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = (next() % 11) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 2 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let adj = rows(n, &edges);
            let brute = (0u32..1 << n)
                .filter(|&mask| {
                    (0..n).all(|u| (0..n).all(|v| u == v || mask >> u & 1 == 0 || mask >> v & 1 == 0 || adj[u].contains(v)))
                })
                .map(|mask| mask.count_ones() as usize)
                .max()
                .unwrap();
            assert_eq!(max_clique(&adj, &full(n)), brute);
        }
    }
}
