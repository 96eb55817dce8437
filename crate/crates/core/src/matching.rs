//! Exact maximum matching on general graphs (Edmonds' blossom algorithm,
//! contraction form, O(V^3)). Operates directly on bitset adjacency rows
//! restricted to a vertex mask, so detectors can run it on induced
//! neighborhoods without relabeling.

use std::collections::VecDeque;

use crate::graph::{bit, bits};

pub(crate) const NONE: usize = usize::MAX;

/// Maximum matching of the graph `(mask, {uv : u,v in mask, v in adj[u]})`.
/// Returns the mate array: `mate[v]` is the partner of `v`, or `NONE`.
/// Deterministic: roots and neighbors are scanned in ascending order.
///
/// `stop_at`: stop augmenting once the matching reaches this many edges
/// (the result is then a matching of exactly that size, not necessarily
/// maximum). Pass `usize::MAX` for a true maximum.
pub(crate) fn maximum_matching(adj: &[u64], mask: u64, stop_at: usize) -> Vec<usize> {
    let n = adj.len();
    debug_assert!(n <= 64);
    let mut mate = vec![NONE; n];
    let mut size = 0usize;

    // Greedy seed; every augmentation after this costs a full BFS phase.
    for v in bits(mask) {
        if mate[v] != NONE {
            continue;
        }
        for u in bits(adj[v] & mask) {
            if mate[u] == NONE {
                mate[u] = v;
                mate[v] = u;
                size += 1;
                break;
            }
        }
        if size >= stop_at {
            return mate;
        }
    }

    let mut parent = vec![NONE; n];
    let mut base = vec![0usize; n];
    for root in bits(mask) {
        if mate[root] != NONE {
            continue;
        }
        if augment_from(adj, mask, root, &mut mate, &mut parent, &mut base) {
            size += 1;
            if size >= stop_at {
                return mate;
            }
        }
    }
    mate
}

/// One BFS phase looking for an augmenting path from `root`.
fn augment_from(
    adj: &[u64],
    mask: u64,
    root: usize,
    mate: &mut [usize],
    parent: &mut [usize],
    base: &mut [usize],
) -> bool {
    let n = adj.len();
    for v in 0..n {
        parent[v] = NONE;
        base[v] = v;
    }
    let mut used = bit(root);
    let mut queue = VecDeque::new();
    queue.push_back(root);

    while let Some(v) = queue.pop_front() {
        for u in bits(adj[v] & mask) {
            if base[v] == base[u] || mate[v] == u {
                continue;
            }
            if u == root || (mate[u] != NONE && parent[mate[u]] != NONE) {
                // Even-level vertex reached along a non-matching edge: the
                // alternating paths to root close an odd cycle. Contract it.
                let cur = lca(base, parent, mate, v, u);
                let mut in_blossom = 0u64;
                mark_path(base, parent, mate, &mut in_blossom, v, cur, u);
                mark_path(base, parent, mate, &mut in_blossom, u, cur, v);
                for i in bits(mask) {
                    if in_blossom & bit(base[i]) != 0 {
                        base[i] = cur;
                        if used & bit(i) == 0 {
                            used |= bit(i);
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[u] == NONE {
                parent[u] = v;
                if mate[u] == NONE {
                    // Augment along the alternating tree path.
                    let mut u = u;
                    while u != NONE {
                        let pv = parent[u];
                        let ppv = mate[pv];
                        mate[u] = pv;
                        mate[pv] = u;
                        u = ppv;
                    }
                    return true;
                }
                let m = mate[u];
                if used & bit(m) == 0 {
                    used |= bit(m);
                    queue.push_back(m);
                }
            }
        }
    }
    false
}

fn lca(base: &[usize], parent: &[usize], mate: &[usize], a: usize, b: usize) -> usize {
    let mut on_path = 0u64;
    let mut a = a;
    loop {
        a = base[a];
        on_path |= bit(a);
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    let mut b = b;
    loop {
        b = base[b];
        if on_path & bit(b) != 0 {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    base: &mut [usize],
    parent: &mut [usize],
    mate: &[usize],
    in_blossom: &mut u64,
    mut v: usize,
    stop: usize,
    mut child: usize,
) {
    while base[v] != stop {
        *in_blossom |= bit(base[v]);
        *in_blossom |= bit(base[mate[v]]);
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// Matched pairs `(u, v)` with `u < v`, ascending.
pub(crate) fn matched_pairs(mate: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (v, &m) in mate.iter().enumerate() {
        if m != NONE && v < m {
            out.push((v, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        adj
    }

    fn matching_size(adj: &[u64], mask: u64) -> usize {
        let mate = maximum_matching(adj, mask, usize::MAX);
        let pairs = matched_pairs(&mate);
        for &(u, v) in &pairs {
            assert!(adj[u] & bit(v) != 0, "non-edge matched");
            assert!(mask & bit(u) != 0 && mask & bit(v) != 0, "matched outside mask");
        }
        let mut seen = 0u64;
        for &(u, v) in &pairs {
            assert!(seen & bit(u) == 0 && seen & bit(v) == 0, "vertex reused");
            seen |= bit(u) | bit(v);
        }
        pairs.len()
    }

    /// Independent oracle: branch on the lowest masked vertex.
    fn brute_max(adj: &[u64], mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&r) = memo.get(&mask) {
            return r;
        }
        let v = mask.trailing_zeros() as usize;
        let mut best = brute_max(adj, mask & !bit(v), memo);
        for u in bits(adj[v] & mask) {
            best = best.max(1 + brute_max(adj, mask & !bit(v) & !bit(u), memo));
        }
        memo.insert(mask, best);
        best
    }

    #[test]
    fn odd_cycle_matches_floor_half() {
        for len in [3usize, 5, 7, 9] {
            let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
            let adj = graph(len, &edges);
            assert_eq!(matching_size(&adj, bit(len) - 1), len / 2, "C{len}");
        }
    }

    #[test]
    fn blossom_with_stem_augments_through_contraction() {
        // Triangle 2-3-4 hanging off the path 0-1-2; needs a blossom flip
        // to reach the perfect matching is impossible (5 vertices), max = 2.
        let adj = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(matching_size(&adj, 0b11111), 2);
        // Add a sixth vertex pendant on the blossom: perfect matching exists.
        let adj = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2), (3, 5)]);
        assert_eq!(matching_size(&adj, 0b111111), 3);
    }

    #[test]
    fn petersen_graph_has_perfect_matching() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let mut edges = outer;
        edges.extend(inner);
        edges.extend(spokes);
        let adj = graph(10, &edges);
        assert_eq!(matching_size(&adj, 0b11_1111_1111), 5);
    }

    #[test]
    fn mask_restricts_the_graph() {
        let adj = graph(6, &[(0, 1), (2, 3), (4, 5), (1, 2)]);
        assert_eq!(matching_size(&adj, 0b111111), 3);
        // Drop vertex 3: edge (2,3) gone, but (1,2) picks up the slack.
        assert_eq!(matching_size(&adj, 0b110111), 3);
        // Drop vertices 1 and 3: only (4,5) remains.
        assert_eq!(matching_size(&adj, 0b110101), 1);
    }

    #[test]
    fn stop_at_returns_partial_matching() {
        let adj = graph(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]);
        let mate = maximum_matching(&adj, 0xff, 2);
        assert_eq!(matched_pairs(&mate).len(), 2);
    }

    #[test]
    fn agrees_with_brute_force_on_all_graphs_up_to_6() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            let mask = bit(n) - 1;
            for code in 0u64..(1 << pairs.len()) {
                let mut adj = vec![0u64; n];
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if code & bit(i) != 0 {
                        adj[u] |= bit(v);
                        adj[v] |= bit(u);
                    }
                }
                let mut memo = HashMap::new();
                assert_eq!(
                    matching_size(&adj, mask),
                    brute_max(&adj, mask, &mut memo),
                    "n={n} code={code:b}"
                );
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..3000 {
            let n = rng.gen_range(2..=13usize);
            let mut adj = vec![0u64; n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.45) {
                        adj[u] |= bit(v);
                        adj[v] |= bit(u);
                    }
                }
            }
            let mask: u64 = rng.gen_range(0..(1u64 << n)) | 1;
            let mut memo = HashMap::new();
            assert_eq!(matching_size(&adj, mask), brute_max(&adj, mask, &mut memo));
        }
    }
}
