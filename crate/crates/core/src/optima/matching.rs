//! Maximum cardinality matching on general graphs via augmenting paths with
//! blossom contraction (Edmonds). Contracted blossoms are tracked through a
//! `base` array rather than an explicit contracted graph.

use super::Indexed;
use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Returns the matched pairs `(u, v)` with `u < v`, sorted.
pub fn solve(g: &Indexed) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // Greedy seed matching; augmentation does the rest.
    for &(u, v) in &g.edges {
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
        }
    }
    for root in 0..n {
        if mate[root] == NONE {
            augment_from(g, &mut mate, root);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect();
    pairs.sort_unstable();
    pairs
}

fn augment_from(g: &Indexed, mate: &mut [usize], root: usize) -> bool {
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut queue = VecDeque::from([root]);

    while let Some(v) = queue.pop_front() {
        for &to in &g.adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // Edge between two even vertices: contract the blossom.
                let curbase = lca(mate, &parent, &base, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(mate, &mut parent, &base, &mut in_blossom, v, curbase, to);
                mark_path(mate, &mut parent, &base, &mut in_blossom, to, curbase, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = curbase;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    augment_along(mate, &parent, to);
                    return true;
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    false
}

/// Lowest common ancestor of two even vertices in the alternating tree,
/// measured on blossom bases.
fn lca(mate: &[usize], parent: &[usize], base: &[usize], mut a: usize, mut b: usize) -> usize {
    let mut on_path = vec![false; base.len()];
    loop {
        a = base[a];
        on_path[a] = true;
        if mate[a] == NONE {
            break; // reached the root
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if on_path[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    mate: &[usize],
    parent: &mut [usize],
    base: &[usize],
    in_blossom: &mut [bool],
    mut v: usize,
    blossom_base: usize,
    mut child: usize,
) {
    while base[v] != blossom_base {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

fn augment_along(mate: &mut [usize], parent: &[usize], mut v: usize) {
    while v != NONE {
        let pv = parent[v];
        let next = mate[pv];
        mate[v] = pv;
        mate[pv] = v;
        v = next;
    }
}
