//! Exact minimum dominating set. Branches on the closed neighborhood of an
//! undominated vertex: any dominating set must pick one of those vertices.
//! Isolated vertices have a singleton closed neighborhood, so they force
//! themselves into every solution.

use super::Indexed;

pub fn solve(g: &Indexed) -> Vec<usize> {
    let n = g.n();
    // Upper bound: all vertices.
    let mut best: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::new();
    let mut dominated = vec![false; n];
    branch(g, &mut chosen, &mut dominated, &mut best);
    best.sort_unstable();
    best
}

fn branch(g: &Indexed, chosen: &mut Vec<usize>, dominated: &mut [bool], best: &mut Vec<usize>) {
    if chosen.len() + lower_bound(g, dominated) >= best.len() {
        return;
    }
    // Pick the undominated vertex with the fewest candidate dominators; a
    // small branching set prunes hardest, smallest index breaks ties.
    let target = (0..g.n())
        .filter(|&v| !dominated[v])
        .min_by_key(|&v| (g.adj[v].len(), v));
    let Some(v) = target else {
        *best = chosen.clone();
        return;
    };
    let mut candidates = vec![v];
    candidates.extend(g.adj[v].iter().copied());
    candidates.sort_unstable();
    for pick in candidates {
        let newly = mark(g, pick, dominated);
        chosen.push(pick);
        branch(g, chosen, dominated, best);
        chosen.pop();
        for w in newly {
            dominated[w] = false;
        }
    }
}

fn mark(g: &Indexed, pick: usize, dominated: &mut [bool]) -> Vec<usize> {
    let mut newly = Vec::new();
    if !dominated[pick] {
        dominated[pick] = true;
        newly.push(pick);
    }
    for &w in &g.adj[pick] {
        if !dominated[w] {
            dominated[w] = true;
            newly.push(w);
        }
    }
    newly
}

/// Undominated vertices whose closed neighborhoods are pairwise disjoint need
/// pairwise distinct dominators.
fn lower_bound(g: &Indexed, dominated: &[bool]) -> usize {
    let mut blocked = vec![false; g.n()];
    let mut count = 0;
    for v in 0..g.n() {
        if dominated[v] || blocked[v] || g.adj[v].iter().any(|&w| blocked[w]) {
            continue;
        }
        count += 1;
        blocked[v] = true;
        for &w in &g.adj[v] {
            blocked[w] = true;
        }
    }
    count
}
