//! Exact minimum vertex cover by branch and bound: branch on the two
//! endpoints of an uncovered edge, prune with a greedy-matching lower bound.

use super::Indexed;

pub fn solve(g: &Indexed) -> Vec<usize> {
    let mut in_cover = vec![false; g.n()];
    // Upper bound: both endpoints of a greedy maximal matching.
    let mut best: Vec<usize> = greedy_matching(g, &vec![false; g.n()])
        .into_iter()
        .flat_map(|(u, v)| [u, v])
        .collect();
    best.sort_unstable();
    let mut chosen = Vec::new();
    branch(g, &mut in_cover, &mut chosen, &mut best);
    best
}

fn branch(g: &Indexed, in_cover: &mut Vec<bool>, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    let lb = greedy_matching(g, in_cover).len();
    if chosen.len() + lb >= best.len() {
        return;
    }
    let uncovered = g
        .edges
        .iter()
        .find(|(u, v)| !in_cover[*u] && !in_cover[*v]);
    match uncovered {
        None => {
            // every edge covered and strictly smaller than the incumbent
            *best = chosen.clone();
        }
        Some(&(u, v)) => {
            for pick in [u, v] {
                in_cover[pick] = true;
                chosen.push(pick);
                branch(g, in_cover, chosen, best);
                chosen.pop();
                in_cover[pick] = false;
            }
        }
    }
}

/// Greedy maximal matching over edges not yet covered; its size lower-bounds
/// the number of extra cover vertices needed.
fn greedy_matching(g: &Indexed, in_cover: &[bool]) -> Vec<(usize, usize)> {
    let mut used = vec![false; g.n()];
    let mut pairs = Vec::new();
    for &(u, v) in &g.edges {
        if !in_cover[u] && !in_cover[v] && !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            pairs.push((u, v));
        }
    }
    pairs
}
