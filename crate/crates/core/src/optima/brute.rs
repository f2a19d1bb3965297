//! Exhaustive oracles for all four goals. These deliberately share no code
//! with the main solvers; the test suites certify the solvers against them.

use super::{Indexed, OptResult, Witness};
use crate::error::{Error, Result};
use crate::game::Goal;
use crate::graph::Graph;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;

const MAX_SUBSET_VERTICES: usize = 16;
const MAX_SUBSET_EDGES: usize = 16;
const MAX_TREE_VERTICES: usize = 9;

/// Exhaustive enumeration for the given goal; errors past the size caps
/// (2^16 subsets for cover/domination/matching, edge combinations for trees).
pub fn brute_solve(goal: Goal, g: &Graph) -> Result<OptResult> {
    match goal {
        Goal::MinVertexCover => {
            cap(g.vertex_count(), MAX_SUBSET_VERTICES, "vertices")?;
            Ok(best_vertex_subset(g, is_vertex_cover))
        }
        Goal::MinDominatingSet => {
            cap(g.vertex_count(), MAX_SUBSET_VERTICES, "vertices")?;
            Ok(best_vertex_subset(g, is_dominating_set))
        }
        Goal::MaxMatching => {
            cap(g.edge_count(), MAX_SUBSET_EDGES, "edges")?;
            Ok(best_matching(g))
        }
        Goal::MinSpanningTree => {
            cap(g.vertex_count(), MAX_TREE_VERTICES, "vertices")?;
            best_spanning_tree(g)
        }
    }
}

fn cap(size: usize, max: usize, what: &str) -> Result<()> {
    if size > max {
        return Err(Error::size(format!(
            "brute force limited to {max} {what}, got {size}"
        )));
    }
    Ok(())
}

fn is_vertex_cover(g: &Indexed, mask: u32) -> bool {
    g.edges
        .iter()
        .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
}

fn is_dominating_set(g: &Indexed, mask: u32) -> bool {
    (0..g.n()).all(|v| mask >> v & 1 == 1 || g.adj[v].iter().any(|&w| mask >> w & 1 == 1))
}

fn best_vertex_subset(g: &Graph, feasible: fn(&Indexed, u32) -> bool) -> OptResult {
    let idx = Indexed::from(g);
    let n = idx.n();
    let mut best: Option<(u32, u32)> = None; // (size, mask)
    for mask in 0..1u32 << n {
        if feasible(&idx, mask) {
            let entry = (mask.count_ones(), mask);
            if best.is_none_or(|b| entry < b) {
                best = Some(entry);
            }
        }
    }
    let (_, mask) = best.expect("the full vertex set is always feasible");
    let picked: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    OptResult {
        value: BigRational::from_integer(picked.len().into()),
        witness: Witness::Vertices(idx.vertex_set(&picked)),
    }
}

fn best_matching(g: &Graph) -> OptResult {
    let idx = Indexed::from(g);
    let m = idx.edges.len();
    let mut best: (u32, u32) = (0, 0); // (count, mask), maximizing count
    for mask in 0..1u32 << m {
        let mut used = 0u32;
        let mut disjoint = true;
        for (i, &(u, v)) in idx.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let bits = 1 << u | 1 << v;
                if used & bits != 0 {
                    disjoint = false;
                    break;
                }
                used |= bits;
            }
        }
        // masks ascend, so the first mask reaching a new maximum wins
        if disjoint && mask.count_ones() > best.0 {
            best = (mask.count_ones(), mask);
        }
    }
    let pairs: Vec<(usize, usize)> = idx
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| best.1 >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    OptResult {
        value: BigRational::from_integer(pairs.len().into()),
        witness: Witness::Edges(idx.edge_set(&pairs)),
    }
}

fn best_spanning_tree(g: &Graph) -> Result<OptResult> {
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(OptResult {
            value: BigRational::zero(),
            witness: Witness::Edges(BTreeSet::new()),
        });
    }
    let keys: Vec<_> = g.edges().keys().cloned().collect();
    let weights: Vec<BigRational> = keys
        .iter()
        .map(|k| {
            g.weight(k)
                .cloned()
                .ok_or_else(|| Error::input(format!("edge {k} has no weight")))
        })
        .collect::<Result<_>>()?;
    let idx = Indexed::from(g);
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    let mut picked = Vec::with_capacity(n - 1);
    choose_trees(&idx, &weights, 0, &mut picked, &mut best);
    match best {
        Some((value, indices)) => {
            let witness: BTreeSet<_> = indices.into_iter().map(|i| keys[i].clone()).collect();
            Ok(OptResult {
                value,
                witness: Witness::Edges(witness),
            })
        }
        None => Err(Error::infeasible(
            "graph is disconnected; no spanning tree exists",
        )),
    }
}

fn choose_trees(
    idx: &Indexed,
    weights: &[BigRational],
    from: usize,
    picked: &mut Vec<usize>,
    best: &mut Option<(BigRational, Vec<usize>)>,
) {
    let need = idx.n() - 1;
    if picked.len() == need {
        if spans(idx, picked) {
            let total: BigRational = picked.iter().map(|&i| weights[i].clone()).sum();
            if best.as_ref().is_none_or(|(bw, _)| total < *bw) {
                *best = Some((total, picked.clone()));
            }
        }
        return;
    }
    let remaining = need - picked.len();
    for i in from..idx.edges.len() {
        if idx.edges.len() - i < remaining {
            break;
        }
        picked.push(i);
        choose_trees(idx, weights, i + 1, picked, best);
        picked.pop();
    }
}

fn spans(idx: &Indexed, picked: &[usize]) -> bool {
    let n = idx.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merged = 0;
    for &i in picked {
        let (u, v) = idx.edges[i];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false; // cycle
        }
        parent[ru] = rv;
        merged += 1;
    }
    merged == n - 1
}
