//! Deterministic minimum spanning tree: Prim's growth from the
//! lexicographically smallest vertex, candidate edges ordered by
//! (weight, lexicographic endpoint pair). Bird's allocation relies on this
//! tree being reproducible.

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use num_rational::BigRational;
use std::collections::BTreeSet;

pub fn prim(g: &Graph) -> Result<BTreeSet<EdgeKey>> {
    for (k, w) in g.edges() {
        if w.is_none() {
            return Err(Error::input(format!("edge {k} has no weight")));
        }
    }
    let start = match g.vertices().iter().next() {
        Some(v) => v.clone(),
        None => return Ok(BTreeSet::new()),
    };
    let mut in_tree: BTreeSet<VertexId> = BTreeSet::from([start]);
    let mut tree = BTreeSet::new();
    while in_tree.len() < g.vertex_count() {
        let mut best: Option<(&BigRational, &EdgeKey)> = None;
        for (k, w) in g.edges() {
            let (a, b) = k.endpoints();
            if in_tree.contains(a) == in_tree.contains(b) {
                continue;
            }
            let w = w.as_ref().expect("checked above");
            if best.is_none_or(|(bw, bk)| (w, k) < (bw, bk)) {
                best = Some((w, k));
            }
        }
        match best {
            None => {
                return Err(Error::infeasible(
                    "graph is disconnected; no spanning tree exists",
                ))
            }
            Some((_, k)) => {
                let (a, b) = k.endpoints();
                in_tree.insert(a.clone());
                in_tree.insert(b.clone());
                tree.insert(k.clone());
            }
        }
    }
    Ok(tree)
}
