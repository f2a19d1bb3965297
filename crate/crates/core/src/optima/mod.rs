//! Exact optimum computation for the four goals: minimum vertex cover,
//! minimum dominating set, maximum cardinality matching, and minimum-weight
//! spanning tree. Each solver is paired with an exhaustive oracle
//! (`brute_solve`) used to certify it in the tests.

mod brute;
mod dominating_set;
mod matching;
mod spanning_tree;
mod vertex_cover;

pub use brute::brute_solve;

use crate::error::Result;
use crate::graph::{EdgeKey, Graph, VertexId};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Witness of an optimum: a vertex set for cover/domination problems, an
/// edge set for matchings and spanning trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertices(BTreeSet<VertexId>),
    Edges(BTreeSet<EdgeKey>),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Vertices(s) => s.len(),
            Witness::Edges(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An exact optimum value together with a feasible witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    pub value: BigRational,
    pub witness: Witness,
}

impl OptResult {
    fn vertices(value: usize, witness: BTreeSet<VertexId>) -> Self {
        OptResult {
            value: BigRational::from_integer(value.into()),
            witness: Witness::Vertices(witness),
        }
    }

    fn edges(value: BigRational, witness: BTreeSet<EdgeKey>) -> Self {
        OptResult {
            value,
            witness: Witness::Edges(witness),
        }
    }
}

/// Minimum-cardinality vertex cover, by branching on an uncovered edge.
/// Disconnected graphs are solved per component.
pub fn min_vertex_cover(g: &Graph) -> OptResult {
    per_component(g, vertex_cover::solve)
}

/// Minimum-cardinality dominating set, by branching on the closed
/// neighborhood of an undominated vertex. Isolated vertices are forced picks;
/// disconnected graphs are solved per component.
pub fn min_dominating_set(g: &Graph) -> OptResult {
    per_component(g, dominating_set::solve)
}

fn per_component(g: &Graph, solve: fn(&Indexed) -> Vec<usize>) -> OptResult {
    let components = g.connected_components();
    let mut witness = BTreeSet::new();
    if components.len() <= 1 {
        let idx = Indexed::from(g);
        witness = idx.vertex_set(&solve(&idx));
    } else {
        for component in components {
            let sub = g.induced_by_vertices(&component).expect("own vertices");
            let idx = Indexed::from(&sub);
            witness.extend(idx.vertex_set(&solve(&idx)));
        }
    }
    OptResult::vertices(witness.len(), witness)
}

/// Maximum-cardinality matching on general graphs (blossom contraction).
pub fn max_matching(g: &Graph) -> OptResult {
    let idx = Indexed::from(g);
    let pairs = matching::solve(&idx);
    OptResult::edges(
        BigRational::from_integer(pairs.len().into()),
        idx.edge_set(&pairs),
    )
}

/// Minimum-weight spanning tree grown from the lexicographically smallest
/// vertex, ties broken by (weight, lexicographic endpoint pair). Fails on
/// disconnected graphs and on edges without a weight.
pub fn mst_weight(g: &Graph) -> Result<OptResult> {
    if g.vertex_count() == 0 {
        return Ok(OptResult::edges(BigRational::zero(), BTreeSet::new()));
    }
    let tree = spanning_tree::prim(g)?;
    let total = tree
        .iter()
        .map(|k| g.weight(k).expect("prim only picks weighted edges").clone())
        .fold(BigRational::zero(), |acc, w| acc + w);
    Ok(OptResult::edges(total, tree))
}

/// Index-based view of a graph used by the combinatorial solvers. Vertices
/// are numbered in lexicographic order, edges sorted by endpoint pair.
pub(crate) struct Indexed {
    pub names: Vec<VertexId>,
    pub adj: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl Indexed {
    pub fn from(g: &Graph) -> Self {
        let names: Vec<VertexId> = g.vertices().iter().cloned().collect();
        let index_of = |v: &VertexId| names.binary_search(v).expect("endpoint is a vertex");
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .keys()
            .map(|k| {
                let (a, b) = k.endpoints();
                (index_of(a), index_of(b))
            })
            .collect();
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Indexed { names, adj, edges }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_set(&self, picked: &[usize]) -> BTreeSet<VertexId> {
        picked.iter().map(|&i| self.names[i].clone()).collect()
    }

    pub fn edge_set(&self, pairs: &[(usize, usize)]) -> BTreeSet<EdgeKey> {
        pairs
            .iter()
            .map(|&(u, v)| {
                EdgeKey::new(self.names[u].clone(), self.names[v].clone())
                    .expect("distinct endpoints")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Goal;
    use crate::graph::graph_from_tokens;
    use crate::ratio::int;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        let edge_refs: Vec<(&str, &str)> =
            edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        graph_from_tokens(&refs, &edge_refs).unwrap()
    }

    fn example1_g1() -> Graph {
        graph_from_tokens(
            &["v1", "v2", "v3", "v4"],
            &[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v1", "v3")],
        )
        .unwrap()
    }

    fn example2_g1() -> Graph {
        graph_from_tokens(
            &["v1", "v2", "w1", "w2", "u1", "u2"],
            &[
                ("v1", "v2"),
                ("v1", "u2"),
                ("v2", "u2"),
                ("v2", "w1"),
                ("v2", "w2"),
                ("w1", "w2"),
                ("u1", "u2"),
            ],
        )
        .unwrap()
    }

    /// Example 3's complete graph: supply edges weigh 2, inner edges 1.
    fn example3() -> Graph {
        let vs: Vec<VertexId> = ["s", "v1", "v2", "w1"]
            .iter()
            .map(|t| VertexId::new(*t).unwrap())
            .collect();
        let mut edges = Vec::new();
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                let w = if vs[i].as_str() == "s" { int(2) } else { int(1) };
                edges.push(crate::graph::Edge::weighted(vs[i].clone(), vs[j].clone(), w).unwrap());
            }
        }
        Graph::new(vs, edges).unwrap()
    }

    fn check_cover(g: &Graph, r: &OptResult) {
        let Witness::Vertices(cover) = &r.witness else {
            panic!("expected vertex witness")
        };
        for k in g.edges().keys() {
            let (a, b) = k.endpoints();
            assert!(cover.contains(a) || cover.contains(b), "edge {k} uncovered");
        }
        assert_eq!(int(cover.len() as i64), r.value);
    }

    #[test]
    fn vc_example1_g1_is_two() {
        let r = min_vertex_cover(&example1_g1());
        assert_eq!(r.value, int(2));
        check_cover(&example1_g1(), &r);
    }

    #[test]
    fn vc_single_edge_and_c5() {
        let g = graph_from_tokens(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(min_vertex_cover(&g).value, int(1));
        // frozen from the brute-force oracle
        let c5 = cycle(5);
        assert_eq!(min_vertex_cover(&c5).value, int(3));
        assert_eq!(brute_solve(Goal::MinVertexCover, &c5).unwrap().value, int(3));
    }

    #[test]
    fn vc_empty_graph() {
        let r = min_vertex_cover(&Graph::empty());
        assert_eq!(r.value, int(0));
        assert!(r.witness.is_empty());
    }

    #[test]
    fn ds_example2_g1_is_two() {
        let g = example2_g1();
        let r = min_dominating_set(&g);
        assert_eq!(r.value, int(2));
        let Witness::Vertices(ds) = &r.witness else {
            panic!()
        };
        for v in g.vertices() {
            assert!(
                ds.contains(v) || g.neighbors(v).iter().any(|n| ds.contains(n)),
                "vertex {v} undominated"
            );
        }
    }

    #[test]
    fn ds_star_and_c4() {
        let star = graph_from_tokens(
            &["c", "l1", "l2", "l3", "l4"],
            &[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
        )
        .unwrap();
        assert_eq!(min_dominating_set(&star).value, int(1));
        // frozen from the brute-force oracle
        let c4 = cycle(4);
        assert_eq!(min_dominating_set(&c4).value, int(2));
        assert_eq!(brute_solve(Goal::MinDominatingSet, &c4).unwrap().value, int(2));
    }

    #[test]
    fn ds_isolated_vertices_are_forced() {
        let g = graph_from_tokens(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let r = min_dominating_set(&g);
        assert_eq!(r.value, int(2));
        let Witness::Vertices(ds) = &r.witness else {
            panic!()
        };
        assert!(ds.contains(&VertexId::new("c").unwrap()));
    }

    #[test]
    fn matching_example4_g1_is_two() {
        let g = graph_from_tokens(
            &["w1", "v1", "u1", "u2"],
            &[("w1", "v1"), ("v1", "u1"), ("w1", "u1"), ("u1", "u2")],
        )
        .unwrap();
        assert_eq!(max_matching(&g).value, int(2));
    }

    #[test]
    fn matching_triangle_and_c5() {
        let tri = graph_from_tokens(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(max_matching(&tri).value, int(1));
        // frozen from the brute-force oracle
        let c5 = cycle(5);
        assert_eq!(max_matching(&c5).value, int(2));
        assert_eq!(brute_solve(Goal::MaxMatching, &c5).unwrap().value, int(2));
    }

    #[test]
    fn matching_needs_blossoms() {
        // Two triangles joined by a bridge: greedy bipartite-style augmenting
        // fails without contraction; the maximum matching has size 3.
        let g = graph_from_tokens(
            &["a", "b", "c", "d", "e", "f"],
            &[
                ("a", "b"),
                ("b", "c"),
                ("a", "c"),
                ("c", "d"),
                ("d", "e"),
                ("e", "f"),
                ("d", "f"),
            ],
        )
        .unwrap();
        assert_eq!(max_matching(&g).value, int(3));
        assert_eq!(brute_solve(Goal::MaxMatching, &g).unwrap().value, int(3));
    }

    #[test]
    fn mst_example3_is_four() {
        let r = mst_weight(&example3()).unwrap();
        assert_eq!(r.value, int(4));
        let Witness::Edges(tree) = &r.witness else {
            panic!()
        };
        assert_eq!(tree.len(), 3);
    }

    #[test]
    fn mst_single_vertex_and_k3() {
        let single = Graph::new([VertexId::new("a").unwrap()], []).unwrap();
        let r = mst_weight(&single).unwrap();
        assert_eq!(r.value, int(0));
        assert!(r.witness.is_empty());

        let vs: Vec<VertexId> = ["a", "b", "c"].iter().map(|t| VertexId::new(*t).unwrap()).collect();
        let g = Graph::new(
            vs.clone(),
            [
                crate::graph::Edge::weighted(vs[0].clone(), vs[1].clone(), int(1)).unwrap(),
                crate::graph::Edge::weighted(vs[1].clone(), vs[2].clone(), int(2)).unwrap(),
                crate::graph::Edge::weighted(vs[0].clone(), vs[2].clone(), int(3)).unwrap(),
            ],
        )
        .unwrap();
        // frozen by enumerating all three spanning trees: 3, 4, 5
        assert_eq!(mst_weight(&g).unwrap().value, int(3));
    }

    #[test]
    fn mst_errors() {
        let disconnected = graph_from_tokens(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        // give them weights so only connectivity fails
        let g = {
            let vs: Vec<VertexId> = ["a", "b", "c", "d"].iter().map(|t| VertexId::new(*t).unwrap()).collect();
            Graph::new(
                vs.clone(),
                [
                    crate::graph::Edge::weighted(vs[0].clone(), vs[1].clone(), int(1)).unwrap(),
                    crate::graph::Edge::weighted(vs[2].clone(), vs[3].clone(), int(1)).unwrap(),
                ],
            )
            .unwrap()
        };
        assert!(mst_weight(&g).is_err());
        // missing weight
        assert!(mst_weight(&disconnected.unwrap()).is_err());
    }

    #[test]
    fn brute_examples() {
        let p4 = graph_from_tokens(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(brute_solve(Goal::MinDominatingSet, &p4).unwrap().value, int(2));
        let p3 = graph_from_tokens(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(brute_solve(Goal::MinVertexCover, &p3).unwrap().value, int(1));
        assert_eq!(brute_solve(Goal::MinSpanningTree, &example3()).unwrap().value, int(4));
    }

    #[test]
    fn brute_size_caps() {
        let names: Vec<String> = (0..17).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let g = graph_from_tokens(&refs, &[]).unwrap();
        assert!(brute_solve(Goal::MinVertexCover, &g).is_err());
        assert!(brute_solve(Goal::MinDominatingSet, &g).is_err());
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((names[i].as_str(), names[j].as_str()));
                }
            }
        }
        graph_from_tokens(&refs, &edges).unwrap()
    }

    #[test]
    fn solvers_match_brute_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..60 {
            let n = 2 + round % 8;
            let g = random_graph(&mut rng, n, 0.45);
            let vc = min_vertex_cover(&g);
            assert_eq!(vc.value, brute_solve(Goal::MinVertexCover, &g).unwrap().value);
            check_cover(&g, &vc);
            assert_eq!(
                min_dominating_set(&g).value,
                brute_solve(Goal::MinDominatingSet, &g).unwrap().value
            );
            if g.edge_count() <= 16 {
                let m = max_matching(&g);
                assert_eq!(m.value, brute_solve(Goal::MaxMatching, &g).unwrap().value);
                // weak duality: cover size >= matching size
                assert!(vc.value >= m.value);
                assert!(m.value <= int((n / 2) as i64));
            }
        }
    }

    #[test]
    fn vertex_cover_is_monotone_over_edge_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let g = random_graph(&mut rng, 7, 0.5);
            let all: Vec<_> = g.edges().keys().cloned().collect();
            let small: std::collections::BTreeSet<_> = all
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            let big: std::collections::BTreeSet<_> = all.into_iter().collect();
            let sub_small = g.induced_by_edges(&small).unwrap();
            let sub_big = g.induced_by_edges(&big).unwrap();
            assert!(min_vertex_cover(&sub_small).value <= min_vertex_cover(&sub_big).value);
        }
    }

    #[test]
    fn mst_witness_is_a_spanning_tree() {
        let g = example3();
        let r = mst_weight(&g).unwrap();
        let Witness::Edges(tree) = &r.witness else {
            panic!()
        };
        assert_eq!(tree.len(), g.vertex_count() - 1);
        let sub = g.induced_by_edges(tree).unwrap();
        // spanning: the tree touches every vertex and is connected;
        // |V|-1 edges + connected implies acyclic
        assert_eq!(sub.vertices(), g.vertices());
        assert_eq!(sub.connected_components().len(), 1);
    }

    #[test]
    fn mst_matches_brute_on_random_complete_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..30 {
            let n = 2 + round % 5;
            let names: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("v{i}")).unwrap()).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let w: BigRational = int(rng.gen_range(1..9));
                    edges.push(crate::graph::Edge::weighted(names[i].clone(), names[j].clone(), w).unwrap());
                }
            }
            let g = Graph::new(names, edges).unwrap();
            let prim = mst_weight(&g).unwrap();
            let brute = brute_solve(Goal::MinSpanningTree, &g).unwrap();
            assert_eq!(prim.value, brute.value);
            let Witness::Edges(tree) = &prim.witness else {
                panic!()
            };
            assert_eq!(tree.len(), n - 1);
        }
    }
}
