//! Seeded instance generators backing the property suites, the acceptance
//! tests, and the benches. Deterministic by construction: the same seed
//! always yields the same instance.

use crate::game::{AgentId, Assignment, GameInstance, Goal, Ownership};
use crate::graph::{Edge, EdgeKey, Graph, VertexId};
use crate::ratio::{frac, int};
use std::collections::{BTreeMap, BTreeSet};

/// SplitMix64: small, fast, and good enough for sampling test instances.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform in `[lo, hi]`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// A random simple graph on `n` vertices named `v0..`, each edge present
/// with probability `p_num/p_den`.
pub fn random_graph(rng: &mut Rng, n: usize, p_num: u64, p_den: u64) -> Graph {
    let names: Vec<VertexId> = (0..n)
        .map(|i| VertexId::new(format!("v{i}")).unwrap())
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.chance(p_num, p_den) {
                edges.push(Edge::unweighted(names[i].clone(), names[j].clone()).unwrap());
            }
        }
    }
    Graph::new(names, edges).unwrap()
}

/// A complete graph on `n` vertices with small random weights, occasionally
/// half-integral to exercise exact rational arithmetic.
pub fn random_complete_weighted(rng: &mut Rng, names: &[VertexId]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            let w = if rng.chance(1, 4) {
                frac(rng.range(1, 16) as i64, 2)
            } else {
                int(rng.range(1, 9) as i64)
            };
            edges.push(Edge::weighted(names[i].clone(), names[j].clone(), w).unwrap());
        }
    }
    Graph::new(names.to_vec(), edges).unwrap()
}

/// A random valid instance of the given goal with exactly `n_agents` agents
/// (named "1", "2", ...) on roughly `n_vertices` vertices. Spanning-tree
/// instances get an extra unowned supply vertex "s" and a complete weighted
/// graph; the other goals get a sparse random graph with elements assigned
/// to agents uniformly.
pub fn random_instance(rng: &mut Rng, goal: Goal, n_agents: usize, n_vertices: usize) -> GameInstance {
    let agents: Vec<AgentId> = (1..=n_agents).map(|i| i.to_string()).collect();
    match goal {
        Goal::MinSpanningTree => {
            let mut names = vec![VertexId::new("s").unwrap()];
            names.extend((0..n_vertices).map(|i| VertexId::new(format!("v{i}")).unwrap()));
            let graph = random_complete_weighted(rng, &names);
            let mut map: BTreeMap<AgentId, BTreeSet<VertexId>> =
                agents.iter().map(|a| (a.clone(), BTreeSet::new())).collect();
            for v in &names[1..] {
                let pick = agents[rng.below(n_agents as u64) as usize].clone();
                map.get_mut(&pick).unwrap().insert(v.clone());
            }
            GameInstance::new(
                graph,
                goal,
                Ownership {
                    agents,
                    assignment: Assignment::Vertices(map),
                },
                Some(VertexId::new("s").unwrap()),
            )
        }
        Goal::MinVertexCover => {
            let graph = random_graph(rng, n_vertices, 2, 5);
            let mut map: BTreeMap<AgentId, BTreeSet<EdgeKey>> =
                agents.iter().map(|a| (a.clone(), BTreeSet::new())).collect();
            for k in graph.edges().keys() {
                let pick = agents[rng.below(n_agents as u64) as usize].clone();
                map.get_mut(&pick).unwrap().insert(k.clone());
            }
            GameInstance::new(
                graph,
                goal,
                Ownership {
                    agents,
                    assignment: Assignment::Edges(map),
                },
                None,
            )
        }
        Goal::MinDominatingSet | Goal::MaxMatching => {
            let graph = random_graph(rng, n_vertices, 2, 5);
            let mut map: BTreeMap<AgentId, BTreeSet<VertexId>> =
                agents.iter().map(|a| (a.clone(), BTreeSet::new())).collect();
            for v in graph.vertices() {
                let pick = agents[rng.below(n_agents as u64) as usize].clone();
                map.get_mut(&pick).unwrap().insert(v.clone());
            }
            GameInstance::new(
                graph,
                goal,
                Ownership {
                    agents,
                    assignment: Assignment::Vertices(map),
                },
                None,
            )
        }
    }
}

/// A dominating-set instance where every vertex is its own agent (the
/// unpartitioned game, max agent size 1). Agent ids equal vertex tokens.
pub fn cog_ds_instance(graph: Graph) -> GameInstance {
    let agents: Vec<AgentId> = graph.vertices().iter().map(|v| v.to_string()).collect();
    let map: BTreeMap<AgentId, BTreeSet<VertexId>> = graph
        .vertices()
        .iter()
        .map(|v| (v.to_string(), BTreeSet::from([v.clone()])))
        .collect();
    GameInstance::new(
        graph,
        Goal::MinDominatingSet,
        Ownership {
            agents,
            assignment: Assignment::Vertices(map),
        },
        None,
    )
}

/// Disjoint union of two instances of the same (non-tree) goal: vertex names
/// and agent ids are prefixed to keep the parts independent.
pub fn disjoint_union(a: &GameInstance, b: &GameInstance) -> GameInstance {
    assert_eq!(a.goal, b.goal);
    assert_ne!(a.goal, Goal::MinSpanningTree, "tree games are connected");
    let rename_v = |prefix: &str, v: &VertexId| VertexId::new(format!("{prefix}{v}")).unwrap();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (prefix, inst) in [("p0_", a), ("p1_", b)] {
        for v in inst.graph.vertices() {
            vertices.push(rename_v(prefix, v));
        }
        for (k, w) in inst.graph.edges() {
            let (u, v) = k.endpoints();
            let e = match w {
                Some(w) => {
                    Edge::weighted(rename_v(prefix, u), rename_v(prefix, v), w.clone()).unwrap()
                }
                None => Edge::unweighted(rename_v(prefix, u), rename_v(prefix, v)).unwrap(),
            };
            edges.push(e);
        }
    }
    let graph = Graph::new(vertices, edges).unwrap();

    let mut agents = Vec::new();
    let assignment = if a.goal.owns_edges() {
        let mut map: BTreeMap<AgentId, BTreeSet<EdgeKey>> = BTreeMap::new();
        for (prefix, inst) in [("p0_", a), ("p1_", b)] {
            let Assignment::Edges(src) = &inst.ownership.assignment else {
                panic!("edge goal with vertex assignment")
            };
            for agent in &inst.ownership.agents {
                let id = format!("{prefix}{agent}");
                agents.push(id.clone());
                let owned = src
                    .get(agent)
                    .map(|es| {
                        es.iter()
                            .map(|k| {
                                let (u, v) = k.endpoints();
                                EdgeKey::new(rename_v(prefix, u), rename_v(prefix, v)).unwrap()
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                map.insert(id, owned);
            }
        }
        Assignment::Edges(map)
    } else {
        let mut map: BTreeMap<AgentId, BTreeSet<VertexId>> = BTreeMap::new();
        for (prefix, inst) in [("p0_", a), ("p1_", b)] {
            let Assignment::Vertices(src) = &inst.ownership.assignment else {
                panic!("vertex goal with edge assignment")
            };
            for agent in &inst.ownership.agents {
                let id = format!("{prefix}{agent}");
                agents.push(id.clone());
                let owned = src
                    .get(agent)
                    .map(|vs| vs.iter().map(|v| rename_v(prefix, v)).collect())
                    .unwrap_or_default();
                map.insert(id, owned);
            }
        }
        Assignment::Vertices(map)
    };
    GameInstance::new(graph, a.goal, Ownership { agents, assignment }, None)
}
