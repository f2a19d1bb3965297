//! The worked example instances used throughout the test suites, each with
//! its canonical allocation where one is singled out.

use crate::game::{Assignment, GameInstance, Goal, Ownership};
use crate::graph::{Edge, EdgeKey, Graph, VertexId};
use crate::ratio::{frac, int};
use crate::stability::Allocation;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    Ex1G1,
    Ex1G2,
    Ex2G1,
    Ex2G2,
    Ex3,
    Ex4G1,
    Ex4G2,
}

impl ExampleId {
    pub const ALL: [ExampleId; 7] = [
        ExampleId::Ex1G1,
        ExampleId::Ex1G2,
        ExampleId::Ex2G1,
        ExampleId::Ex2G2,
        ExampleId::Ex3,
        ExampleId::Ex4G1,
        ExampleId::Ex4G2,
    ];

    pub fn parse(s: &str) -> crate::Result<Self> {
        match s {
            "1g1" => Ok(ExampleId::Ex1G1),
            "1g2" => Ok(ExampleId::Ex1G2),
            "2g1" => Ok(ExampleId::Ex2G1),
            "2g2" => Ok(ExampleId::Ex2G2),
            "3" => Ok(ExampleId::Ex3),
            "4g1" => Ok(ExampleId::Ex4G1),
            "4g2" => Ok(ExampleId::Ex4G2),
            other => Err(crate::Error::input(format!(
                "unknown example id '{other}' (expected 1g1, 1g2, 2g1, 2g2, 3, 4g1, 4g2)"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleId::Ex1G1 => "1g1",
            ExampleId::Ex1G2 => "1g2",
            ExampleId::Ex2G1 => "2g1",
            ExampleId::Ex2G2 => "2g2",
            ExampleId::Ex3 => "3",
            ExampleId::Ex4G1 => "4g1",
            ExampleId::Ex4G2 => "4g2",
        }
    }
}

fn v(t: &str) -> VertexId {
    VertexId::new(t).expect("fixed token")
}

fn key(a: &str, b: &str) -> EdgeKey {
    EdgeKey::new(v(a), v(b)).expect("distinct")
}

fn unweighted(tokens: &[&str], pairs: &[(&str, &str)]) -> Graph {
    Graph::new(
        tokens.iter().map(|t| v(t)),
        pairs
            .iter()
            .map(|(a, b)| Edge::unweighted(v(a), v(b)).expect("distinct")),
    )
    .expect("fixed example graph")
}

fn edge_ownership(agents: &[(&str, &[(&str, &str)])]) -> Ownership {
    Ownership {
        agents: agents.iter().map(|(a, _)| a.to_string()).collect(),
        assignment: Assignment::Edges(
            agents
                .iter()
                .map(|(a, pairs)| {
                    (
                        a.to_string(),
                        pairs.iter().map(|(x, y)| key(x, y)).collect(),
                    )
                })
                .collect(),
        ),
    }
}

fn vertex_ownership(agents: &[(&str, &[&str])]) -> Ownership {
    Ownership {
        agents: agents.iter().map(|(a, _)| a.to_string()).collect(),
        assignment: Assignment::Vertices(
            agents
                .iter()
                .map(|(a, vs)| {
                    (
                        a.to_string(),
                        vs.iter().map(|t| v(t)).collect::<BTreeSet<_>>(),
                    )
                })
                .collect(),
        ),
    }
}

/// Reconstructs the named instance, plus its canonical allocation where one
/// exists (the unique core point, or a representative core-stable point).
pub fn worked_example(id: ExampleId) -> (GameInstance, Option<Allocation>) {
    match id {
        ExampleId::Ex1G1 => {
            let graph = unweighted(
                &["v1", "v2", "v3", "v4"],
                &[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v1", "v3")],
            );
            let ownership = edge_ownership(&[
                ("1", &[("v1", "v2")]),
                ("2", &[("v2", "v3"), ("v3", "v4")]),
                ("3", &[("v1", "v3")]),
            ]);
            let inst = GameInstance::new(graph, Goal::MinVertexCover, ownership, None);
            let alloc = Allocation::from_pairs([("1", int(1)), ("2", int(1)), ("3", int(0))]).unwrap();
            (inst, Some(alloc))
        }
        ExampleId::Ex1G2 => {
            let graph = unweighted(&["v1", "v2", "v3"], &[("v1", "v2"), ("v2", "v3"), ("v1", "v3")]);
            let ownership = edge_ownership(&[
                ("1", &[("v1", "v2")]),
                ("2", &[("v2", "v3")]),
                ("3", &[("v1", "v3")]),
            ]);
            (GameInstance::new(graph, Goal::MinVertexCover, ownership, None), None)
        }
        ExampleId::Ex2G1 => {
            let graph = unweighted(
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
            );
            let ownership = vertex_ownership(&[
                ("1", &["w1", "w2"]),
                ("2", &["v1", "v2"]),
                ("3", &["u1", "u2"]),
            ]);
            let inst = GameInstance::new(graph, Goal::MinDominatingSet, ownership, None);
            let alloc = Allocation::from_pairs([("1", int(1)), ("2", int(0)), ("3", int(1))]).unwrap();
            (inst, Some(alloc))
        }
        ExampleId::Ex2G2 => {
            let graph = unweighted(
                &["v1", "v2", "w1", "w2", "u1", "u2"],
                &[
                    ("v1", "v2"),
                    ("v1", "u2"),
                    ("v2", "u2"),
                    ("v2", "w1"),
                    ("v2", "w2"),
                    ("w1", "w2"),
                    ("u1", "u2"),
                    ("v1", "u1"),
                    ("v1", "w1"),
                    ("w2", "u1"),
                    ("w2", "u2"),
                    ("w1", "u1"),
                ],
            );
            let ownership = vertex_ownership(&[
                ("1", &["w1", "w2"]),
                ("2", &["v1", "v2"]),
                ("3", &["u1", "u2"]),
            ]);
            (GameInstance::new(graph, Goal::MinDominatingSet, ownership, None), None)
        }
        ExampleId::Ex3 => {
            let tokens = ["s", "v1", "v2", "w1"];
            let mut edges = Vec::new();
            for i in 0..tokens.len() {
                for j in (i + 1)..tokens.len() {
                    let w = if tokens[i] == "s" { int(2) } else { int(1) };
                    edges.push(Edge::weighted(v(tokens[i]), v(tokens[j]), w).unwrap());
                }
            }
            let graph = Graph::new(tokens.iter().map(|t| v(t)), edges).unwrap();
            let ownership = vertex_ownership(&[("1", &["v1", "v2"]), ("2", &["w1"])]);
            let inst =
                GameInstance::new(graph, Goal::MinSpanningTree, ownership, Some(v("s")));
            let alloc = Allocation::from_pairs([("1", int(2)), ("2", int(2))]).unwrap();
            (inst, Some(alloc))
        }
        ExampleId::Ex4G1 => {
            let graph = unweighted(
                &["w1", "v1", "u1", "u2"],
                &[("w1", "v1"), ("v1", "u1"), ("w1", "u1"), ("u1", "u2")],
            );
            let ownership =
                vertex_ownership(&[("1", &["w1"]), ("2", &["v1"]), ("3", &["u1", "u2"])]);
            let inst = GameInstance::new(graph, Goal::MaxMatching, ownership, None);
            let alloc =
                Allocation::from_pairs([("1", frac(1, 2)), ("2", frac(1, 2)), ("3", int(1))])
                    .unwrap();
            (inst, Some(alloc))
        }
        ExampleId::Ex4G2 => {
            let graph = unweighted(&["w1", "v1", "u1"], &[("w1", "v1"), ("v1", "u1"), ("w1", "u1")]);
            let ownership = vertex_ownership(&[("1", &["w1"]), ("2", &["v1"]), ("3", &["u1"])]);
            (GameInstance::new(graph, Goal::MaxMatching, ownership, None), None)
        }
    }
}
