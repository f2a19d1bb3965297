//! The on-disk JSON formats: instances, allocations, and emptiness
//! certificates. Serialization is canonical (keys sorted, element lists
//! sorted, rationals reduced "p/q"), so rewriting a canonical file is
//! byte-identical.

use crate::CliError;
use pcog_core::game::{Assignment, Coalition, GameInstance, Goal, Ownership};
use pcog_core::graph::{Edge, EdgeKey, Graph, VertexId};
use pcog_core::ratio::{format_rational, parse_rational};
use pcog_core::stability::{Allocation, EmptinessCertificate};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// A full game instance. Field order is the canonical key order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// `[u, v]` or `[u, v, weight]` with weight an exact rational string.
    pub edges: Vec<Vec<String>>,
    pub goal: String,
    /// Agent id to owned elements: vertex names, or canonical "u-v" edge
    /// keys for the edge-partition goal. Sorted keys define agent order.
    pub ownership: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supply: Option<String>,
    pub vertices: Vec<String>,
}

/// Just a graph; instance files parse here too (extra keys are ignored).
#[derive(Debug, Clone, Deserialize)]
pub struct GraphFile {
    pub edges: Vec<Vec<String>>,
    pub vertices: Vec<String>,
}

pub type AllocationFile = BTreeMap<String, String>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertCoalitionEntry {
    pub agents: Vec<String>,
    pub multiplier: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub coalitions: Vec<CertCoalitionEntry>,
    pub equality_multiplier: String,
    pub grand_value: String,
    pub nonneg_multipliers: BTreeMap<String, String>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed JSON in {}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, to_canonical_json(value))
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn goal_from_str(s: &str) -> Result<Goal, CliError> {
    match s {
        "min-vertex-cover" => Ok(Goal::MinVertexCover),
        "min-dominating-set" => Ok(Goal::MinDominatingSet),
        "min-spanning-tree" => Ok(Goal::MinSpanningTree),
        "max-matching" => Ok(Goal::MaxMatching),
        other => Err(CliError::Usage(format!(
            "unknown goal '{other}' (expected min-vertex-cover, min-dominating-set, min-spanning-tree, max-matching)"
        ))),
    }
}

fn graph_from_parts(vertices: &[String], edges: &[Vec<String>]) -> Result<Graph, CliError> {
    let vs: Result<Vec<VertexId>, _> = vertices.iter().map(VertexId::new).collect();
    let vs = vs.map_err(|e| CliError::Usage(e.to_string()))?;
    let mut es = Vec::new();
    for spec in edges {
        let edge = match spec.as_slice() {
            [u, v] => Edge::unweighted(
                VertexId::new(u).map_err(|e| CliError::Usage(e.to_string()))?,
                VertexId::new(v).map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            [u, v, w] => Edge::weighted(
                VertexId::new(u).map_err(|e| CliError::Usage(e.to_string()))?,
                VertexId::new(v).map_err(|e| CliError::Usage(e.to_string()))?,
                parse_rational(w).map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            other => {
                return Err(CliError::Usage(format!(
                    "edge entry must have 2 or 3 fields, got {}",
                    other.len()
                )))
            }
        };
        es.push(edge.map_err(|e| CliError::Precondition(e.to_string()))?);
    }
    Graph::new(vs, es).map_err(|e| CliError::Precondition(e.to_string()))
}

pub fn graph_from_file(file: &GraphFile) -> Result<Graph, CliError> {
    graph_from_parts(&file.vertices, &file.edges)
}

/// Parses and validates; a file that fails `validate` is rejected.
pub fn instance_from_file(file: &InstanceFile) -> Result<GameInstance, CliError> {
    let goal = goal_from_str(&file.goal)?;
    let graph = graph_from_parts(&file.vertices, &file.edges)?;
    let agents: Vec<String> = file.ownership.keys().cloned().collect();
    let assignment = if goal.owns_edges() {
        let by_key: BTreeMap<String, EdgeKey> = graph
            .edges()
            .keys()
            .map(|k| (k.to_string(), k.clone()))
            .collect();
        let mut map = BTreeMap::new();
        for (agent, elements) in &file.ownership {
            let mut set = std::collections::BTreeSet::new();
            for e in elements {
                let key = by_key.get(e).ok_or_else(|| {
                    CliError::Precondition(format!(
                        "agent '{agent}' owns unknown edge '{e}' (use the canonical \"u-v\" key)"
                    ))
                })?;
                set.insert(key.clone());
            }
            map.insert(agent.clone(), set);
        }
        Assignment::Edges(map)
    } else {
        let mut map = BTreeMap::new();
        for (agent, elements) in &file.ownership {
            let mut set = std::collections::BTreeSet::new();
            for v in elements {
                set.insert(VertexId::new(v).map_err(|e| CliError::Usage(e.to_string()))?);
            }
            map.insert(agent.clone(), set);
        }
        Assignment::Vertices(map)
    };
    let supply = file
        .supply
        .as_ref()
        .map(|s| VertexId::new(s).map_err(|e| CliError::Usage(e.to_string())))
        .transpose()?;
    let inst = GameInstance::new(graph, goal, Ownership { agents, assignment }, supply);
    let violations = inst.validate();
    if !violations.is_empty() {
        return Err(CliError::Precondition(format!(
            "instance invalid: {}",
            violations.join("; ")
        )));
    }
    Ok(inst)
}

pub fn instance_to_file(inst: &GameInstance) -> InstanceFile {
    let vertices: Vec<String> = inst.graph.vertices().iter().map(|v| v.to_string()).collect();
    let edges: Vec<Vec<String>> = inst
        .graph
        .edges()
        .iter()
        .map(|(k, w)| {
            let (u, v) = k.endpoints();
            match w {
                Some(w) => vec![u.to_string(), v.to_string(), format_rational(w)],
                None => vec![u.to_string(), v.to_string()],
            }
        })
        .collect();
    let ownership: BTreeMap<String, Vec<String>> = match &inst.ownership.assignment {
        Assignment::Edges(map) => map
            .iter()
            .map(|(a, es)| (a.clone(), es.iter().map(|k| k.to_string()).collect()))
            .collect(),
        Assignment::Vertices(map) => map
            .iter()
            .map(|(a, vs)| (a.clone(), vs.iter().map(|v| v.to_string()).collect()))
            .collect(),
    };
    InstanceFile {
        edges,
        goal: inst.goal.name().to_string(),
        ownership,
        supply: inst.supply.as_ref().map(|s| s.to_string()),
        vertices,
    }
}

pub fn allocation_from_file(
    file: &AllocationFile,
    inst: &GameInstance,
) -> Result<Allocation, CliError> {
    let mut values = BTreeMap::new();
    for (agent, s) in file {
        let v = parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))?;
        values.insert(agent.clone(), v);
    }
    let alloc = Allocation::new(values).map_err(|e| CliError::Precondition(e.to_string()))?;
    // agent coverage is checked by the operations themselves
    let _ = inst;
    Ok(alloc)
}

pub fn allocation_to_file(a: &Allocation) -> AllocationFile {
    a.values()
        .iter()
        .map(|(agent, v)| (agent.clone(), format_rational(v)))
        .collect()
}

pub fn certificate_from_file(
    file: &CertificateFile,
    inst: &GameInstance,
) -> Result<EmptinessCertificate, CliError> {
    let parse = |s: &String| parse_rational(s).map_err(|e| CliError::Usage(e.to_string()));
    let mut coalitions = Vec::new();
    let mut coalition_multipliers = Vec::new();
    for entry in &file.coalitions {
        let ids: Vec<&str> = entry.agents.iter().map(|s| s.as_str()).collect();
        let s = Coalition::from_agent_ids(&inst.ownership, ids)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        coalitions.push((s, parse(&entry.value)?));
        coalition_multipliers.push(parse(&entry.multiplier)?);
    }
    let mut nonneg_multipliers = Vec::with_capacity(inst.agent_count());
    for agent in &inst.ownership.agents {
        let s = file.nonneg_multipliers.get(agent).ok_or_else(|| {
            CliError::Precondition(format!("certificate lacks a nonneg multiplier for '{agent}'"))
        })?;
        nonneg_multipliers.push(parse(s)?);
    }
    Ok(EmptinessCertificate {
        grand_value: parse(&file.grand_value)?,
        coalitions,
        equality_multiplier: parse(&file.equality_multiplier)?,
        coalition_multipliers,
        nonneg_multipliers,
    })
}

pub fn certificate_to_file(
    cert: &EmptinessCertificate,
    inst: &GameInstance,
) -> CertificateFile {
    CertificateFile {
        coalitions: cert
            .coalitions
            .iter()
            .zip(&cert.coalition_multipliers)
            .map(|((s, value), m)| CertCoalitionEntry {
                agents: s.member_ids(&inst.ownership),
                multiplier: format_rational(m),
                value: format_rational(value),
            })
            .collect(),
        equality_multiplier: format_rational(&cert.equality_multiplier),
        grand_value: format_rational(&cert.grand_value),
        nonneg_multipliers: inst
            .ownership
            .agents
            .iter()
            .zip(&cert.nonneg_multipliers)
            .map(|(a, t)| (a.clone(), format_rational(t)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcog_core::reductions::{worked_example, ExampleId};

    #[test]
    fn canonical_serialization_is_idempotent() {
        for id in ExampleId::ALL {
            let (inst, _) = worked_example(id);
            let first = to_canonical_json(&instance_to_file(&inst));
            let parsed: InstanceFile = serde_json::from_str(&first).unwrap();
            let reloaded = instance_from_file(&parsed).unwrap();
            let second = to_canonical_json(&instance_to_file(&reloaded));
            assert_eq!(first, second, "{id:?}");
            assert_eq!(inst.graph, reloaded.graph);
            assert_eq!(inst.goal, reloaded.goal);
            assert_eq!(inst.supply, reloaded.supply);
            assert_eq!(
                inst.ownership.assignment,
                reloaded.ownership.assignment
            );
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"edges": [], "goal": "max-matching", "ownership": {}, "vertices": [], "extra": 1}"#;
        assert!(serde_json::from_str::<InstanceFile>(text).is_err());
    }

    #[test]
    fn edge_ownership_uses_canonical_keys() {
        let (inst, _) = worked_example(ExampleId::Ex1G1);
        let mut file = instance_to_file(&inst);
        file.ownership.get_mut("1").unwrap()[0] = "v2-v1".to_string();
        assert!(instance_from_file(&file).is_err());
    }
}
