//! Finite simple undirected graphs with optional nonnegative rational edge
//! weights, plus the two induced-subgraph notions the games are built on:
//! induction by a vertex set (keep edges inside the set) and induction by an
//! edge set (keep exactly those edges and their endpoints).

use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// A vertex name: nonempty, printable, no whitespace or commas. Ordering is
/// lexicographic on the token, which fixes the order of every set we emit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() {
            return Err(Error::input("vertex token must be nonempty"));
        }
        if token
            .chars()
            .any(|c| c.is_whitespace() || c == ',' || c.is_control())
        {
            return Err(Error::input(format!(
                "vertex token '{token}' contains whitespace, a comma, or a control character"
            )));
        }
        Ok(VertexId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical unordered endpoint pair: `a < b` always holds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    a: VertexId,
    b: VertexId,
}

impl EdgeKey {
    pub fn new(u: VertexId, v: VertexId) -> Result<Self> {
        if u == v {
            return Err(Error::input(format!("self-loop at vertex '{u}'")));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        Ok(EdgeKey { a, b })
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.a, &self.b)
    }

    pub fn touches(&self, v: &VertexId) -> bool {
        &self.a == v || &self.b == v
    }

    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.a == v {
            Some(&self.b)
        } else if &self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// An edge as supplied by the caller; the weight is optional and must be
/// nonnegative when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub key: EdgeKey,
    pub weight: Option<BigRational>,
}

impl Edge {
    pub fn unweighted(u: VertexId, v: VertexId) -> Result<Self> {
        Ok(Edge {
            key: EdgeKey::new(u, v)?,
            weight: None,
        })
    }

    pub fn weighted(u: VertexId, v: VertexId, w: BigRational) -> Result<Self> {
        if w.is_negative() {
            return Err(Error::input(format!("negative weight on edge {u}-{v}")));
        }
        Ok(Edge {
            key: EdgeKey::new(u, v)?,
            weight: Some(w),
        })
    }
}

/// A finite simple undirected graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeKey, Option<BigRational>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges, and edges whose
    /// endpoints are not declared vertices.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut map = BTreeMap::new();
        for e in edges {
            let (a, b) = e.key.endpoints();
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(Error::input(format!("edge {} has an unknown endpoint", e.key)));
            }
            if map.insert(e.key.clone(), e.weight).is_some() {
                return Err(Error::input(format!("duplicate edge {}", e.key)));
            }
        }
        Ok(Graph { vertices, edges: map })
    }

    pub fn empty() -> Self {
        Graph {
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeKey, Option<BigRational>> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, key: &EdgeKey) -> bool {
        self.edges.contains_key(key)
    }

    pub fn weight(&self, key: &EdgeKey) -> Option<&BigRational> {
        self.edges.get(key).and_then(|w| w.as_ref())
    }

    /// Neighbors of `v`, sorted.
    pub fn neighbors(&self, v: &VertexId) -> BTreeSet<VertexId> {
        self.edges
            .keys()
            .filter_map(|k| k.other(v).cloned())
            .collect()
    }

    /// The subgraph induced by a vertex set: those vertices, and every edge
    /// with both endpoints inside.
    pub fn induced_by_vertices(&self, vs: &BTreeSet<VertexId>) -> Result<Graph> {
        for v in vs {
            if !self.vertices.contains(v) {
                return Err(Error::input(format!("unknown vertex '{v}'")));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(k, _)| {
                let (a, b) = k.endpoints();
                vs.contains(a) && vs.contains(b)
            })
            .map(|(k, w)| ((*k).clone(), w.clone()))
            .collect();
        Ok(Graph {
            vertices: vs.clone(),
            edges,
        })
    }

    /// The subgraph induced by an edge set: exactly those edges, with the
    /// union of their endpoints as vertex set.
    pub fn induced_by_edges(&self, es: &BTreeSet<EdgeKey>) -> Result<Graph> {
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeMap::new();
        for k in es {
            match self.edges.get(k) {
                Some(w) => {
                    let (a, b) = k.endpoints();
                    vertices.insert(a.clone());
                    vertices.insert(b.clone());
                    edges.insert(k.clone(), w.clone());
                }
                None => return Err(Error::input(format!("unknown edge {k}"))),
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// Maximal connected vertex sets, each sorted, listed by smallest member.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut adjacency: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for k in self.edges.keys() {
            let (a, b) = k.endpoints();
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut components = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut component = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                component.insert(v.clone());
                if let Some(ns) = adjacency.get(v) {
                    for n in ns {
                        if seen.insert(n) {
                            queue.push_back(n);
                        }
                    }
                }
            }
            components.push(component);
        }
        // BTreeSet iteration already yields starts in lexicographic order, so
        // the list is sorted by smallest member.
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

/// Convenience constructor used throughout the tests: vertices and edges from
/// string tokens, no weights.
pub fn graph_from_tokens(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Graph> {
    let vs: Result<Vec<VertexId>> = vertices.iter().map(|t| VertexId::new(*t)).collect();
    let es: Result<Vec<Edge>> = edges
        .iter()
        .map(|(u, v)| Edge::unweighted(VertexId::new(*u)?, VertexId::new(*v)?))
        .collect();
    Graph::new(vs?, es?)
}
