//! Partitioned combinatorial optimization game instances: a graph, one of the
//! four goals, and an ownership partition of vertices or edges among agents.
//! Coalition values are the exact optima of the goal on the coalition's
//! induced substructure, memoized per instance by coalition bitmask.

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::optima::{self, OptResult};
use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Enumeration-based operations refuse more agents than this; 2^n coalitions
/// is the intended budget.
pub const MAX_AGENTS: usize = 24;

/// Hard representation limit: coalitions are 32-bit masks.
pub const MASK_BITS: usize = 32;

pub type AgentId = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Goal {
    MinVertexCover,
    MinDominatingSet,
    MinSpanningTree,
    MaxMatching,
}

impl Goal {
    /// Maximization games have a value function, minimization games a cost.
    pub fn is_maximization(self) -> bool {
        matches!(self, Goal::MaxMatching)
    }

    /// Whether agents own edges (vertex cover) or vertices (the rest).
    pub fn owns_edges(self) -> bool {
        matches!(self, Goal::MinVertexCover)
    }

    pub fn name(self) -> &'static str {
        match self {
            Goal::MinVertexCover => "min-vertex-cover",
            Goal::MinDominatingSet => "min-dominating-set",
            Goal::MinSpanningTree => "min-spanning-tree",
            Goal::MaxMatching => "max-matching",
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What one agent owns. Edge sets for vertex cover games, vertex sets for
/// the other three goals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignment {
    Vertices(BTreeMap<AgentId, BTreeSet<VertexId>>),
    Edges(BTreeMap<AgentId, BTreeSet<EdgeKey>>),
}

/// An ordered agent list plus the element assignment. The list order defines
/// the coalition bitmask; agents may own empty sets only when listed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ownership {
    pub agents: Vec<AgentId>,
    pub assignment: Assignment,
}

impl Ownership {
    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn index_of(&self, agent: &str) -> Option<usize> {
        self.agents.iter().position(|a| a == agent)
    }

    /// max_i |V_i| (or |E_i|): the maximum agent size parameter.
    pub fn max_agent_size(&self) -> usize {
        match &self.assignment {
            Assignment::Vertices(m) => m.values().map(|s| s.len()).max().unwrap_or(0),
            Assignment::Edges(m) => m.values().map(|s| s.len()).max().unwrap_or(0),
        }
    }
}

/// A coalition as a bitmask over the instance's agent list order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn full(agent_count: usize) -> Self {
        Coalition(((1u64 << agent_count) - 1) as u32)
    }

    pub fn singleton(index: usize) -> Self {
        Coalition(1 << index)
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask >> i & 1 == 1)
    }

    pub fn from_agent_ids<'a>(
        ownership: &Ownership,
        ids: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let mut mask = 0u32;
        for id in ids {
            match ownership.index_of(id) {
                Some(i) if i < MASK_BITS => mask |= 1 << i,
                Some(_) => {
                    return Err(Error::size(format!(
                        "agent '{id}' is beyond the {MASK_BITS}-bit coalition mask"
                    )))
                }
                None => return Err(Error::input(format!("unknown agent '{id}'"))),
            }
        }
        Ok(Coalition(mask))
    }

    pub fn member_ids(self, ownership: &Ownership) -> Vec<AgentId> {
        self.indices()
            .filter(|&i| i < ownership.agents.len())
            .map(|i| ownership.agents[i].clone())
            .collect()
    }
}

/// An immutable game instance. Cloning shares the coalition-value cache.
#[derive(Clone)]
pub struct GameInstance {
    pub graph: Graph,
    pub goal: Goal,
    pub ownership: Ownership,
    pub supply: Option<VertexId>,
    cache: Arc<DashMap<u32, BigRational>>,
}

impl fmt::Debug for GameInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameInstance")
            .field("goal", &self.goal)
            .field("vertices", &self.graph.vertex_count())
            .field("edges", &self.graph.edge_count())
            .field("agents", &self.ownership.agents)
            .field("supply", &self.supply)
            .finish()
    }
}

impl GameInstance {
    pub fn new(
        graph: Graph,
        goal: Goal,
        ownership: Ownership,
        supply: Option<VertexId>,
    ) -> Self {
        GameInstance {
            graph,
            goal,
            ownership,
            supply,
            cache: Arc::new(DashMap::new()),
        }
    }

    /// A copy that does not share this instance's memo cache.
    pub fn without_cache(&self) -> Self {
        GameInstance::new(
            self.graph.clone(),
            self.goal,
            self.ownership.clone(),
            self.supply.clone(),
        )
    }

    pub fn agent_count(&self) -> usize {
        self.ownership.agent_count()
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.agent_count())
    }

    /// Checks every structural invariant; each violation names the broken
    /// rule. An empty list means the instance is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let own = &self.ownership;

        let mut seen = BTreeSet::new();
        for a in &own.agents {
            if !seen.insert(a) {
                violations.push(format!("agent '{a}' listed twice"));
            }
        }
        if own.agents.len() > MASK_BITS {
            violations.push(format!(
                "instance has {} agents; coalitions are {MASK_BITS}-bit masks",
                own.agents.len()
            ));
        }

        match (&own.assignment, self.goal.owns_edges()) {
            (Assignment::Edges(_), false) => {
                violations.push("edge ownership on a vertex-partition goal".to_string());
            }
            (Assignment::Vertices(_), true) => {
                violations.push("vertex ownership on the edge-partition goal".to_string());
            }
            _ => {}
        }

        match &own.assignment {
            Assignment::Edges(map) => {
                let mut owned = BTreeSet::new();
                for (agent, edges) in map {
                    if own.index_of(agent).is_none() {
                        violations.push(format!("owner '{agent}' is not a listed agent"));
                    }
                    for k in edges {
                        if !self.graph.has_edge(k) {
                            violations.push(format!("owned edge {k} is not in the graph"));
                        }
                        if !owned.insert(k.clone()) {
                            violations.push(format!("edge {k} owned twice"));
                        }
                    }
                }
                for a in &own.agents {
                    if !map.contains_key(a) {
                        violations.push(format!("agent '{a}' has no ownership entry"));
                    }
                }
                if self.goal.owns_edges() {
                    for k in self.graph.edges().keys() {
                        if !owned.contains(k) {
                            violations.push(format!("edge {k} unowned"));
                        }
                    }
                }
            }
            Assignment::Vertices(map) => {
                let mut owned = BTreeSet::new();
                for (agent, vs) in map {
                    if own.index_of(agent).is_none() {
                        violations.push(format!("owner '{agent}' is not a listed agent"));
                    }
                    for v in vs {
                        if !self.graph.has_vertex(v) {
                            violations.push(format!("owned vertex '{v}' is not in the graph"));
                        }
                        if !owned.insert(v.clone()) {
                            violations.push(format!("vertex '{v}' owned twice"));
                        }
                    }
                }
                for a in &own.agents {
                    if !map.contains_key(a) {
                        violations.push(format!("agent '{a}' has no ownership entry"));
                    }
                }
                if !self.goal.owns_edges() {
                    let exempt = self.supply.as_ref();
                    for v in self.graph.vertices() {
                        if Some(v) == exempt {
                            continue;
                        }
                        if !owned.contains(v) {
                            violations.push(format!("vertex '{v}' unowned"));
                        }
                    }
                    if let Some(s) = &self.supply {
                        if owned.contains(s) {
                            violations.push(format!("supply vertex '{s}' must be unowned"));
                        }
                    }
                }
            }
        }

        match self.goal {
            Goal::MinSpanningTree => {
                match &self.supply {
                    None => violations.push("spanning-tree game needs a supply vertex".to_string()),
                    Some(s) => {
                        if !self.graph.has_vertex(s) {
                            violations.push(format!("supply vertex '{s}' is not in the graph"));
                        }
                    }
                }
                let n = self.graph.vertex_count();
                if self.graph.edge_count() != n * n.saturating_sub(1) / 2 {
                    violations.push("graph not complete".to_string());
                }
                for (k, w) in self.graph.edges() {
                    if w.is_none() {
                        violations.push(format!("edge {k} has no weight"));
                    }
                }
            }
            _ => {
                if self.supply.is_some() {
                    violations.push("supply vertex is only meaningful for spanning-tree games".to_string());
                }
            }
        }

        violations
    }

    /// The coalition's substructure: edge-induced subgraph for vertex cover,
    /// vertex-induced otherwise (with the supply vertex added for trees).
    pub fn coalition_subgraph(&self, s: Coalition) -> Result<Graph> {
        self.check_coalition(s)?;
        match &self.ownership.assignment {
            Assignment::Edges(map) => {
                let mut es = BTreeSet::new();
                for i in s.indices() {
                    if let Some(owned) = map.get(&self.ownership.agents[i]) {
                        es.extend(owned.iter().cloned());
                    }
                }
                self.graph.induced_by_edges(&es)
            }
            Assignment::Vertices(map) => {
                let mut vs = BTreeSet::new();
                for i in s.indices() {
                    if let Some(owned) = map.get(&self.ownership.agents[i]) {
                        vs.extend(owned.iter().cloned());
                    }
                }
                if self.goal == Goal::MinSpanningTree {
                    if let Some(sup) = &self.supply {
                        vs.insert(sup.clone());
                    }
                }
                self.graph.induced_by_vertices(&vs)
            }
        }
    }

    fn check_coalition(&self, s: Coalition) -> Result<()> {
        if self.agent_count() > MASK_BITS {
            return Err(Error::size(format!(
                "{} agents exceeds the {MASK_BITS}-bit coalition mask",
                self.agent_count()
            )));
        }
        if self.agent_count() < MASK_BITS && s.mask() >> self.agent_count() != 0 {
            return Err(Error::input(format!(
                "coalition mask {:#b} references agents beyond the {} listed",
                s.mask(),
                self.agent_count()
            )));
        }
        Ok(())
    }

    /// The coalition's cost (minimization) or value (maximization), memoized
    /// by bitmask. The empty coalition is worth exactly zero.
    pub fn coalition_value(&self, s: Coalition) -> Result<BigRational> {
        self.check_coalition(s)?;
        if let Some(v) = self.cache.get(&s.mask()) {
            return Ok(v.clone());
        }
        let value = self.coalition_value_uncached(s)?;
        self.cache.insert(s.mask(), value.clone());
        Ok(value)
    }

    /// Same as [`coalition_value`](Self::coalition_value) but bypassing the
    /// memo cache; the two must always agree.
    pub fn coalition_value_uncached(&self, s: Coalition) -> Result<BigRational> {
        if s.is_empty() {
            return Ok(BigRational::zero());
        }
        Ok(self.coalition_optimum(s)?.value)
    }

    /// The optimum with its witness, uncached; used for blocking evidence.
    pub fn coalition_optimum(&self, s: Coalition) -> Result<OptResult> {
        let sub = self.coalition_subgraph(s)?;
        match self.goal {
            Goal::MinVertexCover => Ok(optima::min_vertex_cover(&sub)),
            Goal::MinDominatingSet => Ok(optima::min_dominating_set(&sub)),
            Goal::MaxMatching => Ok(optima::max_matching(&sub)),
            Goal::MinSpanningTree => optima::mst_weight(&sub),
        }
    }

    /// Value of the grand coalition.
    pub fn grand_value(&self) -> Result<BigRational> {
        self.coalition_value(self.grand_coalition())
    }

    /// Computes and caches every coalition value. Parallel when the
    /// `parallel` feature is enabled; the result is order-independent.
    pub fn precompute_coalition_values(&self) -> Result<()> {
        let n = self.agent_count();
        if n > MAX_AGENTS {
            return Err(Error::size(format!(
                "{n} agents exceeds the enumeration cap of {MAX_AGENTS}"
            )));
        }
        let total = 1u64 << n;
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..total)
                .into_par_iter()
                .try_for_each(|mask| self.coalition_value(Coalition::from_mask(mask as u32)).map(|_| ()))?;
        }
        #[cfg(not(feature = "parallel"))]
        {
            for mask in 0..total {
                self.coalition_value(Coalition::from_mask(mask as u32))?;
            }
        }
        Ok(())
    }

    /// Splits the instance into independent sub-instances: connected
    /// components are grouped together whenever they share an owner, and each
    /// group keeps its agents in the original order. Spanning-tree games are
    /// complete, hence connected, and are not supported.
    pub fn decompose(&self) -> Result<Vec<GameInstance>> {
        if self.goal == Goal::MinSpanningTree {
            return Err(Error::unsupported(
                "spanning-tree games are complete graphs; decomposition does not apply",
            ));
        }
        let components = self.graph.connected_components();
        if components.is_empty() {
            return Ok(vec![self.clone()]);
        }

        // Union-find over components, merged through shared agents.
        let mut parent: Vec<usize> = (0..components.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let component_of_vertex: BTreeMap<&VertexId, usize> = components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |v| (v, i)))
            .collect();
        let mut agent_home: BTreeMap<&AgentId, usize> = BTreeMap::new();
        for agent in &self.ownership.agents {
            let touched: Vec<usize> = match &self.ownership.assignment {
                Assignment::Vertices(map) => map
                    .get(agent)
                    .map(|vs| vs.iter().map(|v| component_of_vertex[v]).collect())
                    .unwrap_or_default(),
                Assignment::Edges(map) => map
                    .get(agent)
                    .map(|es| {
                        es.iter()
                            .map(|k| component_of_vertex[k.endpoints().0])
                            .collect()
                    })
                    .unwrap_or_default(),
            };
            if let Some((&first, rest)) = touched.split_first() {
                agent_home.insert(agent, first);
                for &c in rest {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, c));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }

        let reps: Vec<usize> = (0..components.len())
            .map(|i| find(&mut parent, i))
            .collect();
        let agent_rep: BTreeMap<&AgentId, usize> = agent_home
            .iter()
            .map(|(a, &home)| (*a, reps[home]))
            .collect();
        // Components with no owner (possible only for isolated vertices in
        // edge-partition games) and agents owning nothing join the first
        // group so that the union of sub-instances covers the instance.
        let owned_reps: BTreeSet<usize> = agent_rep.values().copied().collect();
        let default_rep = owned_reps.iter().next().copied().unwrap_or(reps[0]);
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &r) in reps.iter().enumerate() {
            let key = if owned_reps.contains(&r) { r } else { default_rep };
            groups.entry(key).or_default().push(i);
        }
        let first_key = *groups.keys().next().expect("components is nonempty");

        let mut out = Vec::new();
        for (&key, comp_ids) in &groups {
            let mut vs: BTreeSet<VertexId> = BTreeSet::new();
            for &c in comp_ids {
                vs.extend(components[c].iter().cloned());
            }
            let sub_graph = self.graph.induced_by_vertices(&vs)?;
            let agents: Vec<AgentId> = self
                .ownership
                .agents
                .iter()
                .filter(|a| match agent_rep.get(a) {
                    Some(&r) => r == key,
                    None => key == first_key,
                })
                .cloned()
                .collect();
            let assignment = match &self.ownership.assignment {
                Assignment::Vertices(map) => Assignment::Vertices(
                    agents
                        .iter()
                        .map(|a| (a.clone(), map.get(a).cloned().unwrap_or_default()))
                        .collect(),
                ),
                Assignment::Edges(map) => Assignment::Edges(
                    agents
                        .iter()
                        .map(|a| (a.clone(), map.get(a).cloned().unwrap_or_default()))
                        .collect(),
                ),
            };
            out.push(GameInstance::new(
                sub_graph,
                self.goal,
                Ownership { agents, assignment },
                None,
            ));
        }
        Ok(out)
    }
}
