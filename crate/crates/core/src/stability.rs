//! Core stability: verification of a given allocation, existence deciding
//! with exact LP machinery (explicit 2^n LP or a cutting-plane loop whose
//! separation oracle is blocking-coalition search), emptiness certificates,
//! and the constructive allocations (proportional individually-rational
//! split, Bird's rule for tree games, allocation lifting).

use crate::error::{Error, Result};
use crate::game::{AgentId, Assignment, Coalition, GameInstance, Goal, Ownership, MAX_AGENTS};
use crate::graph::{EdgeKey, VertexId};
use crate::lp::{self, Constraint, FarkasCertificate, LinearProgram, LpOutcome, Relation};
use crate::optima::Witness;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// The explicit core LP has one row per coalition; past this many agents it
/// is refused outright.
pub const FULL_LP_MAX_AGENTS: usize = 20;

/// A nonnegative payoff (or cost share) per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    values: BTreeMap<AgentId, BigRational>,
}

impl Allocation {
    pub fn new(values: BTreeMap<AgentId, BigRational>) -> Result<Self> {
        for (agent, v) in &values {
            if v.is_negative() {
                return Err(Error::input(format!(
                    "allocation entry for agent '{agent}' is negative"
                )));
            }
        }
        Ok(Allocation { values })
    }

    pub fn from_pairs<'a>(
        pairs: impl IntoIterator<Item = (&'a str, BigRational)>,
    ) -> Result<Self> {
        Allocation::new(
            pairs
                .into_iter()
                .map(|(a, v)| (a.to_string(), v))
                .collect(),
        )
    }

    pub fn values(&self) -> &BTreeMap<AgentId, BigRational> {
        &self.values
    }

    pub fn get(&self, agent: &str) -> Option<&BigRational> {
        self.values.get(agent)
    }

    pub fn total(&self) -> BigRational {
        self.values.values().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Sum over the coalition's members, in the ownership's agent order.
    pub fn sum_over(&self, ownership: &Ownership, s: Coalition) -> BigRational {
        s.indices()
            .filter(|&i| i < ownership.agents.len())
            .map(|i| self.values[&ownership.agents[i]].clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// The sub-allocation on the given agents (for decomposition checks).
    pub fn restrict(&self, agents: &[AgentId]) -> Allocation {
        Allocation {
            values: agents
                .iter()
                .filter_map(|a| self.values.get(a).map(|v| (a.clone(), v.clone())))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CoreStable,
    NotPreImputation,
    Blocked,
}

/// A coalition that strictly profits by deviating, with the optimal solution
/// of its induced subproblem as evidence.
#[derive(Debug, Clone)]
pub struct BlockingEvidence {
    pub coalition: Coalition,
    pub value: BigRational,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub grand_value: BigRational,
    pub blocking: Option<BlockingEvidence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceVerdict {
    CoreNonempty,
    CoreEmpty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceMethod {
    FullLp,
    CuttingPlane,
}

/// Proof that the core is empty: a short list of coalition constraints plus
/// exact multipliers that combine with the pre-imputation equality into a
/// contradiction. Coalition values are stored, not trusted: the checker
/// recomputes them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptinessCertificate {
    pub grand_value: BigRational,
    /// Listed coalitions with their claimed values, in constraint order.
    pub coalitions: Vec<(Coalition, BigRational)>,
    /// Signed multiplier on the equality `sum alpha = grand_value`.
    pub equality_multiplier: BigRational,
    /// Nonnegative multipliers aligned with `coalitions`.
    pub coalition_multipliers: Vec<BigRational>,
    /// Nonnegative multipliers on `alpha_i >= 0`, in agent order.
    pub nonneg_multipliers: Vec<BigRational>,
}

#[derive(Debug, Clone)]
pub struct ExistenceReport {
    pub verdict: ExistenceVerdict,
    pub allocation: Option<Allocation>,
    pub certificate: Option<EmptinessCertificate>,
    pub method: ExistenceMethod,
    /// Separation-oracle invocations (cutting plane only).
    pub oracle_calls: usize,
}

fn check_agents(inst: &GameInstance, a: &Allocation) -> Result<()> {
    let agents = &inst.ownership.agents;
    if a.values().len() != agents.len() || !agents.iter().all(|ag| a.values().contains_key(ag)) {
        return Err(Error::input(
            "allocation does not cover exactly the instance's agents",
        ));
    }
    Ok(())
}

fn check_agent_cap(inst: &GameInstance, cap: usize) -> Result<()> {
    let n = inst.agent_count();
    if n > cap {
        return Err(Error::size(format!(
            "{n} agents exceeds the cap of {cap} for this operation"
        )));
    }
    Ok(())
}

/// True iff the allocation sums exactly to the grand coalition's value.
pub fn is_pre_imputation(inst: &GameInstance, a: &Allocation) -> Result<bool> {
    check_agents(inst, a)?;
    Ok(a.total() == inst.grand_value()?)
}

fn violates(inst: &GameInstance, a: &Allocation, mask: u32) -> Result<bool> {
    let s = Coalition::from_mask(mask);
    let value = inst.coalition_value(s)?;
    let share = a.sum_over(&inst.ownership, s);
    Ok(if inst.goal.is_maximization() {
        share < value
    } else {
        share > value
    })
}

fn evidence_for(inst: &GameInstance, mask: u32) -> Result<BlockingEvidence> {
    let s = Coalition::from_mask(mask);
    let opt = inst.coalition_optimum(s)?;
    Ok(BlockingEvidence {
        coalition: s,
        value: opt.value,
        witness: opt.witness,
    })
}

/// Scans nonempty coalitions in bitmask order and returns the first strict
/// violator (minimization: its members pay more than their stand-alone cost;
/// maximization: they receive less than their stand-alone value).
pub fn find_blocking_coalition(
    inst: &GameInstance,
    a: &Allocation,
) -> Result<Option<BlockingEvidence>> {
    #[cfg(feature = "parallel")]
    {
        find_blocking_coalition_parallel(inst, a)
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_blocking_coalition_sequential(inst, a)
    }
}

/// Sequential scan with early exit; the reference implementation.
pub fn find_blocking_coalition_sequential(
    inst: &GameInstance,
    a: &Allocation,
) -> Result<Option<BlockingEvidence>> {
    check_agents(inst, a)?;
    check_agent_cap(inst, MAX_AGENTS)?;
    let full = (1u64 << inst.agent_count()) - 1;
    for mask in 1..=full {
        if violates(inst, a, mask as u32)? {
            return Ok(Some(evidence_for(inst, mask as u32)?));
        }
    }
    Ok(None)
}

/// Block-parallel scan; the result is the lexicographic minimum among
/// violators, identical to the sequential scan.
#[cfg(feature = "parallel")]
pub fn find_blocking_coalition_parallel(
    inst: &GameInstance,
    a: &Allocation,
) -> Result<Option<BlockingEvidence>> {
    use rayon::prelude::*;
    check_agents(inst, a)?;
    check_agent_cap(inst, MAX_AGENTS)?;
    const BLOCK: u64 = 1 << 13;
    let full = (1u64 << inst.agent_count()) - 1;
    let mut start = 1u64;
    while start <= full {
        let end = (start + BLOCK).min(full + 1);
        let hit = (start..end)
            .into_par_iter()
            .map(|mask| match violates(inst, a, mask as u32) {
                Ok(true) => Some(Ok(mask)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .flatten()
            .try_reduce_with(|x, y| Ok(x.min(y)))
            .transpose()?;
        if let Some(mask) = hit {
            return Ok(Some(evidence_for(inst, mask as u32)?));
        }
        start = end;
    }
    Ok(None)
}

/// Full-scan variant that returns the coalition with the largest violation
/// instead of the first one (ties broken by smallest bitmask). Useful as an
/// alternative separation rule; the default everywhere else stays the
/// lexicographic scan.
pub fn find_blocking_coalition_most_violated(
    inst: &GameInstance,
    a: &Allocation,
) -> Result<Option<BlockingEvidence>> {
    check_agents(inst, a)?;
    check_agent_cap(inst, MAX_AGENTS)?;
    let full = (1u64 << inst.agent_count()) - 1;
    let mut best: Option<(BigRational, u64)> = None;
    for mask in 1..=full {
        let s = Coalition::from_mask(mask as u32);
        let value = inst.coalition_value(s)?;
        let share = a.sum_over(&inst.ownership, s);
        let violation = if inst.goal.is_maximization() {
            value - share
        } else {
            share - value
        };
        if violation.is_positive() && best.as_ref().is_none_or(|(v, _)| violation > *v) {
            best = Some((violation, mask));
        }
    }
    match best {
        Some((_, mask)) => Ok(Some(evidence_for(inst, mask as u32)?)),
        None => Ok(None),
    }
}

/// Core Stability Verification: pre-imputation equality first, then the
/// exhaustive blocking scan.
pub fn verify_core(inst: &GameInstance, a: &Allocation) -> Result<VerificationReport> {
    check_agents(inst, a)?;
    check_agent_cap(inst, MAX_AGENTS)?;
    let grand_value = inst.grand_value()?;
    if a.total() != grand_value {
        return Ok(VerificationReport {
            verdict: Verdict::NotPreImputation,
            grand_value,
            blocking: None,
        });
    }
    match find_blocking_coalition(inst, a)? {
        Some(evidence) => Ok(VerificationReport {
            verdict: Verdict::Blocked,
            grand_value,
            blocking: Some(evidence),
        }),
        None => Ok(VerificationReport {
            verdict: Verdict::CoreStable,
            grand_value,
            blocking: None,
        }),
    }
}

/// The explicit core polytope: `sum alpha = grand value`, one inequality per
/// nonempty coalition (mask order), all variables nonnegative.
pub fn core_constraint_lp(inst: &GameInstance) -> Result<LinearProgram> {
    let n = inst.agent_count();
    let grand = inst.grand_value()?;
    let relation = if inst.goal.is_maximization() {
        Relation::Ge
    } else {
        Relation::Le
    };
    let full = (1u64 << n) - 1;
    let mut constraints = Vec::with_capacity(full as usize + 1);
    constraints.push(Constraint::new(
        vec![BigRational::from_integer(1.into()); n],
        Relation::Eq,
        grand,
    ));
    for mask in 1..=full {
        let s = Coalition::from_mask(mask as u32);
        let coeffs = (0..n)
            .map(|i| {
                if s.contains(i) {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        constraints.push(Constraint::new(coeffs, relation, inst.coalition_value(s)?));
    }
    Ok(LinearProgram {
        variables: inst.ownership.agents.clone(),
        constraints,
        objective: None,
        nonneg: true,
    })
}

fn allocation_from_point(inst: &GameInstance, point: &[BigRational]) -> Allocation {
    Allocation {
        values: inst
            .ownership
            .agents
            .iter()
            .cloned()
            .zip(point.iter().cloned())
            .collect(),
    }
}

/// Builds a certificate from the Farkas multipliers of an infeasible core
/// LP, keeping only the coalition rows with nonzero multipliers.
fn certificate_from_farkas(
    inst: &GameInstance,
    grand_value: BigRational,
    row_masks: &[u32],
    farkas: &FarkasCertificate,
) -> Result<EmptinessCertificate> {
    let mut coalitions = Vec::new();
    let mut coalition_multipliers = Vec::new();
    for (k, &mask) in row_masks.iter().enumerate() {
        let m = &farkas.row_multipliers[k + 1];
        if m.is_zero() {
            continue;
        }
        let s = Coalition::from_mask(mask);
        coalitions.push((s, inst.coalition_value(s)?));
        coalition_multipliers.push(m.clone());
    }
    Ok(EmptinessCertificate {
        grand_value,
        coalitions,
        equality_multiplier: farkas.row_multipliers[0].clone(),
        coalition_multipliers,
        nonneg_multipliers: farkas.nonneg_multipliers.clone(),
    })
}

/// Core Stability Existence via the explicit LP with one row per coalition.
pub fn core_existence_full_lp(inst: &GameInstance) -> Result<ExistenceReport> {
    check_agent_cap(inst, FULL_LP_MAX_AGENTS)?;
    inst.precompute_coalition_values()?;
    let lp = core_constraint_lp(inst)?;
    let grand = inst.grand_value()?;
    match lp::find_feasible(&lp)? {
        LpOutcome::Feasible { point } => Ok(ExistenceReport {
            verdict: ExistenceVerdict::CoreNonempty,
            allocation: Some(allocation_from_point(inst, &point)),
            certificate: None,
            method: ExistenceMethod::FullLp,
            oracle_calls: 0,
        }),
        LpOutcome::Infeasible { farkas } => {
            let full = (1u64 << inst.agent_count()) - 1;
            let row_masks: Vec<u32> = (1..=full).map(|m| m as u32).collect();
            let certificate = certificate_from_farkas(inst, grand, &row_masks, &farkas)?;
            Ok(ExistenceReport {
                verdict: ExistenceVerdict::CoreEmpty,
                allocation: None,
                certificate: Some(certificate),
                method: ExistenceMethod::FullLp,
                oracle_calls: 0,
            })
        }
        other => Err(Error::input(format!(
            "feasibility solve returned {other:?}"
        ))),
    }
}

/// Core Stability Existence by constraint generation: start from the
/// equality alone, let blocking-coalition search separate violated
/// constraints, and stop when the LP is infeasible (core empty, with
/// certificate) or the candidate point survives the oracle (core nonempty).
/// Each distinct coalition constraint is added at most once, so the loop
/// terminates; exactness makes the verdict agree with the full LP.
pub fn core_existence_cutting_plane(inst: &GameInstance) -> Result<ExistenceReport> {
    check_agent_cap(inst, MAX_AGENTS)?;
    let n = inst.agent_count();
    let grand = inst.grand_value()?;
    let relation = if inst.goal.is_maximization() {
        Relation::Ge
    } else {
        Relation::Le
    };
    let mut row_masks: Vec<u32> = Vec::new();
    let mut constraints = vec![Constraint::new(
        vec![BigRational::from_integer(1.into()); n],
        Relation::Eq,
        grand.clone(),
    )];
    let mut oracle_calls = 0usize;
    loop {
        let lp = LinearProgram {
            variables: inst.ownership.agents.clone(),
            constraints: constraints.clone(),
            objective: None,
            nonneg: true,
        };
        match lp::find_feasible(&lp)? {
            LpOutcome::Infeasible { farkas } => {
                let certificate = certificate_from_farkas(inst, grand, &row_masks, &farkas)?;
                return Ok(ExistenceReport {
                    verdict: ExistenceVerdict::CoreEmpty,
                    allocation: None,
                    certificate: Some(certificate),
                    method: ExistenceMethod::CuttingPlane,
                    oracle_calls,
                });
            }
            LpOutcome::Feasible { point } => {
                let candidate = allocation_from_point(inst, &point);
                oracle_calls += 1;
                match find_blocking_coalition(inst, &candidate)? {
                    None => {
                        return Ok(ExistenceReport {
                            verdict: ExistenceVerdict::CoreNonempty,
                            allocation: Some(candidate),
                            certificate: None,
                            method: ExistenceMethod::CuttingPlane,
                            oracle_calls,
                        })
                    }
                    Some(evidence) => {
                        let mask = evidence.coalition.mask();
                        debug_assert!(
                            !row_masks.contains(&mask),
                            "exact LP returned a point violating an added row"
                        );
                        let coeffs = (0..n)
                            .map(|i| {
                                if evidence.coalition.contains(i) {
                                    BigRational::from_integer(1.into())
                                } else {
                                    BigRational::zero()
                                }
                            })
                            .collect();
                        constraints.push(Constraint::new(coeffs, relation, evidence.value));
                        row_masks.push(mask);
                    }
                }
            }
            other => return Err(Error::input(format!("feasibility solve returned {other:?}"))),
        }
    }
}

/// Revalidates an emptiness certificate from scratch: recomputes the grand
/// value and every listed coalition value, then checks the exact Farkas
/// contradiction. Any mismatch or sign violation yields `false`.
pub fn check_emptiness_certificate(inst: &GameInstance, cert: &EmptinessCertificate) -> bool {
    let n = inst.agent_count();
    if cert.coalitions.len() != cert.coalition_multipliers.len()
        || cert.nonneg_multipliers.len() != n
    {
        return false;
    }
    match inst.grand_value() {
        Ok(g) if g == cert.grand_value => {}
        _ => return false,
    }
    for (s, claimed) in &cert.coalitions {
        match inst.coalition_value(*s) {
            Ok(v) if v == *claimed => {}
            _ => return false,
        }
    }
    if cert
        .coalition_multipliers
        .iter()
        .any(|m| m.is_negative())
        || cert.nonneg_multipliers.iter().any(|t| t.is_negative())
    {
        return false;
    }
    // Coalition rows enter with +1 per member for minimization (<= rows) and
    // -1 for maximization (>= rows become <= after negation).
    let sigma = if inst.goal.is_maximization() {
        BigRational::from_integer((-1).into())
    } else {
        BigRational::from_integer(1.into())
    };
    let mut rhs = cert.equality_multiplier.clone() * &cert.grand_value;
    for i in 0..n {
        let mut coeff = cert.equality_multiplier.clone();
        for ((s, _), m) in cert.coalitions.iter().zip(&cert.coalition_multipliers) {
            if s.contains(i) {
                coeff += &sigma * m;
            }
        }
        if coeff != cert.nonneg_multipliers[i] {
            return false;
        }
    }
    for ((_, value), m) in cert.coalitions.iter().zip(&cert.coalition_multipliers) {
        rhs += &sigma * m * value;
    }
    rhs.is_negative()
}

/// The individually rational allocation of superadditive games. For
/// maximization every agent gets its stand-alone value plus an equal share of
/// the surplus; for minimization every agent pays its stand-alone cost scaled
/// down proportionally. Degenerate minimization instances where all
/// stand-alone costs are zero get the all-zero allocation.
pub fn ir_allocation(inst: &GameInstance) -> Result<Allocation> {
    let n = inst.agent_count();
    if n == 0 {
        return Allocation::new(BTreeMap::new());
    }
    let grand = inst.grand_value()?;
    let singles: Vec<BigRational> = (0..n)
        .map(|i| inst.coalition_value(Coalition::singleton(i)))
        .collect::<Result<_>>()?;
    let sum_singles: BigRational = singles.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
    let values: BTreeMap<AgentId, BigRational> = if inst.goal.is_maximization() {
        let beta = (grand - &sum_singles) / BigRational::from_integer(n.into());
        inst.ownership
            .agents
            .iter()
            .zip(&singles)
            .map(|(a, s)| (a.clone(), s + &beta))
            .collect()
    } else if sum_singles.is_zero() {
        inst.ownership
            .agents
            .iter()
            .map(|a| (a.clone(), BigRational::zero()))
            .collect()
    } else {
        let r = grand / &sum_singles;
        inst.ownership
            .agents
            .iter()
            .zip(&singles)
            .map(|(a, s)| (a.clone(), s * &r))
            .collect()
    };
    Allocation::new(values)
}

/// Bird's rule, per vertex: the deterministic minimum spanning tree is rooted
/// at the supply vertex and every other vertex pays the weight of the edge to
/// its parent. Keyed by vertex; agents then sum their vertices' payments.
#[derive(Debug, Clone)]
pub struct BirdBreakdown {
    pub tree: Vec<EdgeKey>,
    pub payments: BTreeMap<VertexId, BigRational>,
    pub allocation: Allocation,
}

pub fn bird_breakdown(inst: &GameInstance) -> Result<BirdBreakdown> {
    if inst.goal != Goal::MinSpanningTree {
        return Err(Error::input(format!(
            "Bird's rule applies to spanning-tree games, not {}",
            inst.goal
        )));
    }
    let supply = inst
        .supply
        .clone()
        .ok_or_else(|| Error::input("spanning-tree instance has no supply vertex"))?;
    let opt = crate::optima::mst_weight(&inst.graph)?;
    let Witness::Edges(tree) = &opt.witness else {
        unreachable!("tree witness is an edge set")
    };

    // Root the tree at the supply vertex and charge each vertex its parent
    // edge.
    let mut adjacency: BTreeMap<&VertexId, Vec<&EdgeKey>> = BTreeMap::new();
    for k in tree {
        let (a, b) = k.endpoints();
        adjacency.entry(a).or_default().push(k);
        adjacency.entry(b).or_default().push(k);
    }
    let mut payments: BTreeMap<VertexId, BigRational> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([&supply]);
    let mut seen = std::collections::BTreeSet::from([supply.clone()]);
    while let Some(v) = queue.pop_front() {
        if let Some(ks) = adjacency.get(v) {
            for k in ks {
                let child = k.other(v).expect("tree edge endpoint");
                if seen.insert(child.clone()) {
                    let w = inst
                        .graph
                        .weight(k)
                        .expect("tree edges are weighted")
                        .clone();
                    payments.insert(child.clone(), w);
                    queue.push_back(child);
                }
            }
        }
    }

    let Assignment::Vertices(map) = &inst.ownership.assignment else {
        return Err(Error::input("spanning-tree games use vertex ownership"));
    };
    let values: BTreeMap<AgentId, BigRational> = inst
        .ownership
        .agents
        .iter()
        .map(|agent| {
            let total = map
                .get(agent)
                .map(|vs| {
                    vs.iter()
                        .filter_map(|v| payments.get(v).cloned())
                        .fold(BigRational::zero(), |a, b| a + b)
                })
                .unwrap_or_else(BigRational::zero);
            (agent.clone(), total)
        })
        .collect();
    Ok(BirdBreakdown {
        tree: tree.iter().cloned().collect(),
        payments,
        allocation: Allocation::new(values)?,
    })
}

/// Bird's allocation for spanning-tree games; always core-stable.
pub fn bird_allocation(inst: &GameInstance) -> Result<Allocation> {
    Ok(bird_breakdown(inst)?.allocation)
}

/// Lifts an allocation along a surjective agent map: target agent `j`
/// receives `b` times the total of its preimage. When the games' values
/// relate by the same map and factor, core stability carries over.
pub fn lift_allocation(
    source: &Allocation,
    f: &BTreeMap<AgentId, AgentId>,
    b: &BigRational,
    target_agents: &[AgentId],
) -> Result<Allocation> {
    if b.is_negative() {
        return Err(Error::input("lift factor must be nonnegative"));
    }
    for agent in source.values().keys() {
        if !f.contains_key(agent) {
            return Err(Error::input(format!("agent '{agent}' is not mapped")));
        }
    }
    for (agent, target) in f {
        if !source.values().contains_key(agent) {
            return Err(Error::input(format!(
                "mapped agent '{agent}' is not in the source allocation"
            )));
        }
        if !target_agents.contains(target) {
            return Err(Error::input(format!(
                "map target '{target}' is not a target agent"
            )));
        }
    }
    let mut values: BTreeMap<AgentId, BigRational> = target_agents
        .iter()
        .map(|t| (t.clone(), BigRational::zero()))
        .collect();
    for (agent, v) in source.values() {
        let target = &f[agent];
        *values.get_mut(target).unwrap() += b * v;
    }
    for t in target_agents {
        let covered = f.values().any(|u| u == t);
        if !covered {
            return Err(Error::input(format!(
                "map is not surjective: target agent '{t}' has empty preimage"
            )));
        }
    }
    Allocation::new(values)
}
