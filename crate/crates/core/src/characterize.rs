//! Fractional dominating-set characterization: for the unpartitioned
//! dominating-set game (every agent owns exactly one vertex), the core is
//! nonempty exactly when the fractional dominating-set LP value equals the
//! integer minimum.

use crate::error::{Error, Result};
use crate::game::{Assignment, GameInstance, Goal};
use crate::graph::Graph;
use crate::lp::{self, Constraint, LinearProgram, LpOutcome, Relation};
use crate::optima;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalDsReport {
    pub fractional_value: BigRational,
    pub integer_value: BigRational,
    pub equal: bool,
    /// Optimal LP point, one entry per vertex in lexicographic order.
    pub lp_point: Vec<BigRational>,
}

/// Builds the fractional dominating-set LP: one variable per vertex, one
/// closed-neighborhood covering constraint per vertex, minimize the total.
pub fn fractional_ds_lp(g: &Graph) -> LinearProgram {
    let names: Vec<_> = g.vertices().iter().cloned().collect();
    let index_of = |v: &crate::graph::VertexId| names.binary_search(v).expect("vertex");
    let n = names.len();
    let constraints = names
        .iter()
        .map(|v| {
            let mut coeffs = vec![BigRational::zero(); n];
            coeffs[index_of(v)] = BigRational::one();
            for u in g.neighbors(v) {
                coeffs[index_of(&u)] = BigRational::one();
            }
            Constraint::new(coeffs, Relation::Ge, BigRational::one())
        })
        .collect();
    LinearProgram {
        variables: names.iter().map(|v| v.to_string()).collect(),
        constraints,
        objective: Some(vec![BigRational::one(); n]),
        nonneg: true,
    }
}

/// Solves the LP relaxation exactly and compares it with the integer
/// minimum dominating set.
pub fn fractional_ds_value(g: &Graph) -> Result<FractionalDsReport> {
    let lp = fractional_ds_lp(g);
    let (fractional_value, lp_point) = if g.vertex_count() == 0 {
        (BigRational::zero(), Vec::new())
    } else {
        match lp::minimize(&lp)? {
            LpOutcome::Optimal {
                point,
                objective_value,
            } => (objective_value, point),
            other => {
                return Err(Error::input(format!(
                    "fractional dominating-set LP returned {other:?}"
                )))
            }
        }
    };
    let integer_value = optima::min_dominating_set(g).value;
    let equal = fractional_value == integer_value;
    Ok(FractionalDsReport {
        fractional_value,
        integer_value,
        equal,
        lp_point,
    })
}

/// Core existence for the unpartitioned dominating-set game: nonempty iff the
/// fractional and integer optima coincide. Only defined when each agent owns
/// exactly one vertex; the characterization does not extend to partitioned
/// instances.
pub fn cog_ds_core_exists(inst: &GameInstance) -> Result<bool> {
    if inst.goal != Goal::MinDominatingSet {
        return Err(Error::unsupported(format!(
            "fractional characterization applies to dominating-set games, not {}",
            inst.goal
        )));
    }
    let Assignment::Vertices(map) = &inst.ownership.assignment else {
        return Err(Error::unsupported(
            "dominating-set games use vertex ownership",
        ));
    };
    if map.values().any(|vs| vs.len() != 1) {
        return Err(Error::unsupported(
            "the characterization holds only when every agent owns exactly one vertex",
        ));
    }
    Ok(fractional_ds_value(&inst.graph)?.equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Coalition;
    use crate::graph::graph_from_tokens;
    use crate::ratio::{frac, int};
    use crate::stability::{core_existence_full_lp, ExistenceVerdict};
    use crate::testgen;

    #[test]
    fn k3_fractional_equals_integer() {
        let g = graph_from_tokens(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let r = fractional_ds_value(&g).unwrap();
        assert_eq!(r.fractional_value, int(1));
        assert_eq!(r.integer_value, int(1));
        assert!(r.equal);
    }

    #[test]
    fn c4_has_integrality_gap() {
        let g = graph_from_tokens(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
        )
        .unwrap();
        let r = fractional_ds_value(&g).unwrap();
        assert_eq!(r.fractional_value, frac(4, 3));
        assert_eq!(r.integer_value, int(2));
        assert!(!r.equal);
    }

    #[test]
    fn single_vertex() {
        let g = graph_from_tokens(&["a"], &[]).unwrap();
        let r = fractional_ds_value(&g).unwrap();
        assert_eq!(r.fractional_value, int(1));
        assert_eq!(r.integer_value, int(1));
        assert!(r.equal);
    }

    #[test]
    fn cog_core_exists_matches_lp_verdict_on_named_graphs() {
        let k3 = graph_from_tokens(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let inst = testgen::cog_ds_instance(k3);
        assert!(cog_ds_core_exists(&inst).unwrap());
        assert_eq!(
            core_existence_full_lp(&inst).unwrap().verdict,
            ExistenceVerdict::CoreNonempty
        );

        let c4 = graph_from_tokens(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
        )
        .unwrap();
        let inst = testgen::cog_ds_instance(c4);
        assert!(!cog_ds_core_exists(&inst).unwrap());
        assert_eq!(
            core_existence_full_lp(&inst).unwrap().verdict,
            ExistenceVerdict::CoreEmpty
        );
    }

    #[test]
    fn satisfiable_formula_graph_has_fractional_value_n() {
        // The 3SAT dominating-set graph (no special vertex) of a satisfiable
        // formula: fractional value equals the variable count and the core
        // exists.
        let formula = crate::reductions::CnfFormula::new(
            2,
            vec![vec![1, 2, -1], vec![-1, -2, 2]],
        )
        .unwrap();
        let g = crate::reductions::three_sat_ds_graph(&formula, "t", false).unwrap();
        let r = fractional_ds_value(&g).unwrap();
        assert_eq!(r.fractional_value, int(2));
        assert!(r.equal);
        let inst = testgen::cog_ds_instance(g);
        assert!(cog_ds_core_exists(&inst).unwrap());
    }

    #[test]
    fn refuses_partitioned_and_wrong_goal_instances() {
        let mut rng = testgen::Rng::new(5);
        let partitioned = testgen::random_instance(&mut rng, Goal::MinDominatingSet, 2, 6);
        assert!(cog_ds_core_exists(&partitioned).is_err());
        let matching = testgen::random_instance(&mut rng, Goal::MaxMatching, 3, 3);
        assert!(cog_ds_core_exists(&matching).is_err());
    }

    #[test]
    fn oracle_equivalence_on_random_cog_instances() {
        let mut rng = testgen::Rng::new(77);
        for _ in 0..40 {
            let n = rng.range(1, 6) as usize;
            let g = testgen::random_graph(&mut rng, n, 1, 2);
            let inst = testgen::cog_ds_instance(g);
            let characterized = cog_ds_core_exists(&inst).unwrap();
            let lp_verdict = core_existence_full_lp(&inst).unwrap().verdict;
            assert_eq!(
                characterized,
                lp_verdict == ExistenceVerdict::CoreNonempty,
                "disagreement on {inst:?}"
            );
            let r = fractional_ds_value(&inst.graph).unwrap();
            assert!(r.fractional_value <= r.integer_value);
            let _ = inst.coalition_value(Coalition::EMPTY);
        }
    }
}
