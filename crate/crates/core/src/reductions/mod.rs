//! CNF tooling and generators that realize known reduction constructions as
//! ground-truth test instances with brute-force-verified expected answers.

mod cnf;
mod examples;
mod gadgets;

pub use cnf::{parse_cnf, sat_brute, CnfFormula};
pub use examples::{worked_example, ExampleId};
pub use gadgets::{
    brute_min_ds_contains, brute_min_vc_contains, gen_ds_membership_pdsg_ce,
    gen_sat_unsat_pdsg_cv, gen_vc_membership_pvcg_ce, reduce_pvcg_to_pdsg, three_sat_ds_graph,
    GeneratedInstance, AUX_PREFIX,
};
