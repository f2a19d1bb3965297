//! Partitioned combinatorial optimization games (PCOGs): cooperative games
//! where each agent owns part of a graph and a coalition's worth is the exact
//! optimum of a fixed graph problem (minimum vertex cover, minimum dominating
//! set, minimum-weight spanning tree, or maximum matching) on the coalition's
//! combined substructure.
//!
//! The crate covers the full pipeline: exact optimum solvers with brute-force
//! oracles ([`optima`]), coalition values and decomposition ([`game`]), exact
//! rational LP with Farkas certificates ([`lp`]), core-stability verification
//! and existence with constructive allocations ([`stability`]), the
//! fractional dominating-set characterization ([`characterize`]), and
//! generators that turn known reductions into ground-truth instances
//! ([`reductions`]).
//!
//! Coalition enumeration is data-parallel via rayon by default; build with
//! `--no-default-features` for the sequential fallback.

pub mod characterize;
mod error;
pub mod game;
pub mod graph;
pub mod lp;
pub mod optima;
pub mod ratio;
pub mod reductions;
pub mod stability;
pub mod testgen;

pub use error::{Error, Result};
