//! Topological distance games: agents with exact rational utilities are
//! assigned injectively to the vertices of a graph, and each agent's utility
//! is the sum of its utilities for the others weighted by a strictly
//! decreasing function of graph distance. This crate decides whether an
//! *individually rational* assignment exists (one in which every agent's
//! utility is non-negative), and generates hard instances from classic
//! NP-hard source problems whose exact deciders double as test oracles.
//!
//! The main entry points:
//!
//! - [`instance::Instance`] / [`instance::Assignment`] — the game model.
//! - [`solver::solve_auto`] — decides IR with the cheapest applicable
//!   algorithm (immediate yes, single-enemy-source polynomial, path in-star
//!   permutation, or exhaustive branch-and-bound).
//! - [`solver::verify_witness`] — the polynomial certificate checker.
//! - [`reductions`] — gadget generators from Unary Bin Packing, Equitable
//!   Partition, 3-Partition, Independent Set, and Clique, plus exact
//!   deciders for those source problems and the constructions' certificate
//!   assignments.
//! - [`io`] — the JSON instance/assignment document formats.
//! - [`cli`] — the `tdg` command-line interface.

pub mod cli;
pub mod dff;
pub mod enmity;
pub mod instance;
pub mod io;
pub mod rational;
pub mod reductions;
pub mod solver;
pub mod topology;
pub mod validate;

pub use dff::DistanceFactorFunction;
pub use enmity::{enmity_structure, EnmityClass, EnmityStructure};
pub use instance::{
    agent_utility, is_individually_rational, validate_instance, Assignment, Instance, IrReport,
};
pub use rational::Rational;
pub use solver::{
    solve_auto, solve_brute_force, solve_path_instar, solve_single_source, verify_witness,
    Algorithm, SolveResult, SolverError, WitnessReport,
};
pub use topology::{shortest_distances, Distance, DistanceMatrix, Topology};
pub use validate::Violation;
