//! Deciders for the existence of an individually rational assignment:
//! exhaustive branch-and-bound, the single-enemy-source polynomial
//! algorithm, the path/in-star permutation algorithm, and a dispatcher
//! that picks the cheapest applicable one.

mod brute;
mod path_instar;
mod single_source;

pub use brute::{solve_brute_force, solve_brute_force_with_threads};
pub use path_instar::solve_path_instar;
pub use single_source::solve_single_source;

use std::fmt;

use crate::dff::DffError;
use crate::enmity::{enmity_structure, EnmityClass};
use crate::instance::{is_individually_rational, Assignment, Instance};
use crate::rational::Rational;
use crate::validate::{render, Violation};

/// Which algorithm produced a [`SolveResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    NoArcs,
    SingleSource,
    PathInstar,
    BruteForce,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::NoArcs => "no-arcs",
            Algorithm::SingleSource => "single-source",
            Algorithm::PathInstar => "path-instar",
            Algorithm::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Outcome of a solver run. When `answer` is true the witness is present,
/// passes the IR check, and is the lexicographically first assignment under
/// the algorithm's documented enumeration order, so reruns (and parallel
/// runs) reproduce it exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: bool,
    pub witness: Option<Assignment>,
    pub algorithm: Algorithm,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("invalid instance:\n{}", render(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("enmity structure mismatch: expected {expected}, found {found}")]
    StructureMismatch { expected: String, found: String },
    #[error("topology is not a path")]
    NotAPath,
    #[error("agent index {agent} out of range for {agent_count} agents")]
    AgentOutOfRange { agent: usize, agent_count: usize },
    #[error(transparent)]
    Dff(#[from] DffError),
}

pub(crate) fn validated(instance: &Instance) -> Result<(), SolverError> {
    let violations = instance.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SolverError::InvalidInstance(violations))
    }
}

pub(crate) fn describe_class(class: EnmityClass) -> String {
    match class {
        EnmityClass::NoArcs => "no-arcs".to_string(),
        EnmityClass::SingleSource(p) => format!("single-source({p})"),
        EnmityClass::SingleSink(p) => format!("single-sink({p})"),
        EnmityClass::General => "general".to_string(),
    }
}

/// Decides the instance with the cheapest applicable algorithm:
/// no enmity arcs -> immediate yes; a single enemy source -> the polynomial
/// algorithm; an in-star on a path -> the permutation algorithm; otherwise
/// exhaustive branch-and-bound. Always agrees with `solve_brute_force`.
pub fn solve_auto(instance: &Instance) -> Result<SolveResult, SolverError> {
    solve_auto_with_threads(instance, 1)
}

/// Like [`solve_auto`], with a worker count for the brute-force fallback.
pub fn solve_auto_with_threads(
    instance: &Instance,
    threads: usize,
) -> Result<SolveResult, SolverError> {
    validated(instance)?;
    match enmity_structure(instance).classification() {
        EnmityClass::NoArcs => {
            // Every utility is non-negative, so every assignment works; emit
            // the identity-order placement.
            let witness = Assignment::new((0..instance.agent_count()).collect());
            Ok(SolveResult {
                answer: true,
                witness: Some(witness),
                algorithm: Algorithm::NoArcs,
                nodes_explored: 0,
            })
        }
        EnmityClass::SingleSource(p) => solve_single_source(instance, p),
        EnmityClass::SingleSink(p) if instance.topology().is_path() => {
            solve_path_instar(instance, p)
        }
        _ => solve_brute_force_with_threads(instance, threads),
    }
}

/// Report produced by the public witness verifier. Problems are collected
/// rather than raised so a bad witness can be inspected end to end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub assignment_valid: bool,
    pub problems: Vec<String>,
    pub utilities: Vec<Rational>,
    pub individually_rational: bool,
}

/// Validates an assignment against an instance and evaluates every agent's
/// utility; the NP verifier for the problem.
pub fn verify_witness(instance: &Instance, assignment: &Assignment) -> WitnessReport {
    let mut problems: Vec<String> =
        instance.validate().iter().map(|v| v.to_string()).collect();
    if problems.is_empty() {
        match is_individually_rational(instance, assignment) {
            Ok(report) => WitnessReport {
                assignment_valid: true,
                problems,
                utilities: report.utilities,
                individually_rational: report.individually_rational,
            },
            Err(e) => WitnessReport {
                assignment_valid: false,
                problems: vec![e.to_string()],
                utilities: Vec::new(),
                individually_rational: false,
            },
        }
    } else {
        if let Err(e) = assignment.validate(instance) {
            problems.push(e.to_string());
        }
        WitnessReport {
            assignment_valid: false,
            problems,
            utilities: Vec::new(),
            individually_rational: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dff::DistanceFactorFunction;
    use crate::rational::rat;
    use crate::topology::Topology;

    fn instance(
        topology: Topology,
        utilities: Vec<Vec<Rational>>,
        dff: DistanceFactorFunction,
    ) -> Instance {
        let names = (0..utilities.len()).map(|i| format!("a{}", i + 1)).collect();
        Instance::new(topology, names, utilities, dff).unwrap()
    }

    fn zeros(n: usize) -> Vec<Vec<Rational>> {
        vec![vec![Rational::zero(); n]; n]
    }

    #[test]
    fn auto_dispatch_no_arcs() {
        let inst = instance(Topology::path(3), zeros(2), DistanceFactorFunction::Reciprocal);
        let result = solve_auto(&inst).unwrap();
        assert!(result.answer);
        assert_eq!(result.algorithm, Algorithm::NoArcs);
        assert_eq!(result.witness.as_ref().unwrap().placement(), &[0, 1]);
        let report = verify_witness(&inst, result.witness.as_ref().unwrap());
        assert!(report.individually_rational);
    }

    #[test]
    fn auto_dispatch_single_source() {
        let mut u = zeros(3);
        u[0][1] = rat("-1");
        u[0][2] = rat("-2");
        let inst = instance(Topology::path(4), u, DistanceFactorFunction::Reciprocal);
        let result = solve_auto(&inst).unwrap();
        assert_eq!(result.algorithm, Algorithm::SingleSource);
    }

    #[test]
    fn auto_dispatch_path_instar() {
        let mut u = zeros(3);
        u[0][2] = rat("-1");
        u[1][2] = rat("-1");
        let inst = instance(Topology::path(5), u, DistanceFactorFunction::Reciprocal);
        let result = solve_auto(&inst).unwrap();
        assert_eq!(result.algorithm, Algorithm::PathInstar);
    }

    #[test]
    fn auto_dispatch_general_falls_back_to_brute() {
        let mut u = zeros(3);
        u[0][1] = rat("-1");
        u[1][2] = rat("-1");
        let inst = instance(Topology::path(5), u, DistanceFactorFunction::Reciprocal);
        let result = solve_auto(&inst).unwrap();
        assert_eq!(result.algorithm, Algorithm::BruteForce);
    }

    #[test]
    fn bounded_dff_cutoff_changes_the_answer() {
        // Mutual enemies on a 3-path can only sit at distance 2. Under the
        // reciprocal function that still hurts; under a bounded function
        // with cutoff 1 the pair is out of range and the answer flips.
        let mut u = zeros(2);
        u[0][1] = rat("-1");
        u[1][0] = rat("-1");
        let hostile = instance(Topology::path(3), u.clone(), DistanceFactorFunction::Reciprocal);
        assert!(!solve_auto(&hostile).unwrap().answer);
        let bounded = instance(
            Topology::path(3),
            u,
            DistanceFactorFunction::BoundedTable { values: vec![rat("1")], cutoff: 1 },
        );
        let result = solve_auto(&bounded).unwrap();
        assert!(result.answer);
        let report = verify_witness(&bounded, result.witness.as_ref().unwrap());
        assert_eq!(report.utilities, vec![rat("0"), rat("0")]);
    }

    #[test]
    fn auto_rejects_invalid_instances() {
        let inst = instance(Topology::path(1), zeros(2), DistanceFactorFunction::Reciprocal);
        assert!(matches!(solve_auto(&inst), Err(SolverError::InvalidInstance(_))));
    }

    #[test]
    fn verifier_reports_bad_assignments_without_raising() {
        let inst = instance(Topology::path(3), zeros(2), DistanceFactorFunction::Reciprocal);
        let report = verify_witness(&inst, &Assignment::new(vec![0, 0]));
        assert!(!report.assignment_valid);
        assert!(!report.individually_rational);
        assert!(!report.problems.is_empty());
    }
}
