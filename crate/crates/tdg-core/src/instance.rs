//! The game model: agents with exact rational utilities placed injectively on
//! a topology, utility evaluation, and the individual-rationality check.

use crate::dff::{DffError, DistanceFactorFunction};
use crate::rational::Rational;
use crate::topology::{Distance, DistanceMatrix, Topology};
use crate::validate::Violation;

/// A complete game: topology, agents, utility matrix, and distance factor
/// function. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    topology: Topology,
    agent_names: Vec<String>,
    utilities: Vec<Vec<Rational>>,
    dff: DistanceFactorFunction,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceShapeError {
    #[error("utility matrix must be {agents}x{agents} for {agents} agents, found {rows} rows")]
    WrongRowCount { agents: usize, rows: usize },
    #[error("utility matrix row {row} has {cols} entries, expected {agents}")]
    WrongColumnCount { agents: usize, row: usize, cols: usize },
}

impl Instance {
    /// Builds an instance, checking only that the utility matrix is square
    /// and matches the agent list. Semantic invariants are reported by
    /// [`Instance::validate`] so callers can decide severity.
    pub fn new(
        topology: Topology,
        agent_names: Vec<String>,
        utilities: Vec<Vec<Rational>>,
        dff: DistanceFactorFunction,
    ) -> Result<Self, InstanceShapeError> {
        let agents = agent_names.len();
        if utilities.len() != agents {
            return Err(InstanceShapeError::WrongRowCount { agents, rows: utilities.len() });
        }
        for (row, cols) in utilities.iter().enumerate() {
            if cols.len() != agents {
                return Err(InstanceShapeError::WrongColumnCount { agents, row, cols: cols.len() });
            }
        }
        Ok(Instance { topology, agent_names, utilities, dff })
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn agent_names(&self) -> &[String] {
        &self.agent_names
    }

    pub fn agent_count(&self) -> usize {
        self.agent_names.len()
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    /// Utility agent `i` assigns to agent `j`.
    pub fn utility(&self, i: usize, j: usize) -> &Rational {
        &self.utilities[i][j]
    }

    pub fn dff(&self) -> &DistanceFactorFunction {
        &self.dff
    }

    /// Checks every instance invariant and returns the violations, empty on a
    /// valid instance.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.agent_count() > self.topology.vertex_count() {
            out.push(Violation::new(
                "/agents",
                format!(
                    "fewer vertices than agents: {} agents on {} vertices",
                    self.agent_count(),
                    self.topology.vertex_count()
                ),
            ));
        }
        {
            let mut seen = std::collections::BTreeMap::new();
            for (i, name) in self.agent_names.iter().enumerate() {
                if let Some(first) = seen.insert(name, i) {
                    out.push(Violation::new(
                        format!("/agents/{i}"),
                        format!("duplicate agent name {name:?} (first used at index {first})"),
                    ));
                }
            }
        }
        for (i, row) in self.utilities.iter().enumerate() {
            if !row[i].is_zero() {
                out.push(Violation::new(
                    format!("/utilities/{i}/{i}"),
                    format!("diagonal nonzero: an agent's utility for itself must be 0, got {}", row[i]),
                ));
            }
        }
        out.extend(self.dff.violations());
        if let DistanceFactorFunction::Table(values) = &self.dff {
            let distances = self.topology.shortest_distances();
            for component in self.topology.components() {
                let diameter = distances.diameter_of(&component);
                if values.len() < diameter {
                    out.push(Violation::new(
                        "/dff/values",
                        format!(
                            "table of length {} does not cover the component containing vertex \
                             {} (diameter {diameter})",
                            values.len(),
                            component[0]
                        ),
                    ));
                }
            }
        }
        out
    }
}

/// Runs all instance invariant checks; `Ok` on a valid instance.
pub fn validate_instance(instance: &Instance) -> Result<(), Vec<Violation>> {
    let violations = instance.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// An injective, total map from agent indices to vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    placement: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentError {
    #[error("assignment places {got} agents, instance has {expected}")]
    NotTotal { expected: usize, got: usize },
    #[error("vertex {vertex} is assigned to more than one agent")]
    DuplicateVertex { vertex: usize },
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
}

impl Assignment {
    /// Wraps a placement vector (`placement[agent] = vertex`). Validity
    /// against a concrete instance is checked by [`Assignment::validate`].
    pub fn new(placement: Vec<usize>) -> Self {
        Assignment { placement }
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn vertex_of(&self, agent: usize) -> usize {
        self.placement[agent]
    }

    pub fn validate(&self, instance: &Instance) -> Result<(), AssignmentError> {
        let n = instance.topology().vertex_count();
        if self.placement.len() != instance.agent_count() {
            return Err(AssignmentError::NotTotal {
                expected: instance.agent_count(),
                got: self.placement.len(),
            });
        }
        let mut used = vec![false; n];
        for &v in &self.placement {
            if v >= n {
                return Err(AssignmentError::VertexOutOfRange { vertex: v, vertex_count: n });
            }
            if used[v] {
                return Err(AssignmentError::DuplicateVertex { vertex: v });
            }
            used[v] = true;
        }
        Ok(())
    }
}

/// The exact utility of one agent under an assignment:
/// the sum over all other agents of `u_i(j) * f(dist(λ(i), λ(j)))`.
///
/// Expects a validated instance and a valid assignment; agents in other
/// components contribute exactly 0 because `f(unreachable) = 0`.
pub fn agent_utility(
    instance: &Instance,
    assignment: &Assignment,
    agent: usize,
    distances: &DistanceMatrix,
) -> Rational {
    let mut total = Rational::zero();
    let my_vertex = assignment.vertex_of(agent);
    for (j, value) in instance.utilities()[agent].iter().enumerate() {
        if j == agent || value.is_zero() {
            continue;
        }
        let d = distances.get(my_vertex, assignment.vertex_of(j));
        let factor = instance
            .dff()
            .eval(d)
            .expect("validated instance: dff covers every finite distance");
        if !factor.is_zero() {
            total += value * &factor;
        }
    }
    total
}

/// Per-agent utilities plus the overall individual-rationality verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrReport {
    pub individually_rational: bool,
    pub utilities: Vec<Rational>,
}

/// Decides whether an assignment is individually rational: every agent's
/// utility is non-negative. Returns the exact per-agent utilities.
pub fn is_individually_rational(
    instance: &Instance,
    assignment: &Assignment,
) -> Result<IrReport, AssignmentError> {
    assignment.validate(instance)?;
    let distances = instance.topology().shortest_distances();
    let utilities: Vec<Rational> = (0..instance.agent_count())
        .map(|i| agent_utility(instance, assignment, i, &distances))
        .collect();
    let individually_rational = utilities.iter().all(|u| !u.is_negative());
    Ok(IrReport { individually_rational, utilities })
}

/// Precomputed evaluation context shared by the solvers: distances plus the
/// distance factor value for every finite distance that can occur.
pub struct Evaluator<'a> {
    instance: &'a Instance,
    distances: DistanceMatrix,
    factors: Vec<Rational>,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance) -> Result<Self, DffError> {
        let distances = instance.topology().shortest_distances();
        let max_d = distances.max_finite();
        let mut factors = Vec::with_capacity(max_d + 1);
        factors.push(Rational::zero()); // distance 0 never contributes
        for d in 1..=max_d {
            factors.push(instance.dff().eval(Distance::Finite(d))?);
        }
        Ok(Evaluator { instance, distances, factors })
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    /// `f` at a distance taken from this instance's matrix.
    pub fn factor(&self, d: Distance) -> Rational {
        match d {
            Distance::Unreachable => Rational::zero(),
            Distance::Finite(d) => self.factors[d].clone(),
        }
    }

    /// `f(1)`, the maximum value `f` attains on finite distances; zero when
    /// the topology has no edges (distance 1 never occurs).
    pub fn max_factor(&self) -> Rational {
        self.factors.get(1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn agent_utility(&self, placement: &[usize], agent: usize) -> Rational {
        let mut total = Rational::zero();
        let my_vertex = placement[agent];
        for (j, value) in self.instance.utilities()[agent].iter().enumerate() {
            if j == agent || value.is_zero() {
                continue;
            }
            let factor = self.factor(self.distances.get(my_vertex, placement[j]));
            if !factor.is_zero() {
                total += value * &factor;
            }
        }
        total
    }

    pub fn all_utilities(&self, placement: &[usize]) -> Vec<Rational> {
        (0..self.instance.agent_count()).map(|i| self.agent_utility(placement, i)).collect()
    }

    pub fn is_individually_rational(&self, placement: &[usize]) -> bool {
        (0..self.instance.agent_count())
            .all(|i| !self.agent_utility(placement, i).is_negative())
    }
}
