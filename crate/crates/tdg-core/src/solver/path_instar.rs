//! Permutation algorithm for path topologies whose enmity arcs all point at
//! one agent `p`. An exchange argument shows that if any individually
//! rational assignment exists, one exists with `p` on the far endpoint of
//! the canonical walk and the remaining agents packed onto the first
//! `|N| - 1` vertices, so it suffices to try their `(|N| - 1)!` orderings.

use crate::enmity::enmity_structure;
use crate::instance::{Assignment, Evaluator, Instance};

use super::{describe_class, validated, Algorithm, SolveResult, SolverError};

pub fn solve_path_instar(instance: &Instance, p: usize) -> Result<SolveResult, SolverError> {
    validated(instance)?;
    let agent_count = instance.agent_count();
    if p >= agent_count {
        return Err(SolverError::AgentOutOfRange { agent: p, agent_count });
    }
    let order = instance.topology().path_order().ok_or(SolverError::NotAPath)?;
    // Requirement: every enmity arc points at p. This includes the one-arc
    // case, which the classification priority labels single-source.
    let structure = enmity_structure(instance);
    if structure.arcs().iter().any(|&(_, head)| head != p) {
        return Err(SolverError::StructureMismatch {
            expected: format!("all enmity arcs oriented towards agent {p}"),
            found: describe_class(structure.classification()),
        });
    }

    let evaluator = Evaluator::new(instance)?;
    let last_vertex = order[order.len() - 1];

    // Orderings of the remaining agents onto the first |N|-1 path vertices,
    // enumerated lexicographically by agent index.
    let mut ordering: Vec<usize> = (0..agent_count).filter(|&i| i != p).collect();
    let mut nodes_explored = 0u64;
    loop {
        nodes_explored += 1;
        let mut placement = vec![usize::MAX; agent_count];
        placement[p] = last_vertex;
        for (slot, &agent) in ordering.iter().enumerate() {
            placement[agent] = order[slot];
        }
        if evaluator.is_individually_rational(&placement) {
            return Ok(SolveResult {
                answer: true,
                witness: Some(Assignment::new(placement)),
                algorithm: Algorithm::PathInstar,
                nodes_explored,
            });
        }
        if !next_permutation(&mut ordering) {
            break;
        }
    }
    Ok(SolveResult {
        answer: false,
        witness: None,
        algorithm: Algorithm::PathInstar,
        nodes_explored,
    })
}

/// Advances to the next permutation in lexicographic order; false when the
/// sequence was the last one.
fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}
