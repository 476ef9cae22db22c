//! Polynomial algorithm for instances where at most one agent `p` has
//! enemies. Every other agent is automatically individually rational, so for
//! each candidate vertex of `p` the algorithm greedily maximizes `p`'s
//! utility: best friends to the nearest free vertices, worst enemies to the
//! farthest (unreachable counts as farthest, where `f` vanishes). The
//! greedy placement is optimal for a fixed vertex by the rearrangement
//! argument, so trying every vertex decides the instance exactly.

use crate::enmity::{enmity_structure, EnmityClass};
use crate::instance::{Assignment, Evaluator, Instance};
use crate::rational::Rational;

use super::{describe_class, validated, Algorithm, SolveResult, SolverError};

pub fn solve_single_source(instance: &Instance, p: usize) -> Result<SolveResult, SolverError> {
    validated(instance)?;
    let agent_count = instance.agent_count();
    if p >= agent_count {
        return Err(SolverError::AgentOutOfRange { agent: p, agent_count });
    }
    let class = enmity_structure(instance).classification();
    match class {
        EnmityClass::NoArcs => {}
        EnmityClass::SingleSource(q) if q == p => {}
        other => {
            return Err(SolverError::StructureMismatch {
                expected: format!("no-arcs or single-source({p})"),
                found: describe_class(other),
            })
        }
    }

    let evaluator = Evaluator::new(instance)?;
    let utilities = instance.utilities();
    let vertex_count = instance.topology().vertex_count();

    // Friends by utility descending, enemies by utility ascending (most
    // negative first); agent index breaks ties so witnesses are stable.
    let mut friends: Vec<usize> = (0..agent_count)
        .filter(|&i| i != p && !utilities[p][i].is_negative())
        .collect();
    friends.sort_by(|&a, &b| utilities[p][b].cmp(&utilities[p][a]).then(a.cmp(&b)));
    let mut enemies: Vec<usize> = (0..agent_count)
        .filter(|&i| i != p && utilities[p][i].is_negative())
        .collect();
    enemies.sort_by(|&a, &b| utilities[p][a].cmp(&utilities[p][b]).then(a.cmp(&b)));

    let mut nodes_explored = 0u64;
    for vertex in 0..vertex_count {
        nodes_explored += 1;
        let mut others: Vec<usize> = (0..vertex_count).filter(|&w| w != vertex).collect();
        others.sort_by_key(|&w| (evaluator.distances().get(vertex, w), w));

        let mut placement = vec![usize::MAX; agent_count];
        placement[p] = vertex;
        for (slot, &agent) in friends.iter().enumerate() {
            placement[agent] = others[slot];
        }
        for (back, &agent) in enemies.iter().enumerate() {
            placement[agent] = others[others.len() - 1 - back];
        }

        let mut utility_of_p = Rational::zero();
        for i in 0..agent_count {
            if i == p || utilities[p][i].is_zero() {
                continue;
            }
            let factor = evaluator.factor(evaluator.distances().get(vertex, placement[i]));
            if !factor.is_zero() {
                utility_of_p += &(&utilities[p][i] * &factor);
            }
        }
        if !utility_of_p.is_negative() {
            return Ok(SolveResult {
                answer: true,
                witness: Some(Assignment::new(placement)),
                algorithm: Algorithm::SingleSource,
                nodes_explored,
            });
        }
    }
    Ok(SolveResult {
        answer: false,
        witness: None,
        algorithm: Algorithm::SingleSource,
        nodes_explored,
    })
}
