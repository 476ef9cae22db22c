//! Exhaustive search over injective assignments (the XP algorithm), with an
//! optimistic-bound prune and symmetry breaking between interchangeable
//! agents. Both additions are answer-preserving: the prune discards a branch
//! only when a placed agent provably cannot recover a non-negative utility,
//! and interchangeable agents can always be swapped into increasing vertex
//! order without changing any agent's utility.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::instance::{Assignment, Evaluator, Instance};
use crate::rational::Rational;

use super::{validated, Algorithm, SolveResult, SolverError};

/// Single-threaded exhaustive search. Agents are explored in index order and
/// vertices in id order, so the witness is the lexicographically first
/// surviving assignment.
pub fn solve_brute_force(instance: &Instance) -> Result<SolveResult, SolverError> {
    solve_brute_force_with_threads(instance, 1)
}

/// Exhaustive search with the top-level branches (agent 0's vertex) split
/// across `threads` workers. Output is byte-identical for every worker
/// count: the witness is the first one in branch order, and the node count
/// covers exactly the branches a sequential run would explore, i.e. every
/// branch before the winning one in full plus the winning branch up to its
/// first witness.
pub fn solve_brute_force_with_threads(
    instance: &Instance,
    threads: usize,
) -> Result<SolveResult, SolverError> {
    validated(instance)?;
    let agent_count = instance.agent_count();
    if agent_count == 0 {
        return Ok(SolveResult {
            answer: true,
            witness: Some(Assignment::new(Vec::new())),
            algorithm: Algorithm::BruteForce,
            nodes_explored: 0,
        });
    }
    let evaluator = Evaluator::new(instance)?;
    let search = Search::prepare(instance, &evaluator);
    let branch_count = instance.topology().vertex_count();
    let threads = threads.max(1).min(branch_count);

    let outcomes: Vec<BranchOutcome> = if threads <= 1 {
        explore_sequential(&search, branch_count)
    } else {
        explore_parallel(&search, branch_count, threads)
    };

    let mut nodes_explored = 0u64;
    let mut witness = None;
    for (branch, outcome) in outcomes.iter().enumerate() {
        match outcome {
            BranchOutcome::Done { nodes, witness: w } => {
                nodes_explored += nodes;
                if w.is_some() {
                    witness = w.clone();
                    break;
                }
            }
            BranchOutcome::Skipped => {
                unreachable!("branch {branch} skipped with no earlier witness")
            }
        }
    }
    Ok(SolveResult {
        answer: witness.is_some(),
        witness: witness.map(Assignment::new),
        algorithm: Algorithm::BruteForce,
        nodes_explored,
    })
}

#[derive(Debug, Clone)]
enum BranchOutcome {
    Done { nodes: u64, witness: Option<Vec<usize>> },
    /// Abandoned because an earlier branch already produced a witness; never
    /// consulted by the final accounting.
    Skipped,
}

enum Control {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

fn explore_sequential(search: &Search<'_>, branch_count: usize) -> Vec<BranchOutcome> {
    let mut outcomes = Vec::with_capacity(branch_count);
    for first_vertex in 0..branch_count {
        let outcome = search.explore_branch(first_vertex, &|| false).expect("never aborted");
        let found = matches!(outcome, BranchOutcome::Done { witness: Some(_), .. });
        outcomes.push(outcome);
        if found {
            break;
        }
    }
    outcomes
}

fn explore_parallel(
    search: &Search<'_>,
    branch_count: usize,
    threads: usize,
) -> Vec<BranchOutcome> {
    // `best_found` is the smallest branch index known to hold a witness.
    // A worker may skip or abort only branches strictly greater than it, so
    // every branch before the final winner is still explored in full.
    let next = AtomicUsize::new(0);
    let best_found = AtomicUsize::new(usize::MAX);
    let slots: Vec<Mutex<Option<BranchOutcome>>> =
        (0..branch_count).map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let branch = next.fetch_add(1, Ordering::SeqCst);
                if branch >= branch_count {
                    break;
                }
                if best_found.load(Ordering::SeqCst) < branch {
                    *slots[branch].lock().unwrap() = Some(BranchOutcome::Skipped);
                    continue;
                }
                let abort = || best_found.load(Ordering::SeqCst) < branch;
                let outcome = match search.explore_branch(branch, &abort) {
                    Some(done) => {
                        if matches!(done, BranchOutcome::Done { witness: Some(_), .. }) {
                            best_found.fetch_min(branch, Ordering::SeqCst);
                        }
                        done
                    }
                    None => BranchOutcome::Skipped,
                };
                *slots[branch].lock().unwrap() = Some(outcome);
            });
        }
    });

    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every branch recorded"))
        .collect()
}

struct Search<'a> {
    instance: &'a Instance,
    evaluator: &'a Evaluator<'a>,
    agent_count: usize,
    vertex_count: usize,
    /// `prev_in_class[a]`: the nearest smaller agent interchangeable with
    /// `a`; symmetry breaking forces `placement[a] > placement[prev]`.
    prev_in_class: Vec<Option<usize>>,
    /// `optimistic[a][d]`: best possible remaining contribution to agent
    /// `a`'s utility once agents `0..d` are placed, i.e. the sum of
    /// `u[a][j] * f(1)` over unplaced friends `j >= d`.
    optimistic: Vec<Vec<Rational>>,
}

impl<'a> Search<'a> {
    fn prepare(instance: &'a Instance, evaluator: &'a Evaluator<'a>) -> Self {
        let agent_count = instance.agent_count();
        let max_factor = evaluator.max_factor();
        let utilities = instance.utilities();

        let mut optimistic = Vec::with_capacity(agent_count);
        for a in 0..agent_count {
            let mut row = vec![Rational::zero(); agent_count + 1];
            for d in (0..agent_count).rev() {
                let mut value = row[d + 1].clone();
                if d != a && utilities[a][d].is_positive() {
                    value += &(&utilities[a][d] * &max_factor);
                }
                row[d] = value;
            }
            optimistic.push(row);
        }

        let mut prev_in_class = vec![None; agent_count];
        for a in 0..agent_count {
            prev_in_class[a] = (0..a).rev().find(|&b| interchangeable(instance, b, a));
        }

        Search {
            instance,
            evaluator,
            agent_count,
            vertex_count: instance.topology().vertex_count(),
            prev_in_class,
            optimistic,
        }
    }

    /// Explores the subtree rooted at placing agent 0 on `first_vertex`.
    /// Returns `None` when aborted by the caller's predicate.
    fn explore_branch(&self, first_vertex: usize, abort: &dyn Fn() -> bool) -> Option<BranchOutcome> {
        let mut state = State {
            placement: Vec::with_capacity(self.agent_count),
            occupied: vec![false; self.vertex_count],
            partial: vec![Rational::zero(); self.agent_count],
            nodes: 0,
        };
        state.nodes = 1;
        state.placement.push(first_vertex);
        state.occupied[first_vertex] = true;
        let control = if self.bound_ok(&state, 1) {
            self.dfs(1, &mut state, abort)
        } else {
            Control::Exhausted
        };
        match control {
            Control::Found(witness) => {
                Some(BranchOutcome::Done { nodes: state.nodes, witness: Some(witness) })
            }
            Control::Exhausted => Some(BranchOutcome::Done { nodes: state.nodes, witness: None }),
            Control::Aborted => None,
        }
    }

    fn bound_ok(&self, state: &State, depth: usize) -> bool {
        (0..depth).all(|i| !(&state.partial[i] + &self.optimistic[i][depth]).is_negative())
    }

    fn dfs(&self, depth: usize, state: &mut State, abort: &dyn Fn() -> bool) -> Control {
        if depth == self.agent_count {
            // The bound check at the parent already certified that every
            // final utility is non-negative.
            return Control::Found(state.placement.clone());
        }
        let utilities = self.instance.utilities();
        let distances = self.evaluator.distances();
        let min_vertex = match self.prev_in_class[depth] {
            Some(prev) => state.placement[prev] + 1,
            None => 0,
        };
        for vertex in min_vertex..self.vertex_count {
            if state.occupied[vertex] {
                continue;
            }
            state.nodes += 1;
            if state.nodes % 4096 == 0 && abort() {
                return Control::Aborted;
            }

            let mut deltas: Vec<(usize, Rational)> = Vec::with_capacity(depth);
            let mut own = Rational::zero();
            for i in 0..depth {
                let factor = self.evaluator.factor(distances.get(state.placement[i], vertex));
                if factor.is_zero() {
                    continue;
                }
                if !utilities[i][depth].is_zero() {
                    let delta = &utilities[i][depth] * &factor;
                    state.partial[i] += &delta;
                    deltas.push((i, delta));
                }
                if !utilities[depth][i].is_zero() {
                    own += &(&utilities[depth][i] * &factor);
                }
            }
            state.partial[depth] = own;
            state.placement.push(vertex);
            state.occupied[vertex] = true;

            if self.bound_ok(state, depth + 1) {
                match self.dfs(depth + 1, state, abort) {
                    Control::Exhausted => {}
                    stop => return stop,
                }
            }

            state.occupied[vertex] = false;
            state.placement.pop();
            for (i, delta) in deltas {
                state.partial[i] -= &delta;
            }
        }
        Control::Exhausted
    }
}

struct State {
    placement: Vec<usize>,
    occupied: Vec<bool>,
    partial: Vec<Rational>,
    nodes: u64,
}

/// Two agents are interchangeable when swapping them in any assignment
/// permutes the utility profile: identical utility rows and columns off the
/// pair, plus equal mutual utilities. This is an equivalence relation.
fn interchangeable(instance: &Instance, a: usize, b: usize) -> bool {
    let u = instance.utilities();
    if u[a][b] != u[b][a] {
        return false;
    }
    (0..instance.agent_count())
        .filter(|&k| k != a && k != b)
        .all(|k| u[a][k] == u[b][k] && u[k][a] == u[k][b])
}
