//! Shared helpers for the integration suites: seeded random instances and a
//! naive individual-rationality oracle that shares no search machinery with
//! the solvers (Floyd-Warshall distances, unpruned enumeration, direct
//! utility sums).

use rand::prelude::IndexedRandom;
use rand::Rng;

use tdg_core::dff::DistanceFactorFunction;
use tdg_core::instance::Instance;
use tdg_core::rational::Rational;
use tdg_core::topology::{Distance, Topology};

pub fn random_rational(rng: &mut impl Rng, max_abs: i64) -> Rational {
    let denominator = rng.random_range(1..=4i64);
    let numerator = rng.random_range(-max_abs * denominator..=max_abs * denominator);
    Rational::ratio(numerator, denominator)
}

pub fn random_nonnegative_rational(rng: &mut impl Rng, max: i64) -> Rational {
    let denominator = rng.random_range(1..=4i64);
    let numerator = rng.random_range(0..=max * denominator);
    Rational::ratio(numerator, denominator)
}

pub fn random_topology(rng: &mut impl Rng, vertex_count: usize) -> Topology {
    let edge_probability = *[0.15f64, 0.3, 0.5, 0.8].choose(rng).unwrap();
    let mut edges = Vec::new();
    for u in 0..vertex_count {
        for v in u + 1..vertex_count {
            if rng.random_bool(edge_probability) {
                edges.push((u, v));
            }
        }
    }
    Topology::new(vertex_count, edges).unwrap()
}

pub fn named_instance(
    topology: Topology,
    utilities: Vec<Vec<Rational>>,
    dff: DistanceFactorFunction,
) -> Instance {
    let names = (0..utilities.len()).map(|i| format!("a{}", i + 1)).collect();
    let instance = Instance::new(topology, names, utilities, dff).unwrap();
    assert!(instance.validate().is_empty(), "helper built an invalid instance");
    instance
}

/// Random instance with `|V| <= max_vertices`, `|N| <= max_agents`, rational
/// utilities in `[-3, 3]`, reciprocal distance factor function.
pub fn random_instance(rng: &mut impl Rng, max_vertices: usize, max_agents: usize) -> Instance {
    let vertex_count = rng.random_range(1..=max_vertices);
    let agent_count = rng.random_range(1..=vertex_count.min(max_agents));
    let topology = random_topology(rng, vertex_count);
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for i in 0..agent_count {
        for j in 0..agent_count {
            if i != j {
                utilities[i][j] = random_rational(rng, 3);
            }
        }
    }
    named_instance(topology, utilities, DistanceFactorFunction::Reciprocal)
}

/// Random instance whose enmity arcs (if any) all leave agent `p`;
/// disconnected topologies included. Returns `(instance, p)`.
pub fn random_single_source_instance(rng: &mut impl Rng) -> (Instance, usize) {
    let vertex_count = rng.random_range(2..=8);
    let agent_count = rng.random_range(2..=vertex_count.min(6));
    let topology = random_topology(rng, vertex_count);
    let p = rng.random_range(0..agent_count);
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for i in 0..agent_count {
        for j in 0..agent_count {
            if i == j {
                continue;
            }
            utilities[i][j] = if i == p {
                random_rational(rng, 3)
            } else {
                random_nonnegative_rational(rng, 3)
            };
        }
    }
    // Force at least one enemy so the single-source structure is exercised.
    let enemy = (p + 1 + rng.random_range(0..agent_count - 1)) % agent_count;
    let denominator = rng.random_range(1..=4i64);
    utilities[p][enemy] =
        Rational::ratio(-rng.random_range(1..=3 * denominator), denominator);
    (named_instance(topology, utilities, DistanceFactorFunction::Reciprocal), p)
}

/// Random path instance whose enmity arcs all enter agent `p`, with at
/// least two arcs from distinct tails (a proper in-star). Returns
/// `(instance, p)`.
pub fn random_path_sink_instance(rng: &mut impl Rng) -> (Instance, usize) {
    let vertex_count = rng.random_range(3..=9);
    let agent_count = rng.random_range(3..=vertex_count.min(6));
    let topology = Topology::path(vertex_count);
    let p = rng.random_range(0..agent_count);
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for i in 0..agent_count {
        for j in 0..agent_count {
            if i == j {
                continue;
            }
            utilities[i][j] = if j == p {
                random_rational(rng, 3)
            } else {
                random_nonnegative_rational(rng, 3)
            };
        }
    }
    let mut tails: Vec<usize> = (0..agent_count).filter(|&i| i != p).collect();
    for _ in 0..2 {
        let pick = rng.random_range(0..tails.len());
        let tail = tails.swap_remove(pick);
        let denominator = rng.random_range(1..=4i64);
        utilities[tail][p] =
            Rational::ratio(-rng.random_range(1..=3 * denominator), denominator);
    }
    (named_instance(topology, utilities, DistanceFactorFunction::Reciprocal), p)
}

/// All-pairs shortest distances by Floyd-Warshall; `None` is unreachable.
pub fn floyd_warshall(topology: &Topology) -> Vec<Vec<Option<usize>>> {
    let n = topology.vertex_count();
    let mut dist = vec![vec![None; n]; n];
    for v in 0..n {
        dist[v][v] = Some(0);
    }
    for (u, v) in topology.edges() {
        dist[u][v] = Some(1);
        dist[v][u] = Some(1);
    }
    for mid in 0..n {
        for i in 0..n {
            let Some(a) = dist[i][mid] else { continue };
            for j in 0..n {
                let Some(b) = dist[mid][j] else { continue };
                if dist[i][j].is_none_or(|c| a + b < c) {
                    dist[i][j] = Some(a + b);
                }
            }
        }
    }
    dist
}

/// Exhaustive decider with no pruning and no symmetry breaking: tries every
/// injective placement and sums utilities directly.
pub fn naive_ir_exists(instance: &Instance) -> bool {
    let n = instance.topology().vertex_count();
    let m = instance.agent_count();
    let dist = floyd_warshall(instance.topology());
    let max_finite = dist
        .iter()
        .flatten()
        .filter_map(|d| *d)
        .max()
        .unwrap_or(0);
    let factors: Vec<Rational> = (0..=max_finite)
        .map(|d| {
            if d == 0 {
                Rational::zero()
            } else {
                instance.dff().eval(Distance::Finite(d)).unwrap()
            }
        })
        .collect();
    let factor = |d: Option<usize>| -> Rational {
        match d {
            None => Rational::zero(),
            Some(d) => factors[d].clone(),
        }
    };

    let mut placement: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; n];
    fn recurse(
        instance: &Instance,
        dist: &[Vec<Option<usize>>],
        factor: &dyn Fn(Option<usize>) -> Rational,
        placement: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let m = instance.agent_count();
        if placement.len() == m {
            return (0..m).all(|i| {
                let mut total = Rational::zero();
                for j in 0..m {
                    if j != i {
                        total += &(instance.utility(i, j)
                            * &factor(dist[placement[i]][placement[j]]));
                    }
                }
                !total.is_negative()
            });
        }
        for v in 0..used.len() {
            if used[v] {
                continue;
            }
            used[v] = true;
            placement.push(v);
            if recurse(instance, dist, factor, placement, used) {
                return true;
            }
            placement.pop();
            used[v] = false;
        }
        false
    }
    recurse(instance, &dist, &factor, &mut placement, &mut used)
}
