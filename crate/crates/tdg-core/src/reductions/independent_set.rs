//! Independent Set gadget: the topology is the source graph plus an apex
//! vertex adjacent to everything. Standard agents value each other at `-b`
//! and exchange `(k-1) f(2) b / f(1)` with the guard symmetrically; placing
//! them on an independent set (pairwise distance 2 through the apex) with
//! the guard on the apex lands every standard agent at exactly zero, and
//! any adjacency drags one below.

use std::collections::BTreeMap;

use crate::dff::DistanceFactorFunction;
use crate::instance::{Assignment, Instance};
use crate::rational::Rational;
use crate::topology::{Distance, Topology};

use super::{
    finish, CertificateError, Gadget, GadgetParams, GeneratedInstance, GeneratorError,
    GraphProblem,
};

/// Vertex layout: the source graph keeps its ids, the apex is `|V(H)|`.
/// Agents: standards a1..ak = `0..k`, guard g = `k`.
pub fn gen_independent_set(
    src: &GraphProblem,
    beta: &Rational,
    dff: &DistanceFactorFunction,
) -> Result<GeneratedInstance, GeneratorError> {
    let (instance, params) = selection_gadget(src, beta, dff, true)?;
    let metadata = selection_metadata(src, beta);
    finish(instance, Gadget::IndependentSet, metadata, params)
}

pub(crate) fn selection_metadata(
    src: &GraphProblem,
    beta: &Rational,
) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("k".to_string(), src.k.to_string()),
        ("beta".to_string(), beta.to_string()),
        ("graph-vertices".to_string(), src.graph.vertex_count().to_string()),
        ("graph-edges".to_string(), src.graph.edge_count().to_string()),
    ])
}

/// Shared construction for the two selection gadgets. `independent` selects
/// the Independent Set utilities; otherwise the Clique ones.
fn selection_gadget(
    src: &GraphProblem,
    beta: &Rational,
    dff: &DistanceFactorFunction,
    independent: bool,
) -> Result<(Instance, GadgetParams), GeneratorError> {
    if src.k < 2 {
        return Err(GeneratorError::DegenerateParameter(format!(
            "k must be at least 2, got {}",
            src.k
        )));
    }
    if !beta.is_positive() {
        return Err(GeneratorError::DegenerateParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    let h = src.graph.vertex_count();
    if src.k > h {
        return Err(GeneratorError::Precondition(format!(
            "k = {} selection agents need at least as many source-graph vertices, got {h}",
            src.k
        )));
    }
    let f1 = dff.eval(Distance::Finite(1)).map_err(|e| {
        GeneratorError::Precondition(format!("distance factor function unusable: {e}"))
    })?;
    let f2 = dff.eval(Distance::Finite(2)).map_err(|e| {
        GeneratorError::Precondition(format!("distance factor function unusable: {e}"))
    })?;

    let mut edges: Vec<(usize, usize)> = src.graph.edges().collect();
    let apex = h;
    for v in 0..h {
        edges.push((v, apex));
    }
    let vertex_count = if independent {
        h + 1
    } else {
        // Clique variant: apex plus its pendant.
        edges.push((apex, h + 1));
        h + 2
    };
    let topology = Topology::new(vertex_count, edges).expect("apex extension is valid");

    let k = src.k;
    let mut names: Vec<String> = (0..k).map(|i| format!("a{}", i + 1)).collect();
    names.push("g".to_string());
    let guard = k;
    let mut utilities = vec![vec![Rational::zero(); k + 1]; k + 1];
    let k_minus_1 = Rational::from_integer(k as i64 - 1);
    if independent {
        let exchange = &(&k_minus_1 * &f2) * beta / &f1;
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    utilities[i][j] = -beta.clone();
                }
            }
            utilities[i][guard] = exchange.clone();
            utilities[guard][i] = exchange.clone();
        }
    } else {
        let mutual = &(&f2 * beta) / &(&f1 * &k_minus_1);
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    utilities[i][j] = mutual.clone();
                }
            }
            utilities[i][guard] = -beta.clone();
        }
    }

    let instance = Instance::new(topology, names, utilities, dff.clone())
        .expect("matrix is square by construction");
    Ok((instance, GadgetParams::Selection { k, graph_vertices: h }))
}

pub(crate) fn build_selection_gadget(
    src: &GraphProblem,
    beta: &Rational,
    dff: &DistanceFactorFunction,
    independent: bool,
) -> Result<(Instance, GadgetParams), GeneratorError> {
    selection_gadget(src, beta, dff, independent)
}

/// Standards onto the selected vertices in ascending order, guard on the
/// apex. The set must be an independent set of size `k` in the source graph.
pub(crate) fn certificate_assignment(
    instance: &Instance,
    k: usize,
    graph_vertices: usize,
    set: &[usize],
) -> Result<Assignment, CertificateError> {
    let sorted = check_selection(instance, k, graph_vertices, set, true)?;
    let apex = graph_vertices;
    let mut placement = sorted;
    placement.push(apex);
    Ok(Assignment::new(placement))
}

/// Shared validation for selection certificates; returns the sorted vertex
/// set. `independent` demands pairwise non-adjacency, otherwise adjacency.
pub(crate) fn check_selection(
    instance: &Instance,
    k: usize,
    graph_vertices: usize,
    set: &[usize],
    independent: bool,
) -> Result<Vec<usize>, CertificateError> {
    if set.len() != k {
        return Err(CertificateError::Invalid(format!(
            "{} vertices selected, expected k = {k}",
            set.len()
        )));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Err(CertificateError::Invalid("selected vertices repeat".to_string()));
    }
    if let Some(&bad) = sorted.iter().find(|&&v| v >= graph_vertices) {
        return Err(CertificateError::Invalid(format!(
            "vertex {bad} is not a source-graph vertex (source has {graph_vertices})"
        )));
    }
    // Source-graph adjacency survives unchanged in the gadget topology.
    for (idx, &u) in sorted.iter().enumerate() {
        for &v in &sorted[idx + 1..] {
            let adjacent = instance.topology().has_edge(u, v);
            if adjacent && independent {
                return Err(CertificateError::Invalid(format!(
                    "vertices {u} and {v} are adjacent, not an independent set"
                )));
            }
            if !adjacent && !independent {
                return Err(CertificateError::Invalid(format!(
                    "vertices {u} and {v} are not adjacent, not a clique"
                )));
            }
        }
    }
    Ok(sorted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::is_individually_rational;
    use crate::rational::rat;
    use crate::reductions::{certificate_to_assignment, SourceCertificate};

    fn p3_gadget() -> GeneratedInstance {
        let src = GraphProblem { graph: Topology::path(3), k: 2 };
        gen_independent_set(&src, &rat("1"), &DistanceFactorFunction::Reciprocal).unwrap()
    }

    #[test]
    fn structure_and_utilities() {
        let gen = p3_gadget();
        assert_eq!(gen.instance.topology().vertex_count(), 4);
        assert_eq!(gen.instance.agent_count(), 3);
        // (k-1) f(2) beta / f(1) = 1/2, symmetric.
        assert_eq!(gen.instance.utility(0, 2), &rat("1/2"));
        assert_eq!(gen.instance.utility(2, 0), &rat("1/2"));
        assert_eq!(gen.instance.utility(0, 1), &rat("-1"));
    }

    #[test]
    fn endpoints_certificate_zeroes_standards() {
        let gen = p3_gadget();
        let assignment =
            certificate_to_assignment(&gen, &SourceCertificate::VertexSet(vec![0, 2])).unwrap();
        assert_eq!(assignment.placement(), &[0, 2, 3]);
        let report = is_individually_rational(&gen.instance, &assignment).unwrap();
        assert!(report.individually_rational);
        assert_eq!(report.utilities[0], rat("0"));
        assert_eq!(report.utilities[1], rat("0"));
        assert_eq!(report.utilities[2], rat("1"));
    }

    #[test]
    fn adjacent_pair_is_not_a_certificate() {
        let gen = p3_gadget();
        let bad = certificate_to_assignment(&gen, &SourceCertificate::VertexSet(vec![0, 1]));
        assert!(matches!(bad, Err(CertificateError::Invalid(_))));
    }

    #[test]
    fn degenerate_k_is_rejected() {
        let src = GraphProblem { graph: Topology::path(3), k: 1 };
        assert!(matches!(
            gen_independent_set(&src, &rat("1"), &DistanceFactorFunction::Reciprocal),
            Err(GeneratorError::DegenerateParameter(_))
        ));
        let src = GraphProblem { graph: Topology::path(3), k: 2 };
        assert!(matches!(
            gen_independent_set(&src, &rat("0"), &DistanceFactorFunction::Reciprocal),
            Err(GeneratorError::DegenerateParameter(_))
        ));
    }
}
