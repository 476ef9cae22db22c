//! Clique gadget: the source graph plus an apex and a pendant hanging off
//! it, so every distance is 1 or 2. Selection agents despise the guard
//! (`-b`) and value each other at `f(2) b / (f(1) (k-1))`; the guard is
//! indifferent to everyone. The guard retreats to the pendant at distance 2
//! from the selection, and the selection agents break even exactly when
//! they sit pairwise adjacent — on a clique of the source graph.

use crate::dff::DistanceFactorFunction;
use crate::instance::Assignment;
use crate::instance::Instance;
use crate::rational::Rational;

use super::independent_set::{build_selection_gadget, check_selection, selection_metadata};
use super::{
    finish, CertificateError, Gadget, GeneratedInstance, GeneratorError, GraphProblem,
};

/// Vertex layout: source graph ids, apex `|V(H)|`, pendant `|V(H)| + 1`.
/// Agents: selections a1..ak = `0..k`, guard g = `k`.
pub fn gen_clique(
    src: &GraphProblem,
    beta: &Rational,
    dff: &DistanceFactorFunction,
) -> Result<GeneratedInstance, GeneratorError> {
    let (instance, params) = build_selection_gadget(src, beta, dff, false)?;
    let metadata = selection_metadata(src, beta);
    finish(instance, Gadget::Clique, metadata, params)
}

/// Selections onto the clique vertices in ascending order, guard on the
/// pendant.
pub(crate) fn certificate_assignment(
    instance: &Instance,
    k: usize,
    graph_vertices: usize,
    set: &[usize],
) -> Result<Assignment, CertificateError> {
    let sorted = check_selection(instance, k, graph_vertices, set, false)?;
    let pendant = graph_vertices + 1;
    let mut placement = sorted;
    placement.push(pendant);
    Ok(Assignment::new(placement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::is_individually_rational;
    use crate::rational::rat;
    use crate::reductions::{certificate_to_assignment, SourceCertificate};
    use crate::topology::Topology;

    fn k3_gadget() -> GeneratedInstance {
        let src = GraphProblem { graph: Topology::complete(3), k: 3 };
        gen_clique(&src, &rat("1"), &DistanceFactorFunction::Reciprocal).unwrap()
    }

    #[test]
    fn structure_and_utilities() {
        let gen = k3_gadget();
        assert_eq!(gen.instance.topology().vertex_count(), 5);
        assert_eq!(gen.instance.agent_count(), 4);
        // f(2) beta / (f(1) (k-1)) = (1/2) / 2 = 1/4.
        assert_eq!(gen.instance.utility(0, 1), &rat("1/4"));
        assert_eq!(gen.instance.utility(0, 3), &rat("-1"));
        assert_eq!(gen.instance.utility(3, 0), &rat("0"));
        // Pendant hangs off the apex: distance 2 to the source vertices.
        let d = gen.instance.topology().shortest_distances();
        assert_eq!(d.get(4, 0), crate::topology::Distance::Finite(2));
        assert_eq!(d.get(4, 3), crate::topology::Distance::Finite(1));
    }

    #[test]
    fn triangle_certificate_zeroes_selections() {
        let gen = k3_gadget();
        let assignment =
            certificate_to_assignment(&gen, &SourceCertificate::VertexSet(vec![0, 1, 2])).unwrap();
        assert_eq!(assignment.placement(), &[0, 1, 2, 4]);
        let report = is_individually_rational(&gen.instance, &assignment).unwrap();
        assert!(report.individually_rational);
        for agent in 0..3 {
            assert_eq!(report.utilities[agent], rat("0"));
        }
        assert_eq!(report.utilities[3], rat("0"));
    }

    #[test]
    fn non_clique_set_is_rejected() {
        let src = GraphProblem { graph: Topology::path(3), k: 3 };
        let gen = gen_clique(&src, &rat("1"), &DistanceFactorFunction::Reciprocal).unwrap();
        let bad = certificate_to_assignment(&gen, &SourceCertificate::VertexSet(vec![0, 1, 2]));
        assert!(matches!(bad, Err(CertificateError::Invalid(_))));
    }
}
