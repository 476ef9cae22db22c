//! 3-Partition gadget: `n` disjoint copies of `K_5`, `2n` guards who value
//! every other guard at `-target` and every element agent at its item size
//! (symmetrically). A clique can host at most two guards, so guards pair up
//! and each pair needs its clique's three element agents to sum to exactly
//! the target. Distances are 1 or unreachable, so any distance factor
//! function works.

use std::collections::BTreeMap;

use crate::dff::DistanceFactorFunction;
use crate::instance::{Assignment, Instance};
use crate::rational::Rational;
use crate::topology::Topology;

use super::unary_bin_packing::join;
use super::{
    finish, CertificateError, Gadget, GadgetParams, GeneratedInstance, GeneratorError,
    ThreePartition,
};

/// Vertex layout: component `i` is `5i..5i+5`. Agent order: guards
/// g1..g{2n} first (indices `0..2n`), then elements a1..a{3n}.
pub fn gen_3partition(
    src: &ThreePartition,
    dff: &DistanceFactorFunction,
) -> Result<GeneratedInstance, GeneratorError> {
    src.validate().map_err(GeneratorError::Precondition)?;
    let n = src.n();
    let mut edges = Vec::new();
    for comp in 0..n {
        let base = 5 * comp;
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((base + u, base + v));
            }
        }
    }
    let topology = Topology::new(5 * n, edges).expect("K5 union is a valid topology");

    let guard_count = 2 * n;
    let mut names: Vec<String> = (0..guard_count).map(|g| format!("g{}", g + 1)).collect();
    names.extend((0..3 * n).map(|j| format!("a{}", j + 1)));

    let agent_count = 5 * n;
    let minus_target = -Rational::from_integer(src.target);
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for g in 0..guard_count {
        for h in 0..guard_count {
            if g != h {
                utilities[g][h] = minus_target.clone();
            }
        }
        for (j, &s) in src.items.iter().enumerate() {
            let element = guard_count + j;
            utilities[g][element] = Rational::from_integer(s);
            utilities[element][g] = Rational::from_integer(s);
        }
    }

    let instance = Instance::new(topology, names, utilities, dff.clone())
        .expect("matrix is square by construction");
    let metadata = BTreeMap::from([
        ("items".to_string(), join(&src.items)),
        ("n".to_string(), n.to_string()),
        ("k".to_string(), src.target.to_string()),
    ]);
    finish(
        instance,
        Gadget::ThreePartition,
        metadata,
        GadgetParams::ThreePartition { items: src.items.clone(), target: src.target },
    )
}

/// The forward-direction assignment: component `i` hosts guards `g_{2i+1}`,
/// `g_{2i+2}` and the elements of the `i`-th triplet.
pub(crate) fn certificate_assignment(
    items: &[u64],
    target: u64,
    triplets: &[[usize; 3]],
) -> Result<Assignment, CertificateError> {
    let n = items.len() / 3;
    if triplets.len() != n {
        return Err(CertificateError::Invalid(format!(
            "{} triplets given, expected n = {n}",
            triplets.len()
        )));
    }
    let mut used = vec![false; items.len()];
    for t in triplets {
        let mut sum = 0u128;
        for &i in t {
            if i >= items.len() {
                return Err(CertificateError::Invalid(format!("item index {i} out of range")));
            }
            if used[i] {
                return Err(CertificateError::Invalid(format!("item index {i} repeated")));
            }
            used[i] = true;
            sum += u128::from(items[i]);
        }
        if sum != u128::from(target) {
            return Err(CertificateError::Invalid(format!(
                "triplet {t:?} sums to {sum}, expected {target}"
            )));
        }
    }

    let guard_count = 2 * n;
    let mut placement = vec![usize::MAX; 5 * n];
    for (comp, triplet) in triplets.iter().enumerate() {
        let base = 5 * comp;
        placement[2 * comp] = base;
        placement[2 * comp + 1] = base + 1;
        let mut elements = *triplet;
        elements.sort_unstable();
        for (slot, &j) in elements.iter().enumerate() {
            placement[guard_count + j] = base + 2 + slot;
        }
    }
    Ok(Assignment::new(placement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::is_individually_rational;
    use crate::rational::rat;

    fn example() -> ThreePartition {
        ThreePartition { items: vec![5, 5, 6, 6, 7, 7], target: 18 }
    }

    #[test]
    fn structure_matches_the_construction() {
        let gen = gen_3partition(&example(), &DistanceFactorFunction::Reciprocal).unwrap();
        assert_eq!(gen.instance.topology().vertex_count(), 10);
        assert_eq!(gen.instance.agent_count(), 10);
        assert_eq!(gen.instance.topology().components().len(), 2);
        assert_eq!(gen.instance.utility(0, 1), &rat("-18"));
        assert_eq!(gen.instance.utility(0, 4), &rat("5"));
        assert_eq!(gen.instance.utility(4, 0), &rat("5"));
        assert_eq!(gen.instance.utility(4, 5), &rat("0"));
    }

    #[test]
    fn certificate_zeroes_every_guard() {
        let gen = gen_3partition(&example(), &DistanceFactorFunction::Reciprocal).unwrap();
        let assignment =
            certificate_assignment(&[5, 5, 6, 6, 7, 7], 18, &[[0, 2, 4], [1, 3, 5]]).unwrap();
        let report = is_individually_rational(&gen.instance, &assignment).unwrap();
        assert!(report.individually_rational);
        for guard in 0..4 {
            assert_eq!(report.utilities[guard], rat("0"));
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        // 4*4 <= 18: not strictly between target/4 and target/2.
        let out_of_band = ThreePartition { items: vec![4, 6, 8, 5, 6, 7], target: 18 };
        assert!(matches!(
            gen_3partition(&out_of_band, &DistanceFactorFunction::Reciprocal),
            Err(GeneratorError::Precondition(_))
        ));
        let bad_triplet = certificate_assignment(&[5, 5, 6, 6, 7, 7], 18, &[[0, 1, 2], [3, 4, 5]]);
        assert!(matches!(bad_triplet, Err(CertificateError::Invalid(_))));
    }
}
