//! The enmity graph: a directed arc `i -> j` whenever agent `i` assigns
//! negative utility to agent `j`, and its shape classification.

use crate::instance::Instance;

/// Shape of the enmity graph, checked in priority order `NoArcs`,
/// `SingleSource`, `SingleSink`, `General`. An instance with exactly one arc
/// is reported as `SingleSource` of its tail (the head is also a common
/// sink, but the polynomial algorithm applies).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnmityClass {
    NoArcs,
    /// Every arc leaves this agent (an out-star).
    SingleSource(usize),
    /// Every arc enters this agent (an in-star).
    SingleSink(usize),
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnmityStructure {
    arcs: Vec<(usize, usize)>,
    classification: EnmityClass,
}

impl EnmityStructure {
    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn classification(&self) -> EnmityClass {
        self.classification
    }
}

/// Extracts the enmity graph of an instance and classifies it.
pub fn enmity_structure(instance: &Instance) -> EnmityStructure {
    let mut arcs = Vec::new();
    for (i, row) in instance.utilities().iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            if value.is_negative() {
                arcs.push((i, j));
            }
        }
    }
    let classification = if arcs.is_empty() {
        EnmityClass::NoArcs
    } else if arcs.iter().all(|&(tail, _)| tail == arcs[0].0) {
        EnmityClass::SingleSource(arcs[0].0)
    } else if arcs.iter().all(|&(_, head)| head == arcs[0].1) {
        EnmityClass::SingleSink(arcs[0].1)
    } else {
        EnmityClass::General
    };
    EnmityStructure { arcs, classification }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dff::DistanceFactorFunction;
    use crate::rational::{rat, Rational};
    use crate::topology::Topology;

    fn instance_with(utilities: Vec<Vec<Rational>>) -> Instance {
        let n = utilities.len();
        let names = (0..n).map(|i| format!("a{}", i + 1)).collect();
        Instance::new(Topology::complete(n), names, utilities, DistanceFactorFunction::Reciprocal)
            .unwrap()
    }

    fn zeros(n: usize) -> Vec<Vec<Rational>> {
        vec![vec![Rational::zero(); n]; n]
    }

    #[test]
    fn no_arcs() {
        let mut u = zeros(3);
        u[0][1] = rat("2");
        let s = enmity_structure(&instance_with(u));
        assert_eq!(s.classification(), EnmityClass::NoArcs);
        assert_eq!(s.arc_count(), 0);
    }

    #[test]
    fn single_source() {
        let mut u = zeros(3);
        u[1][0] = rat("-1");
        u[1][2] = rat("-2");
        let s = enmity_structure(&instance_with(u));
        assert_eq!(s.classification(), EnmityClass::SingleSource(1));
        assert_eq!(s.arcs(), &[(1, 0), (1, 2)]);
    }

    #[test]
    fn single_sink() {
        let mut u = zeros(3);
        u[0][2] = rat("-1");
        u[1][2] = rat("-1/2");
        let s = enmity_structure(&instance_with(u));
        assert_eq!(s.classification(), EnmityClass::SingleSink(2));
    }

    #[test]
    fn one_arc_prefers_single_source() {
        let mut u = zeros(2);
        u[1][0] = rat("-1");
        let s = enmity_structure(&instance_with(u));
        assert_eq!(s.classification(), EnmityClass::SingleSource(1));
    }

    #[test]
    fn general_shape() {
        let mut u = zeros(3);
        u[0][1] = rat("-1");
        u[1][2] = rat("-1");
        let s = enmity_structure(&instance_with(u));
        assert_eq!(s.classification(), EnmityClass::General);
        assert_eq!(s.arc_count(), 2);
    }
}
