//! Hardness-gadget generators and their correctness harness.
//!
//! Each generator reproduces one of the reduction constructions exactly:
//! an instance of a classic NP-hard source problem becomes a game whose
//! individual-rationality answer matches the source answer. The exact
//! decider [`decide_source`] and the certificate assignments built by
//! [`certificate_to_assignment`] make the generators testable end to end:
//! a yes-certificate of the source maps to an assignment in which the
//! gadget's critical agents sit at utility exactly zero.

mod clique;
mod equitable;
mod independent_set;
mod oracle;
mod three_partition;
mod unary_bin_packing;

pub use clique::gen_clique;
pub use equitable::{gen_equitable_partition, EquitableVariant};
pub use independent_set::gen_independent_set;
pub use oracle::{decide_source, SourceDecision};
pub use three_partition::gen_3partition;
pub use unary_bin_packing::gen_unary_bin_packing;

use std::collections::BTreeMap;
use std::fmt;

use crate::instance::{Assignment, Instance};
use crate::topology::Topology;
use crate::validate::render;

/// Unary Bin Packing: pack the items into `bins` bins of exactly `capacity`
/// each. Stays NP-complete when every item exceeds 1 and the items sum to
/// `bins * capacity`, which the gadget requires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryBinPacking {
    pub items: Vec<u64>,
    pub bins: usize,
    pub capacity: u64,
}

/// Equitable Partition: split `2n` positive integers into two halves of `n`
/// items with equal sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitablePartition {
    pub items: Vec<u64>,
}

/// 3-Partition: split `3n` integers, each strictly between `target/4` and
/// `target/2`, into `n` triplets summing to `target` each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartition {
    pub items: Vec<u64>,
    pub target: u64,
}

/// A graph together with a solution size, for Independent Set and Clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProblem {
    pub graph: Topology,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceProblem {
    UnaryBinPacking(UnaryBinPacking),
    EquitablePartition(EquitablePartition),
    ThreePartition(ThreePartition),
    IndependentSet(GraphProblem),
    Clique(GraphProblem),
}

impl UnaryBinPacking {
    pub fn validate(&self) -> Result<(), String> {
        if self.items.is_empty() {
            return Err("item list is empty".to_string());
        }
        if let Some(bad) = self.items.iter().find(|&&s| s <= 1) {
            return Err(format!("every item must exceed 1, got {bad}"));
        }
        if self.bins == 0 || self.capacity == 0 {
            return Err("bins and capacity must be positive".to_string());
        }
        // An item above the capacity can never be packed, and the gadget's
        // same-item utility (c - s_i)/(s_i - 1) turns negative, which breaks
        // the forced co-location argument; rule such items out up front.
        if let Some(bad) = self.items.iter().find(|&&s| s > self.capacity) {
            return Err(format!(
                "item {bad} exceeds the bin capacity {}",
                self.capacity
            ));
        }
        let total: u128 = self.items.iter().map(|&s| u128::from(s)).sum();
        let required = u128::from(self.bins as u64) * u128::from(self.capacity);
        if total != required {
            return Err(format!(
                "items must sum to bins * capacity = {required}, got {total}"
            ));
        }
        Ok(())
    }
}

impl EquitablePartition {
    pub fn n(&self) -> usize {
        self.items.len() / 2
    }

    /// Half of the total sum, the per-side target.
    pub fn half_sum(&self) -> u128 {
        self.items.iter().map(|&s| u128::from(s)).sum::<u128>() / 2
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.items.is_empty() || self.items.len() % 2 != 0 {
            return Err(format!(
                "expected a non-empty list of 2n items, got {} items",
                self.items.len()
            ));
        }
        if self.items.contains(&0) {
            return Err("items must be positive".to_string());
        }
        let total: u128 = self.items.iter().map(|&s| u128::from(s)).sum();
        if total % 2 != 0 {
            return Err(format!("items must have an even sum, got {total}"));
        }
        Ok(())
    }

    /// The stronger assumptions the bipartite and path gadgets rely on:
    /// `min S >= n^2` and pairwise differences at most `min S / n^2`.
    pub fn strict_preconditions(&self) -> Result<(), String> {
        let n = self.n() as u128;
        let min = u128::from(*self.items.iter().min().expect("non-empty"));
        let max = u128::from(*self.items.iter().max().expect("non-empty"));
        if min < n * n {
            return Err(format!("min item {min} is below n^2 = {}", n * n));
        }
        if (max - min) * n * n > min {
            return Err(format!(
                "pairwise item difference {} exceeds min/n^2 = {min}/{}",
                max - min,
                n * n
            ));
        }
        Ok(())
    }
}

impl ThreePartition {
    pub fn n(&self) -> usize {
        self.items.len() / 3
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.items.is_empty() || self.items.len() % 3 != 0 {
            return Err(format!(
                "expected a non-empty list of 3n items, got {} items",
                self.items.len()
            ));
        }
        let n = self.items.len() as u128 / 3;
        let total: u128 = self.items.iter().map(|&s| u128::from(s)).sum();
        if total != n * u128::from(self.target) {
            return Err(format!(
                "items must sum to n * target = {}, got {total}",
                n * u128::from(self.target)
            ));
        }
        for &s in &self.items {
            // target/4 < s < target/2, checked in integers.
            if 4 * u128::from(s) <= u128::from(self.target)
                || 2 * u128::from(s) >= u128::from(self.target)
            {
                return Err(format!(
                    "item {s} is not strictly between target/4 and target/2 for target {}",
                    self.target
                ));
            }
        }
        Ok(())
    }
}

impl SourceProblem {
    pub fn validate(&self) -> Result<(), String> {
        match self {
            SourceProblem::UnaryBinPacking(src) => src.validate(),
            SourceProblem::EquitablePartition(src) => src.validate(),
            SourceProblem::ThreePartition(src) => src.validate(),
            SourceProblem::IndependentSet(src) | SourceProblem::Clique(src) => {
                if src.k == 0 {
                    Err("k must be positive".to_string())
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// A yes-certificate for a source problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceCertificate {
    /// `allocation[i]` is the bin receiving item `i`.
    BinAllocation(Vec<usize>),
    /// The index set `I` of one side of an equitable partition.
    PartitionIndices(Vec<usize>),
    /// A partition of the item indices into triplets.
    Triplets(Vec<[usize; 3]>),
    /// The selected vertices of an independent set or clique.
    VertexSet(Vec<usize>),
}

/// Which reduction built a [`GeneratedInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gadget {
    UnaryBinPacking,
    EquitableBipartite,
    EquitableInstar,
    EquitablePath,
    ThreePartition,
    IndependentSet,
    Clique,
}

impl Gadget {
    pub fn tag(self) -> &'static str {
        match self {
            Gadget::UnaryBinPacking => "unary-bin-packing",
            Gadget::EquitableBipartite => "equitable-bipartite",
            Gadget::EquitableInstar => "equitable-instar",
            Gadget::EquitablePath => "equitable-path",
            Gadget::ThreePartition => "3-partition",
            Gadget::IndependentSet => "independent-set",
            Gadget::Clique => "clique",
        }
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Structured generator parameters, kept so certificate assignments can be
/// rebuilt without re-deriving the construction from the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum GadgetParams {
    UnaryBinPacking { items: Vec<u64>, bins: usize, capacity: u64 },
    Equitable { items: Vec<u64>, variant: EquitableVariant },
    ThreePartition { items: Vec<u64>, target: u64 },
    Selection { k: usize, graph_vertices: usize },
}

/// A gadget instance plus provenance: which reduction built it and from
/// what parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: Instance,
    pub gadget: Gadget,
    pub metadata: BTreeMap<String, String>,
    pub(crate) params: GadgetParams,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("generator precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("invalid certificate: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("invalid source problem: {0}")]
    InvalidSource(String),
}

/// Internal check run by every generator before returning: the constructed
/// instance must pass full validation.
pub(crate) fn finish(
    instance: Instance,
    gadget: Gadget,
    metadata: BTreeMap<String, String>,
    params: GadgetParams,
) -> Result<GeneratedInstance, GeneratorError> {
    let violations = instance.validate();
    if !violations.is_empty() {
        return Err(GeneratorError::Precondition(format!(
            "constructed instance is invalid (unsuitable distance factor function or \
             parameters):\n{}",
            render(&violations)
        )));
    }
    Ok(GeneratedInstance { instance, gadget, metadata, params })
}

/// Maps a source-problem certificate to the assignment the corresponding
/// correctness argument constructs. When the certificate is valid for the
/// source instance, the result passes the witness verifier.
pub fn certificate_to_assignment(
    gen: &GeneratedInstance,
    certificate: &SourceCertificate,
) -> Result<Assignment, CertificateError> {
    match (&gen.params, certificate) {
        (GadgetParams::UnaryBinPacking { items, bins, capacity }, SourceCertificate::BinAllocation(alloc)) => {
            unary_bin_packing::certificate_assignment(items, *bins, *capacity, alloc)
        }
        (GadgetParams::Equitable { items, variant }, SourceCertificate::PartitionIndices(side)) => {
            equitable::certificate_assignment(items, *variant, side)
        }
        (GadgetParams::ThreePartition { items, target }, SourceCertificate::Triplets(triplets)) => {
            three_partition::certificate_assignment(items, *target, triplets)
        }
        (GadgetParams::Selection { k, graph_vertices }, SourceCertificate::VertexSet(set)) => {
            match gen.gadget {
                Gadget::IndependentSet => {
                    independent_set::certificate_assignment(&gen.instance, *k, *graph_vertices, set)
                }
                Gadget::Clique => {
                    clique::certificate_assignment(&gen.instance, *k, *graph_vertices, set)
                }
                other => Err(CertificateError::Invalid(format!(
                    "selection certificate does not fit gadget {other}"
                ))),
            }
        }
        _ => Err(CertificateError::Invalid(format!(
            "certificate kind does not fit gadget {}",
            gen.gadget
        ))),
    }
}
