//! Exact deciders for the source problems, by bounded exhaustive search.
//! These are the independent side of every reduction-equivalence check, so
//! they share no code with the game solvers.

use super::{
    EquitablePartition, GraphProblem, OracleError, SourceCertificate, SourceProblem,
    ThreePartition, UnaryBinPacking,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDecision {
    pub answer: bool,
    pub certificate: Option<SourceCertificate>,
}

impl SourceDecision {
    fn no() -> Self {
        SourceDecision { answer: false, certificate: None }
    }

    fn yes(certificate: SourceCertificate) -> Self {
        SourceDecision { answer: true, certificate: Some(certificate) }
    }
}

struct Budget {
    remaining: u64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { remaining: limit, limit }
    }

    fn spend(&mut self) -> Result<(), OracleError> {
        if self.remaining == 0 {
            Err(OracleError::BudgetExceeded { budget: self.limit })
        } else {
            self.remaining -= 1;
            Ok(())
        }
    }
}

/// Decides a source problem exactly, returning a certificate on yes.
/// `budget` bounds the number of elementary search steps; exceeding it is
/// an error rather than a wrong answer.
pub fn decide_source(src: &SourceProblem, budget: u64) -> Result<SourceDecision, OracleError> {
    src.validate().map_err(OracleError::InvalidSource)?;
    let mut budget = Budget::new(budget);
    match src {
        SourceProblem::UnaryBinPacking(p) => decide_bin_packing(p, &mut budget),
        SourceProblem::EquitablePartition(p) => decide_equitable(p, &mut budget),
        SourceProblem::ThreePartition(p) => decide_three_partition(p, &mut budget),
        SourceProblem::IndependentSet(p) => decide_selection(p, false, &mut budget),
        SourceProblem::Clique(p) => decide_selection(p, true, &mut budget),
    }
}

fn decide_bin_packing(
    src: &UnaryBinPacking,
    budget: &mut Budget,
) -> Result<SourceDecision, OracleError> {
    let mut remaining = vec![src.capacity; src.bins];
    let mut allocation = vec![usize::MAX; src.items.len()];
    if fill_bins(src, 0, &mut remaining, &mut allocation, budget)? {
        Ok(SourceDecision::yes(SourceCertificate::BinAllocation(allocation)))
    } else {
        Ok(SourceDecision::no())
    }
}

fn fill_bins(
    src: &UnaryBinPacking,
    item: usize,
    remaining: &mut [u64],
    allocation: &mut [usize],
    budget: &mut Budget,
) -> Result<bool, OracleError> {
    if item == src.items.len() {
        // Sums match by the problem invariant, so all bins are exactly full.
        return Ok(true);
    }
    let size = src.items[item];
    let mut tried = Vec::new();
    for bin in 0..src.bins {
        if remaining[bin] < size || tried.contains(&remaining[bin]) {
            continue;
        }
        tried.push(remaining[bin]);
        budget.spend()?;
        remaining[bin] -= size;
        allocation[item] = bin;
        if fill_bins(src, item + 1, remaining, allocation, budget)? {
            return Ok(true);
        }
        remaining[bin] += size;
        allocation[item] = usize::MAX;
    }
    Ok(false)
}

fn decide_equitable(
    src: &EquitablePartition,
    budget: &mut Budget,
) -> Result<SourceDecision, OracleError> {
    let n = src.n();
    let target = src.half_sum();
    for subset in Combinations::new(src.items.len(), n) {
        budget.spend()?;
        let sum: u128 = subset.iter().map(|&i| u128::from(src.items[i])).sum();
        if sum == target {
            return Ok(SourceDecision::yes(SourceCertificate::PartitionIndices(subset)));
        }
    }
    Ok(SourceDecision::no())
}

fn decide_three_partition(
    src: &ThreePartition,
    budget: &mut Budget,
) -> Result<SourceDecision, OracleError> {
    let mut used = vec![false; src.items.len()];
    let mut triplets = Vec::with_capacity(src.n());
    if match_triplets(src, &mut used, &mut triplets, budget)? {
        Ok(SourceDecision::yes(SourceCertificate::Triplets(triplets)))
    } else {
        Ok(SourceDecision::no())
    }
}

fn match_triplets(
    src: &ThreePartition,
    used: &mut [bool],
    triplets: &mut Vec<[usize; 3]>,
    budget: &mut Budget,
) -> Result<bool, OracleError> {
    let first = match used.iter().position(|&u| !u) {
        Some(i) => i,
        None => return Ok(true),
    };
    used[first] = true;
    for second in first + 1..src.items.len() {
        if used[second] {
            continue;
        }
        used[second] = true;
        for third in second + 1..src.items.len() {
            if used[third] {
                continue;
            }
            budget.spend()?;
            let sum = u128::from(src.items[first])
                + u128::from(src.items[second])
                + u128::from(src.items[third]);
            if sum == u128::from(src.target) {
                used[third] = true;
                triplets.push([first, second, third]);
                if match_triplets(src, used, triplets, budget)? {
                    return Ok(true);
                }
                triplets.pop();
                used[third] = false;
            }
        }
        used[second] = false;
    }
    used[first] = false;
    Ok(false)
}

fn decide_selection(
    src: &GraphProblem,
    want_clique: bool,
    budget: &mut Budget,
) -> Result<SourceDecision, OracleError> {
    let n = src.graph.vertex_count();
    if src.k > n {
        return Ok(SourceDecision::no());
    }
    for subset in Combinations::new(n, src.k) {
        budget.spend()?;
        let ok = subset.iter().enumerate().all(|(idx, &u)| {
            subset[idx + 1..].iter().all(|&v| src.graph.has_edge(u, v) == want_clique)
        });
        if ok {
            return Ok(SourceDecision::yes(SourceCertificate::VertexSet(subset)));
        }
    }
    Ok(SourceDecision::no())
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let next = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, k, next }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        // Advance: find the rightmost index that can move up.
        let mut indices = current.clone();
        let mut pos = self.k;
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            if indices[pos] + (self.k - pos) < self.n {
                indices[pos] += 1;
                for later in pos + 1..self.k {
                    indices[later] = indices[later - 1] + 1;
                }
                self.next = Some(indices);
                break;
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;

    #[test]
    fn combinations_enumerate_lexicographically() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![
            vec![0, 1], vec![0, 2], vec![0, 3],
            vec![1, 2], vec![1, 3], vec![2, 3],
        ]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn equitable_partition_symmetric_split() {
        let src = SourceProblem::EquitablePartition(EquitablePartition {
            items: vec![8, 8, 8, 8],
        });
        let decision = decide_source(&src, 1_000).unwrap();
        assert!(decision.answer);
        assert_eq!(
            decision.certificate,
            Some(SourceCertificate::PartitionIndices(vec![0, 1]))
        );
    }

    #[test]
    fn equitable_partition_no_instance() {
        let src = SourceProblem::EquitablePartition(EquitablePartition {
            items: vec![8, 8, 8, 10],
        });
        let decision = decide_source(&src, 1_000).unwrap();
        assert!(!decision.answer);
    }

    #[test]
    fn three_partition_example() {
        let src = SourceProblem::ThreePartition(ThreePartition {
            items: vec![5, 5, 6, 6, 7, 7],
            target: 18,
        });
        let decision = decide_source(&src, 10_000).unwrap();
        assert!(decision.answer);
        let SourceCertificate::Triplets(ts) = decision.certificate.unwrap() else {
            panic!("wrong certificate kind");
        };
        assert_eq!(ts.len(), 2);
        for t in &ts {
            assert_eq!(t.iter().map(|&i| 5 + (i as u64 / 2)).sum::<u64>(), 18);
        }
    }

    #[test]
    fn triangle_has_no_two_independent_set() {
        let src = SourceProblem::IndependentSet(GraphProblem {
            graph: Topology::complete(3),
            k: 2,
        });
        assert!(!decide_source(&src, 1_000).unwrap().answer);
    }

    #[test]
    fn triangle_is_a_clique() {
        let src = SourceProblem::Clique(GraphProblem { graph: Topology::complete(3), k: 3 });
        let decision = decide_source(&src, 1_000).unwrap();
        assert!(decision.answer);
        assert_eq!(decision.certificate, Some(SourceCertificate::VertexSet(vec![0, 1, 2])));
    }

    #[test]
    fn bin_packing_yes_and_no() {
        let yes = SourceProblem::UnaryBinPacking(UnaryBinPacking {
            items: vec![2, 2],
            bins: 2,
            capacity: 2,
        });
        let decision = decide_source(&yes, 1_000).unwrap();
        assert!(decision.answer);
        assert_eq!(decision.certificate, Some(SourceCertificate::BinAllocation(vec![0, 1])));

        let no = SourceProblem::UnaryBinPacking(UnaryBinPacking {
            items: vec![2, 3, 3],
            bins: 2,
            capacity: 4,
        });
        assert!(!decide_source(&no, 1_000).unwrap().answer);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let src = SourceProblem::EquitablePartition(EquitablePartition {
            items: vec![4, 4, 5, 5, 6, 6, 7, 7],
        });
        assert_eq!(
            decide_source(&src, 2).unwrap_err(),
            OracleError::BudgetExceeded { budget: 2 }
        );
    }

    #[test]
    fn invalid_sources_are_rejected() {
        let src = SourceProblem::ThreePartition(ThreePartition {
            items: vec![1, 1, 16],
            target: 18,
        });
        assert!(matches!(decide_source(&src, 100), Err(OracleError::InvalidSource(_))));
    }
}
