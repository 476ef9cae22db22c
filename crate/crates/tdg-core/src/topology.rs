//! Topologies: simple undirected graphs with dense vertex ids and
//! all-pairs unweighted shortest distances.

use std::collections::{BTreeSet, VecDeque};

/// Distance between two vertices: a hop count, or unreachable.
///
/// The derived order places `Finite(a) < Finite(b)` for `a < b` and every
/// finite distance before `Unreachable`, which is exactly the "unreachable is
/// farthest" order the solvers need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
}

/// A simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Topology {
    /// Builds a topology, normalizing each edge to `(min, max)`. Self-loops,
    /// duplicates, and out-of-range endpoints are rejected.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TopologyError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(TopologyError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(TopologyError::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(TopologyError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Topology { vertex_count, edges: set })
    }

    /// A path `0 - 1 - ... - (n-1)`.
    pub fn path(vertex_count: usize) -> Self {
        Topology::new(vertex_count, (1..vertex_count).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// A complete graph on `vertex_count` vertices.
    pub fn complete(vertex_count: usize) -> Self {
        let edges = (0..vertex_count).flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)));
        Topology::new(vertex_count, edges).expect("clique edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Adjacency lists with neighbors in increasing id order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Same vertex set plus `extra` fresh isolated vertices.
    pub fn with_isolated_vertices(&self, extra: usize) -> Self {
        Topology { vertex_count: self.vertex_count + extra, edges: self.edges.clone() }
    }

    /// Relabels every vertex `v` to `permutation[v]`.
    pub fn relabel(&self, permutation: &[usize]) -> Result<Self, TopologyError> {
        Topology::new(
            self.vertex_count,
            self.edges.iter().map(|&(u, v)| (permutation[u], permutation[v])),
        )
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            let mut comp = vec![start];
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Vertices of a path topology walked from the lower-id endpoint, or
    /// `None` if the topology is not a path. Trivial cases: a single vertex
    /// is a path; so is a single edge.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        if n == 0 {
            return None;
        }
        if n == 1 {
            return if self.edges.is_empty() { Some(vec![0]) } else { None };
        }
        if self.edges.len() != n - 1 {
            return None;
        }
        let adj = self.adjacency();
        let mut endpoints = Vec::new();
        for (v, neighbors) in adj.iter().enumerate() {
            match neighbors.len() {
                1 => endpoints.push(v),
                2 => {}
                _ => return None,
            }
        }
        if endpoints.len() != 2 {
            return None;
        }
        let start = endpoints[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut current = adj[start][0];
        while order.len() < n {
            order.push(current);
            let next = adj[current].iter().copied().find(|&w| w != prev);
            match next {
                Some(w) => {
                    prev = current;
                    current = w;
                }
                None => break,
            }
        }
        // Edge count n-1 with max degree 2 can still be a path plus a cycle;
        // the walk then misses vertices.
        if order.len() == n {
            Some(order)
        } else {
            None
        }
    }

    pub fn is_path(&self) -> bool {
        self.path_order().is_some()
    }

    /// All-pairs unweighted shortest distances via one BFS per vertex.
    pub fn shortest_distances(&self) -> DistanceMatrix {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let mut data = vec![Distance::Unreachable; n * n];
        for source in 0..n {
            data[source * n + source] = Distance::Finite(0);
            let mut queue = VecDeque::from([source]);
            let mut dist = vec![usize::MAX; n];
            dist[source] = 0;
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        data[source * n + v] = Distance::Finite(dist[v]);
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceMatrix { vertex_count: n, data }
    }
}

/// Computes the all-pairs distance matrix of a topology.
pub fn shortest_distances(topology: &Topology) -> DistanceMatrix {
    topology.shortest_distances()
}

/// Square table of pairwise distances; unreachable pairs are recorded
/// distinctly from every finite value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    vertex_count: usize,
    data: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.data[u * self.vertex_count + v]
    }

    /// Largest finite distance in the whole matrix (0 when all vertices are
    /// isolated or the matrix is empty).
    pub fn max_finite(&self) -> usize {
        self.data
            .iter()
            .filter_map(|d| match d {
                Distance::Finite(k) => Some(*k),
                Distance::Unreachable => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Diameter of the component containing each listed vertex set.
    pub fn diameter_of(&self, component: &[usize]) -> usize {
        let mut best = 0;
        for (i, &u) in component.iter().enumerate() {
            for &v in &component[i + 1..] {
                if let Distance::Finite(d) = self.get(u, v) {
                    best = best.max(d);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn three_path_distances() {
        let t = Topology::path(3);
        let d = t.shortest_distances();
        assert_eq!(d.get(0, 2), Distance::Finite(2));
        assert_eq!(d.get(0, 1), Distance::Finite(1));
        assert_eq!(d.get(1, 1), Distance::Finite(0));
    }

    #[test]
    fn disconnected_pair_is_unreachable() {
        let t = Topology::new(2, []).unwrap();
        let d = t.shortest_distances();
        assert_eq!(d.get(0, 1), Distance::Unreachable);
    }

    #[test]
    fn clique_distances_are_one() {
        let t = Topology::complete(5);
        let d = t.shortest_distances();
        for u in 0..5 {
            for v in 0..5 {
                let expected = if u == v { Distance::Finite(0) } else { Distance::Finite(1) };
                assert_eq!(d.get(u, v), expected);
            }
        }
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Topology::new(3, [(1, 1)]).unwrap_err(), TopologyError::SelfLoop(1));
        assert_eq!(
            Topology::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            TopologyError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            Topology::new(2, [(0, 5)]).unwrap_err(),
            TopologyError::VertexOutOfRange { vertex: 5, .. }
        ));
    }

    #[test]
    fn path_detection() {
        assert!(Topology::path(1).is_path());
        assert!(Topology::path(2).is_path());
        assert!(Topology::path(6).is_path());
        assert!(!Topology::new(2, []).unwrap().is_path());
        assert!(!Topology::complete(3).is_path());
        // Path relabeled: 2-0-3-1 is a path on vertex ids out of order.
        let t = Topology::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(t.path_order(), Some(vec![1, 3, 0, 2]));
        // Disjoint edge + triangle has n-1 edges but is not a path.
        let t = Topology::new(5, [(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!t.is_path());
    }

    #[test]
    fn unreachable_sorts_last() {
        let mut v = vec![Distance::Unreachable, Distance::Finite(3), Distance::Finite(0)];
        v.sort();
        assert_eq!(v, vec![Distance::Finite(0), Distance::Finite(3), Distance::Unreachable]);
    }

    fn arbitrary_topology() -> impl Strategy<Value = Topology> {
        (1usize..8).prop_flat_map(|n| {
            let all_edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            proptest::collection::vec(proptest::bool::ANY, all_edges.len()).prop_map(move |mask| {
                let edges = all_edges
                    .iter()
                    .zip(&mask)
                    .filter(|(_, keep)| **keep)
                    .map(|(e, _)| *e);
                Topology::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        // The DistanceMatrix type invariants, checked wholesale.
        #[test]
        fn distance_matrix_properties(t in arbitrary_topology()) {
            let n = t.vertex_count();
            let d = t.shortest_distances();
            for u in 0..n {
                prop_assert_eq!(d.get(u, u), Distance::Finite(0));
                for v in 0..n {
                    prop_assert_eq!(d.get(u, v), d.get(v, u));
                    prop_assert_eq!(d.get(u, v) == Distance::Finite(1), t.has_edge(u, v));
                    for w in 0..n {
                        if let (Distance::Finite(a), Distance::Finite(b), Distance::Finite(c)) =
                            (d.get(u, w), d.get(u, v), d.get(v, w))
                        {
                            prop_assert!(a <= b + c);
                        }
                    }
                }
            }
        }
    }
}
