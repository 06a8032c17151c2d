use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// Labelled multigraph on dense vertex ids `0..n`.
///
/// Parallel edges are stored by repetition and loops as `(v, v)`. A loop
/// contributes 2 to the degree of its vertex. The edge list keeps its input
/// order, which is also the serialization order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<BTreeMap<usize, String>>,
    degrees: Vec<usize>,
    // (edge index, other endpoint); a loop appears once in its vertex's list
    incidence: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge {i} = ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
        }
        let mut degrees = vec![0; n];
        let mut incidence = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            degrees[u] += 1;
            degrees[v] += 1;
            incidence[u].push((i, v));
            if u != v {
                incidence[v].push((i, u));
            }
        }
        Ok(Multigraph { n, edges, labels: None, degrees, incidence })
    }

    pub fn empty() -> Self {
        Multigraph { n: 0, edges: Vec::new(), labels: None, degrees: Vec::new(), incidence: Vec::new() }
    }

    /// Attaches cosmetic labels. Ids outside `0..n` are rejected.
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some((&id, _)) = labels.iter().find(|(&id, _)| id >= self.n) {
            return Err(Error::Validation(format!("label for vertex {id} outside 0..{}", self.n)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&BTreeMap<usize, String>> {
        self.labels.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// Edges at `v` as `(edge index, other endpoint)`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    /// Distinct neighbours of `v`, excluding `v` itself, in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.incidence[v].iter().map(|&(_, w)| w).filter(|&w| w != v).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.incidence[u].iter().any(|&(_, w)| w == v)
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// True when there are no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(_, w) in &self.incidence[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices`, relabelled densely in ascending order of
    /// the original ids. Edge order follows the parent's edge order.
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut parent: Vec<usize> = vertices.to_vec();
        parent.sort_unstable();
        parent.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in parent.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        let graph = Multigraph::new(parent.len(), edges).expect("induced edges are in range");
        Subgraph { graph, parent }
    }

    /// Multiplicity-aware adjacency matrix: loops contribute 2 on the diagonal,
    /// so row sums equal degrees.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for &(u, v) in &self.edges {
            if u == v {
                a[u][u] += 2.0;
            } else {
                a[u][v] += 1.0;
                a[v][u] += 1.0;
            }
        }
        a
    }
}

/// A graph together with the parent id of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Multigraph,
    /// `parent[i]` is the id in the parent graph of local vertex `i`; ascending.
    pub parent: Vec<usize>,
}

impl Subgraph {
    pub fn is_empty(&self) -> bool {
        self.graph.vertex_count() == 0
    }

    /// Edge list expressed in parent ids.
    pub fn parent_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().iter().map(|&(u, v)| (self.parent[u], self.parent[v])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_degree_two_everywhere() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.degrees(), &[2, 2, 2]);
        assert!(g.is_simple());
    }

    #[test]
    fn loop_counts_twice() {
        let g = Multigraph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(g.degree(0), 2);
        assert!(!g.is_simple());
        assert!(g.neighbors(0).is_empty());
    }

    #[test]
    fn out_of_range_endpoint_rejected() {
        let err = Multigraph::new(2, vec![(0, 5)]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 1), (2, 2), (3, 0), (3, 3)]).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn components_sorted_by_smallest_vertex() {
        let g = Multigraph::new(5, vec![(3, 4), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3, 4]]);
    }

    #[test]
    fn induced_keeps_parent_order() {
        let g = Multigraph::new(4, vec![(2, 3), (0, 1), (1, 2), (3, 1)]).unwrap();
        let s = g.induced(&[3, 1, 2]);
        assert_eq!(s.parent, vec![1, 2, 3]);
        assert_eq!(s.parent_edges(), vec![(2, 3), (1, 2), (3, 1)]);
    }
}
