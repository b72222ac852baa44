use std::collections::HashMap;

use crate::error::{Error, Result};

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Each pair is stored as `(min, max)`
    /// in the given order; loops, out-of-range endpoints and repeated pairs
    /// are rejected.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut list = Vec::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        edge: i,
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Err(Error::DuplicateEdge { first, second: i });
            }
            seen.insert(key, i);
            list.push(key);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Self {
            vertex_count,
            edges: list,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Shape(format!("a cycle needs 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (0, i)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.vertex_count + other.vertex_count, edges)
            .expect("union of valid graphs is valid")
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count;
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Graph::new(n, edges).expect("complement of a valid graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// `N[v]`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut nb = self.adjacency[v].clone();
        let pos = nb.partition_point(|&x| x < v);
        nb.insert(pos, v);
        nb
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.vertex_count
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop { vertex: 0 }));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { first: 0, second: 1 })
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
        assert_eq!(Graph::empty(0), Err(Error::NoVertices));
    }

    #[test]
    fn neighborhoods() {
        let g = Graph::path(3).unwrap();
        assert_eq!(g.closed_neighborhood(0), vec![0, 1]);
        assert_eq!(g.closed_neighborhood(1), vec![0, 1, 2]);
        assert_eq!(g.closed_neighborhood(2), vec![1, 2]);
        assert_eq!((g.min_degree(), g.max_degree()), (1, 2));
        assert!(g.is_tree());
        assert!(!Graph::cycle(4).unwrap().is_tree());
        assert!(!Graph::empty(2).unwrap().is_tree());
    }

    #[test]
    fn complement_of_path() {
        let c = Graph::path(3).unwrap().complement();
        assert_eq!(c.edges(), &[(0, 2)]);
        assert_eq!(Graph::complete(4).unwrap().complement().edge_count(), 0);
    }
}
