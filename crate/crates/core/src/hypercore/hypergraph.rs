use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite hypergraph with nonempty, pairwise distinct hyperedges.
///
/// Every edge is stored sorted, so two hypergraphs compare equal exactly
/// when they have the same vertex count and the same edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates and builds a hypergraph. Edges keep their given order.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge { edge: i });
            }
            edge.sort_unstable();
            for w in edge.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::RepeatedVertex {
                        edge: i,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&v) = edge.last() {
                if v >= vertex_count {
                    let vertex = *edge.iter().find(|&&x| x >= vertex_count).unwrap_or(&v);
                    return Err(Error::VertexOutOfRange {
                        edge: i,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if let Some(&first) = seen.get(&edge) {
                return Err(Error::DuplicateEdge { first, second: i });
            }
            seen.insert(edge.clone(), i);
            normalized.push(edge);
        }
        Ok(Self {
            vertex_count,
            edges: normalized,
        })
    }

    /// All `2^n - 1` nonempty subsets of `n` vertices, ordered by size and
    /// then lexicographically.
    pub fn complete(n: usize) -> Result<Self> {
        if n >= 26 {
            return Err(Error::TooLarge(format!("complete hypergraph on {n} vertices")));
        }
        let mut edges: Vec<Vec<usize>> = (1..(1u32 << n))
            .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
            .collect();
        edges.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Self::new(n, edges)
    }

    /// All `r`-subsets of `n` vertices in lexicographic order.
    pub fn complete_uniform(n: usize, r: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for_each_combination(n, r, |c| edges.push(c.to_vec()));
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// For every vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Vertices that lie in no edge.
    pub fn uncovered_vertices(&self) -> Vec<usize> {
        let mut covered = vec![false; self.vertex_count];
        for edge in &self.edges {
            for &v in edge {
                covered[v] = true;
            }
        }
        (0..self.vertex_count).filter(|&v| !covered[v]).collect()
    }

    /// Appends one edge, failing on a duplicate or malformed edge.
    pub fn with_edge(&self, edge: Vec<usize>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Self::new(self.vertex_count, edges)
    }

    /// Adds `extra` isolated vertices after the existing ones.
    pub fn padded(&self, extra: usize) -> Self {
        Self {
            vertex_count: self.vertex_count + extra,
            edges: self.edges.clone(),
        }
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.contains(&sorted)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Calls `f` on every `r`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut comb: Vec<usize> = (0..r).collect();
    loop {
        f(&comb);
        let mut i = r;
        while i > 0 && comb[i - 1] == i - 1 + n - r {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        comb[i - 1] += 1;
        for j in i..r {
            comb[j] = comb[j - 1] + 1;
        }
    }
}
