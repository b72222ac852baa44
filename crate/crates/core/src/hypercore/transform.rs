use std::collections::HashMap;

use super::{Graph, Hypergraph, Labeling};
use crate::error::{Error, Result};

/// The dual hypergraph plus the vertices of the original that were skipped
/// because they lie in no edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual {
    pub hypergraph: Hypergraph,
    /// Original vertices (uncovered) that produced no dual edge.
    pub skipped: Vec<usize>,
    /// `source_vertex[i]` is the original vertex whose incidence set is dual edge `i`.
    pub source_vertex: Vec<usize>,
}

/// Vertices of `H*` are the edges of `H`; its edges are the incidence sets
/// `{e : e ∋ x}` of the vertices `x` of `H`, in vertex order.
///
/// Two vertices with the same incidence set (including two uncovered
/// vertices) make the dual degenerate. A single uncovered vertex is skipped
/// and reported in [`Dual::skipped`].
pub fn dual(h: &Hypergraph) -> Result<Dual> {
    let incidence = h.incidence();
    let mut owner: HashMap<&[usize], usize> = HashMap::new();
    for (x, inc) in incidence.iter().enumerate() {
        if let Some(&first) = owner.get(inc.as_slice()) {
            return Err(Error::DualDegenerate { first, second: x });
        }
        owner.insert(inc, x);
    }
    if h.edge_count() == 0 {
        return Err(Error::Shape("the dual of an edgeless hypergraph has no vertices".into()));
    }
    let mut skipped = Vec::new();
    let mut source_vertex = Vec::new();
    let mut edges = Vec::new();
    for (x, inc) in incidence.into_iter().enumerate() {
        if inc.is_empty() {
            skipped.push(x);
        } else {
            source_vertex.push(x);
            edges.push(inc);
        }
    }
    let hypergraph = Hypergraph::new(h.edge_count(), edges)?;
    Ok(Dual {
        hypergraph,
        skipped,
        source_vertex,
    })
}

/// A neighborhood hypergraph with the vertex groups that share each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodHypergraph {
    pub hypergraph: Hypergraph,
    /// `groups[i]` lists the vertices whose neighborhood is edge `i`.
    pub groups: Vec<Vec<usize>>,
}

impl NeighborhoodHypergraph {
    /// Groups of two or more vertices that were collapsed into one edge.
    pub fn collapsed(&self) -> impl Iterator<Item = &[usize]> {
        self.groups.iter().filter(|g| g.len() > 1).map(Vec::as_slice)
    }

    fn build(n: usize, sets: impl Iterator<Item = Vec<usize>>) -> Result<Self> {
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (v, set) in sets.enumerate() {
            match index.get(&set) {
                Some(&i) => groups[i].push(v),
                None => {
                    index.insert(set.clone(), edges.len());
                    edges.push(set);
                    groups.push(vec![v]);
                }
            }
        }
        Ok(Self {
            hypergraph: Hypergraph::new(n, edges)?,
            groups,
        })
    }
}

/// Edges are the distinct closed neighborhoods `N[v]`, ordered by first
/// occurrence. Twins collapse into one edge.
pub fn closed_neighborhoods(g: &Graph) -> NeighborhoodHypergraph {
    let n = g.vertex_count();
    NeighborhoodHypergraph::build(n, (0..n).map(|v| g.closed_neighborhood(v)))
        .expect("closed neighborhoods are nonempty and in range")
}

pub fn closed_neighborhood_hypergraph(g: &Graph) -> Hypergraph {
    closed_neighborhoods(g).hypergraph
}

/// Edges are the distinct open neighborhoods `N(v)`.
///
/// `N(v)` in `G` equals `V - N[v]` taken in the complement of `G`.
pub fn open_neighborhood_hypergraph(g: &Graph) -> Result<NeighborhoodHypergraph> {
    let n = g.vertex_count();
    if let Some(vertex) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::EmptyNeighborhood { vertex });
    }
    NeighborhoodHypergraph::build(n, (0..n).map(|v| g.neighbors(v).to_vec()))
}

/// The clique-plus-independent-set graph built from an `n`-vertex,
/// `n`-edge hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEmbedding {
    pub graph: Graph,
    /// `clique[i]` is the graph vertex standing for edge `i`.
    pub clique: Vec<usize>,
    /// `independent[j]` is the graph vertex standing for hypergraph vertex `j`.
    pub independent: Vec<usize>,
}

impl SplitEmbedding {
    /// Reads the labels of the independent side back onto the hypergraph's
    /// vertices.
    pub fn restrict(&self, f: &Labeling) -> Result<Labeling> {
        f.check_len(self.graph.vertex_count())?;
        Labeling::new(self.independent.iter().map(|&b| f.get(b)).collect())
    }
}

/// Vertices `a_0..a_{n-1}` (indices `0..n`) form a clique, `b_0..b_{n-1}`
/// (indices `n..2n`) an independent set, and `a_i b_j` is an edge iff
/// vertex `j` lies in edge `i`.
///
/// Any vertex-sum-distinguishing labeling of the result, restricted to the
/// `b` side, is distinguishing on `h`.
pub fn split_embed(h: &Hypergraph) -> Result<SplitEmbedding> {
    let n = h.vertex_count();
    if h.edge_count() != n {
        return Err(Error::Shape(format!(
            "split embedding needs |E| = |V|, got {} edges on {n} vertices",
            h.edge_count()
        )));
    }
    let clique_edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let cross = h
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |&b| (i, n + b)));
    let graph = Graph::new(2 * n, clique_edges.chain(cross))?;
    Ok(SplitEmbedding {
        graph,
        clique: (0..n).collect(),
        independent: (n..2 * n).collect(),
    })
}

/// `h` plus every singleton `{v}` not already an edge, appended in vertex
/// order. Distinguishing labelings of the result are injective.
pub fn injective_reduction(h: &Hypergraph) -> Hypergraph {
    let mut edges = h.edges().to_vec();
    for v in 0..h.vertex_count() {
        if !h.contains_edge(&[v]) {
            edges.push(vec![v]);
        }
    }
    Hypergraph::new(h.vertex_count(), edges).expect("adding missing singletons keeps edges distinct")
}

/// Labels `1, 2, 4, ..., 2^{n-1}`: every subset gets its own sum.
pub fn power_of_two_labeling(n: usize) -> Result<Labeling> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    // The sum of all labels, 2^n - 1, must stay within i64 for signed
    // differences elsewhere.
    if n > 63 {
        return Err(Error::Overflow(format!(
            "powers of two on {n} vertices exceed 64-bit sums"
        )));
    }
    Labeling::new((0..n).map(|i| 1u64 << i).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{is_distinguishing, is_vertex_sum_distinguishing};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn dual_examples() {
        let d = dual(&hg(3, &[&[0, 1], &[1, 2]])).unwrap();
        assert_eq!(d.hypergraph, hg(2, &[&[0], &[0, 1], &[1]]));
        assert!(d.skipped.is_empty());

        let d = dual(&hg(2, &[&[0, 1], &[1]])).unwrap();
        assert_eq!(d.hypergraph, hg(2, &[&[0], &[0, 1]]));

        assert_eq!(
            dual(&hg(2, &[&[0, 1]])),
            Err(Error::DualDegenerate { first: 0, second: 1 })
        );
    }

    #[test]
    fn dual_skips_a_single_uncovered_vertex() {
        let d = dual(&hg(3, &[&[0], &[0, 1]])).unwrap();
        assert_eq!(d.skipped, vec![2]);
        assert_eq!(d.source_vertex, vec![0, 1]);
        assert_eq!(d.hypergraph, hg(2, &[&[0, 1], &[1]]));
        assert!(matches!(
            dual(&hg(4, &[&[0], &[0, 1]])),
            Err(Error::DualDegenerate { first: 2, second: 3 })
        ));
    }

    #[test]
    fn closed_neighborhood_examples() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            closed_neighborhood_hypergraph(&p3),
            hg(3, &[&[0, 1], &[0, 1, 2], &[1, 2]])
        );
        let k2 = closed_neighborhoods(&Graph::complete(2).unwrap());
        assert_eq!(k2.hypergraph, hg(2, &[&[0, 1]]));
        assert_eq!(k2.collapsed().collect::<Vec<_>>(), vec![&[0usize, 1][..]]);
        assert_eq!(
            closed_neighborhood_hypergraph(&Graph::empty(3).unwrap()),
            hg(3, &[&[0], &[1], &[2]])
        );
    }

    #[test]
    fn open_neighborhood_examples() {
        let k2 = open_neighborhood_hypergraph(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(k2.hypergraph, hg(2, &[&[1], &[0]]));
        let p3 = open_neighborhood_hypergraph(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(p3.hypergraph, hg(3, &[&[1], &[0, 2]]));
        assert_eq!(p3.groups, vec![vec![0, 2], vec![1]]);
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            open_neighborhood_hypergraph(&g),
            Err(Error::EmptyNeighborhood { vertex: 2 })
        );
    }

    #[test]
    fn open_neighborhoods_are_complement_closed_complements() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (3, 4)]).unwrap();
        let comp = g.complement();
        for v in 0..5 {
            let closed_in_comp = comp.closed_neighborhood(v);
            let rest: Vec<usize> = (0..5).filter(|x| !closed_in_comp.contains(x)).collect();
            assert_eq!(rest, g.neighbors(v));
        }
    }

    #[test]
    fn split_embed_examples() {
        let emb = split_embed(&hg(2, &[&[0], &[0, 1]])).unwrap();
        assert_eq!(emb.graph.vertex_count(), 4);
        let mut edges = emb.graph.edges().to_vec();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3)]);

        let emb = split_embed(&hg(1, &[&[0]])).unwrap();
        assert_eq!(emb.graph, Graph::complete(2).unwrap());

        assert!(matches!(
            split_embed(&hg(2, &[&[0]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn split_embed_restriction_spot_check() {
        let h = hg(2, &[&[0], &[0, 1]]);
        let emb = split_embed(&h).unwrap();
        let mut found = 0;
        for code in 0..3u64.pow(4) {
            let values: Vec<u64> = (0..4).map(|i| code / 3u64.pow(i) % 3 + 1).collect();
            let f = Labeling::new(values).unwrap();
            if is_vertex_sum_distinguishing(&emb.graph, &f).unwrap() {
                found += 1;
                assert!(is_distinguishing(&h, &emb.restrict(&f).unwrap()).unwrap());
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn injective_reduction_examples() {
        assert_eq!(
            injective_reduction(&hg(3, &[&[0, 1]])),
            hg(3, &[&[0, 1], &[0], &[1], &[2]])
        );
        let all = hg(2, &[&[1], &[0], &[0, 1]]);
        assert_eq!(injective_reduction(&all), all);
        assert_eq!(injective_reduction(&hg(2, &[&[0]])), hg(2, &[&[0], &[1]]));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(power_of_two_labeling(3).unwrap().values(), &[1, 2, 4]);
        assert_eq!(power_of_two_labeling(1).unwrap().values(), &[1]);
        let full = Hypergraph::complete(3).unwrap();
        let f = power_of_two_labeling(3).unwrap();
        assert!(is_distinguishing(&full, &f).unwrap());
        assert_eq!(f.max_label(), 4);
        assert!(matches!(power_of_two_labeling(64), Err(Error::Overflow(_))));
    }
}
