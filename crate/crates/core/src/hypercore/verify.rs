use std::collections::HashMap;

use super::{Graph, Hypergraph, Labeling};
use crate::error::{Error, Result};

fn checked_sum(f: &Labeling, vertices: &[usize]) -> Result<u64> {
    vertices.iter().try_fold(0u64, |acc, &v| {
        acc.checked_add(f.get(v))
            .ok_or_else(|| Error::Overflow("label sum exceeds u64".into()))
    })
}

/// `s(e)` for every edge, in edge order.
pub fn edge_sums(h: &Hypergraph, f: &Labeling) -> Result<Vec<u64>> {
    f.check_len(h.vertex_count())?;
    h.edges().iter().map(|e| checked_sum(f, e)).collect()
}

/// The first pair of edges (in edge order) with equal sums, if any.
pub fn first_collision(h: &Hypergraph, f: &Labeling) -> Result<Option<(usize, usize)>> {
    let sums = edge_sums(h, f)?;
    let mut first_with: HashMap<u64, usize> = HashMap::with_capacity(sums.len());
    for (i, s) in sums.into_iter().enumerate() {
        if let Some(&j) = first_with.get(&s) {
            return Ok(Some((j, i)));
        }
        first_with.insert(s, i);
    }
    Ok(None)
}

pub fn is_distinguishing(h: &Hypergraph, f: &Labeling) -> Result<bool> {
    Ok(first_collision(h, f)?.is_none())
}

/// `s*(v)`, the label sum over `N[v]`, for every vertex.
pub fn closed_sums(g: &Graph, f: &Labeling) -> Result<Vec<u64>> {
    f.check_len(g.vertex_count())?;
    (0..g.vertex_count())
        .map(|v| {
            let nb = checked_sum(f, g.neighbors(v))?;
            nb.checked_add(f.get(v))
                .ok_or_else(|| Error::Overflow("label sum exceeds u64".into()))
        })
        .collect()
}

/// Closed-neighborhood sums differ for every pair of vertices whose closed
/// neighborhoods differ.
pub fn is_vertex_sum_distinguishing(g: &Graph, f: &Labeling) -> Result<bool> {
    let sums = closed_sums(g, f)?;
    let mut by_sum: HashMap<u64, usize> = HashMap::with_capacity(sums.len());
    for (v, s) in sums.into_iter().enumerate() {
        match by_sum.get(&s) {
            // Equal sums are fine only between twins; twins share one
            // representative, so comparing with it suffices.
            Some(&u) if !same_closed_neighborhood(g, u, v) => return Ok(false),
            Some(_) => {}
            None => {
                by_sum.insert(s, v);
            }
        }
    }
    Ok(true)
}

pub(crate) fn same_closed_neighborhood(g: &Graph, u: usize, v: usize) -> bool {
    u == v || (g.has_edge(u, v) && g.closed_neighborhood(u) == g.closed_neighborhood(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(v: &[u64]) -> Labeling {
        Labeling::new(v.to_vec()).unwrap()
    }

    #[test]
    fn edge_sum_examples() {
        let h = Hypergraph::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(edge_sums(&h, &lab(&[1, 1])).unwrap(), vec![1, 2]);

        let full = Hypergraph::complete(3).unwrap();
        assert_eq!(
            edge_sums(&full, &lab(&[1, 2, 4])).unwrap(),
            vec![1, 2, 4, 3, 5, 6, 7]
        );

        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(edge_sums(&h, &lab(&[1, 1, 2])).unwrap(), vec![2, 3]);
    }

    #[test]
    fn dimension_mismatch() {
        let h = Hypergraph::new(2, vec![vec![0]]).unwrap();
        assert_eq!(
            edge_sums(&h, &lab(&[1, 1, 1])),
            Err(Error::Dimension { expected: 2, got: 3 })
        );
        let g = Graph::path(3).unwrap();
        assert!(is_vertex_sum_distinguishing(&g, &lab(&[1])).is_err());
    }

    #[test]
    fn distinguishing_examples() {
        let h = Hypergraph::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_distinguishing(&h, &lab(&[1, 2])).unwrap());
        assert!(!is_distinguishing(&h, &lab(&[1, 1])).unwrap());

        // Sums of the 7 subsets under (1,2,3): 1,2,3,3,4,5,6. {2} and {0,1} collide.
        let full = Hypergraph::complete(3).unwrap();
        assert!(!is_distinguishing(&full, &lab(&[1, 2, 3])).unwrap());
        assert_eq!(first_collision(&full, &lab(&[1, 2, 3])).unwrap(), Some((2, 3)));
    }

    #[test]
    fn vertex_sum_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert!(is_vertex_sum_distinguishing(&k2, &lab(&[1, 1])).unwrap());

        let p3 = Graph::path(3).unwrap();
        assert!(!is_vertex_sum_distinguishing(&p3, &lab(&[1, 1, 1])).unwrap());
        assert_eq!(closed_sums(&p3, &lab(&[1, 1, 2])).unwrap(), vec![2, 4, 3]);
        assert!(is_vertex_sum_distinguishing(&p3, &lab(&[1, 1, 2])).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let f = lab(&[u64::MAX, 1]);
        assert!(matches!(edge_sums(&h, &f), Err(Error::Overflow(_))));
    }
}
