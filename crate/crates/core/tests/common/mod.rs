//! Brute-force oracles shared by the integration tests. They enumerate
//! labelings directly and share no code with the search in `sumdist::exact`.
#![allow(dead_code)]

use std::collections::HashSet;

use sumdist::{Graph, Hypergraph};

/// Calls `f` on every vector in `[1, k]^len` in lexicographic order until it
/// returns true.
pub fn any_labeling(len: usize, k: u64, mut f: impl FnMut(&[u64]) -> bool) -> bool {
    let mut x = vec![1u64; len];
    loop {
        if f(&x) {
            return true;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if x[i] < k {
                x[i] += 1;
                x[i + 1..].iter_mut().for_each(|v| *v = 1);
                break;
            }
        }
    }
}

fn all_distinct(values: impl IntoIterator<Item = u64>) -> bool {
    let mut seen = HashSet::new();
    values.into_iter().all(|v| seen.insert(v))
}

pub fn brute_s(h: &Hypergraph) -> u64 {
    (1..)
        .find(|&k| {
            any_labeling(h.vertex_count(), k, |f| {
                all_distinct(h.edges().iter().map(|e| e.iter().map(|&v| f[v]).sum()))
            })
        })
        .unwrap()
}

fn closed(g: &Graph, v: usize) -> Vec<usize> {
    let mut n: Vec<usize> = g.neighbors(v).to_vec();
    n.push(v);
    n.sort_unstable();
    n
}

pub fn brute_s_star(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let hoods: Vec<Vec<usize>> = (0..n).map(|v| closed(g, v)).collect();
    (1..)
        .find(|&k| {
            any_labeling(n, k, |f| {
                let sums: Vec<u64> = hoods.iter().map(|h| h.iter().map(|&w| f[w]).sum()).collect();
                (0..n).all(|u| (u + 1..n).all(|v| hoods[u] == hoods[v] || sums[u] != sums[v]))
            })
        })
        .unwrap()
}

/// Smallest `k` such that edge labels in `[1, k]` give every vertex a
/// different incident sum.
pub fn brute_irr(h: &Hypergraph) -> u64 {
    let n = h.vertex_count();
    (1..)
        .find(|&k| {
            any_labeling(h.edge_count(), k, |w| {
                let mut sums = vec![0u64; n];
                for (i, e) in h.edges().iter().enumerate() {
                    for &v in e {
                        sums[v] += w[i];
                    }
                }
                all_distinct(sums)
            })
        })
        .unwrap()
}

/// Every simple graph on `n` vertices, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn twin_vertices(h: &Hypergraph) -> bool {
    let inc: Vec<Vec<usize>> = (0..h.vertex_count())
        .map(|v| (0..h.edge_count()).filter(|&i| h.edge(i).contains(&v)).collect())
        .collect();
    (0..inc.len()).any(|u| (u + 1..inc.len()).any(|v| inc[u] == inc[v]))
}
