//! Deterministic labelings of graphs under closed-neighborhood sums: the
//! degree-based bracket for `s*(G)`, a repair procedure that removes bad
//! pairs one relabeling at a time, and a leaf-by-leaf labeler for trees.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::{closed_sums, is_vertex_sum_distinguishing, Graph, Labeling};

/// Degree statistics and the bracket they give on `s*(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBoundsReport {
    /// Number of distinct closed neighborhoods (`n'`).
    pub distinct_neighborhoods: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `max_v (n - d(v) - 1)(d(v) + 1) + 2`, the repair labeler's label range.
    pub xi: u64,
    /// `⌈(n' + δ) / (Δ + 1)⌉`.
    pub lower: u64,
    /// `(Δ + 1) n`.
    pub upper_loose: u64,
}

/// Twin classes: vertices with identical closed neighborhoods share an id.
pub(crate) fn neighborhood_classes(g: &Graph) -> Vec<usize> {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    (0..g.vertex_count())
        .map(|v| {
            let next = ids.len();
            *ids.entry(g.closed_neighborhood(v)).or_insert(next)
        })
        .collect()
}

pub fn s_star_bounds(g: &Graph) -> DegreeBoundsReport {
    let n = g.vertex_count() as u64;
    let classes = neighborhood_classes(g);
    let distinct = classes.iter().copied().max().map_or(0, |m| m + 1);
    let min_degree = g.min_degree();
    let max_degree = g.max_degree();
    let xi = (0..g.vertex_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            (n - d - 1) * (d + 1) + 2
        })
        .max()
        .unwrap_or(2);
    let lower = (distinct as u64 + min_degree as u64).div_ceil(max_degree as u64 + 1);
    DegreeBoundsReport {
        distinct_neighborhoods: distinct,
        min_degree,
        max_degree,
        xi,
        lower,
        upper_loose: (max_degree as u64 + 1) * n,
    }
}

/// One relabeling performed by [`repair_labeler`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairStep {
    /// The lexicographically smallest bad pair before the step.
    pub bad_pair: (usize, usize),
    pub relabeled: usize,
    pub old_label: u64,
    pub new_label: u64,
    pub bad_before: usize,
    pub bad_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairOutcome {
    pub labeling: Labeling,
    pub xi: u64,
    pub steps: Vec<RepairStep>,
}

/// Pairs `u < v` with different closed neighborhoods and equal sums, in
/// lexicographic order.
fn bad_pairs(sums: &[u64], classes: &[usize]) -> Vec<(usize, usize)> {
    let mut by_sum: HashMap<u64, Vec<usize>> = HashMap::new();
    for (v, &s) in sums.iter().enumerate() {
        by_sum.entry(s).or_default().push(v);
    }
    let mut bad = Vec::new();
    for group in by_sum.values().filter(|g| g.len() > 1) {
        for (i, &u) in group.iter().enumerate() {
            for &v in &group[i + 1..] {
                if classes[u] != classes[v] {
                    bad.push((u, v));
                }
            }
        }
    }
    bad.sort_unstable();
    bad
}

/// Starts from all ones and, while a bad pair exists, relabels one vertex
/// with the smallest value in `[ξ]` that fixes the pair without creating a
/// new one. Every step strictly shrinks the set of bad pairs.
pub fn repair_labeler(g: &Graph) -> Result<RepairOutcome> {
    let n = g.vertex_count();
    let xi = s_star_bounds(g).xi;
    let classes = neighborhood_classes(g);
    let mut labels = vec![1u64; n];
    let mut steps = Vec::new();
    let mut sums = closed_sums(g, &Labeling::all_ones(n))?;
    let mut bad = bad_pairs(&sums, &classes);
    let mut forbidden = vec![false; xi as usize + 1];

    while let Some(&(u, v)) = bad.first() {
        let x = if !g.has_edge(u, v) {
            u
        } else {
            let nu: BTreeSet<usize> = g.closed_neighborhood(u).into_iter().collect();
            let nv: BTreeSet<usize> = g.closed_neighborhood(v).into_iter().collect();
            *nu.symmetric_difference(&nv)
                .min()
                .ok_or_else(|| Error::Invariant(format!("bad pair ({u}, {v}) are twins")))?
        };
        let old = labels[x];
        let inside = g.closed_neighborhood(x);
        let mut is_inside = vec![false; n];
        for &y in &inside {
            is_inside[y] = true;
        }
        forbidden.iter_mut().for_each(|b| *b = false);
        forbidden[old as usize] = true;
        for &y in &inside {
            for y2 in (0..n).filter(|&w| !is_inside[w]) {
                let t = sums[y2] as i128 - sums[y] as i128 + old as i128;
                if (1..=xi as i128).contains(&t) {
                    forbidden[t as usize] = true;
                }
            }
        }
        let new = (1..=xi)
            .find(|&t| !forbidden[t as usize])
            .ok_or_else(|| Error::Invariant(format!("every label in [1, {xi}] is forbidden")))?;

        labels[x] = new;
        for &y in &inside {
            sums[y] = sums[y] - old + new;
        }
        let next = bad_pairs(&sums, &classes);
        let only_old = next.iter().all(|p| bad.binary_search(p).is_ok());
        if !only_old || next.len() >= bad.len() || next.binary_search(&(u, v)).is_ok() {
            return Err(Error::Invariant(format!(
                "relabeling vertex {x} did not strictly shrink the bad pairs"
            )));
        }
        steps.push(RepairStep {
            bad_pair: (u, v),
            relabeled: x,
            old_label: old,
            new_label: new,
            bad_before: bad.len(),
            bad_after: next.len(),
        });
        bad = next;
    }

    let labeling = Labeling::new(labels)?;
    if !is_vertex_sum_distinguishing(g, &labeling)? {
        return Err(Error::Invariant("repair ended with a bad pair".into()));
    }
    Ok(RepairOutcome {
        labeling,
        xi,
        steps,
    })
}

/// The largest number of leaves hanging off one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeafStat {
    pub max_leaves: usize,
    /// Smallest vertex attaining `max_leaves`.
    pub vertex: usize,
}

fn check_tree(t: &Graph) -> Result<()> {
    if t.vertex_count() < 2 {
        return Err(Error::NotATree(format!(
            "need at least 2 vertices, got {}",
            t.vertex_count()
        )));
    }
    if !t.is_tree() {
        return Err(Error::NotATree(format!(
            "{} vertices, {} edges, connected: {}",
            t.vertex_count(),
            t.edge_count(),
            t.is_connected()
        )));
    }
    Ok(())
}

pub fn leaf_stat(t: &Graph) -> Result<LeafStat> {
    check_tree(t)?;
    let mut best = LeafStat {
        max_leaves: 0,
        vertex: 0,
    };
    for u in 0..t.vertex_count() {
        let leaves = t.neighbors(u).iter().filter(|&&w| t.degree(w) == 1).count();
        if leaves > best.max_leaves {
            best = LeafStat {
                max_leaves: leaves,
                vertex: u,
            };
        }
    }
    Ok(best)
}

// A tree being peeled: adjacency restricted to the alive vertices.
struct Peeled {
    adj: Vec<BTreeSet<usize>>,
    alive: BTreeSet<usize>,
}

impl Peeled {
    fn star_center(&self) -> Option<usize> {
        let k = self.alive.len();
        self.alive.iter().copied().find(|&c| self.adj[c].len() + 1 == k)
    }

    fn leaves_of(&self, u: usize) -> Vec<usize> {
        self.adj[u]
            .iter()
            .copied()
            .filter(|&w| self.adj[w].len() == 1)
            .collect()
    }

    fn closed_sum(&self, labels: &[u64], v: usize) -> i128 {
        labels[v] as i128 + self.adj[v].iter().map(|&w| labels[w] as i128).sum::<i128>()
    }
}

// One leaf removal, replayed in reverse to extend the labeling.
struct Removal {
    leaf: usize,
    parent: usize,
    parent_leaves: Vec<usize>,
    tree_size: usize,
}

/// Labels a tree with maximum label at most `2n - 2 - L(T)` (for `n >= 3`).
///
/// Leaves next to a vertex with the most leaves are peeled until a star
/// remains; the star gets center 1 and leaves `1, 2, ...`; each peeled leaf
/// is then put back with the smallest label that creates no bad pair.
pub fn tree_labeler(t: &Graph) -> Result<Labeling> {
    check_tree(t)?;
    let n = t.vertex_count();
    let mut tree = Peeled {
        adj: (0..n).map(|v| t.neighbors(v).iter().copied().collect()).collect(),
        alive: (0..n).collect(),
    };

    let mut removals = Vec::new();
    let center = loop {
        if let Some(c) = tree.star_center() {
            break c;
        }
        let (parent, parent_leaves) = tree
            .alive
            .iter()
            .map(|&u| (u, tree.leaves_of(u)))
            .max_by_key(|(u, leaves)| (leaves.len(), std::cmp::Reverse(*u)))
            .expect("tree is nonempty");
        let leaf = parent_leaves[0];
        removals.push(Removal {
            leaf,
            parent,
            parent_leaves,
            tree_size: tree.alive.len(),
        });
        tree.adj[parent].remove(&leaf);
        tree.adj[leaf].clear();
        tree.alive.remove(&leaf);
    };

    let mut labels = vec![0u64; n];
    labels[center] = 1;
    for (i, &leaf) in tree.adj[center].iter().enumerate() {
        labels[leaf] = i as u64 + 1;
    }

    for r in removals.into_iter().rev() {
        let u = r.parent;
        let su = tree.closed_sum(&labels, u);
        let fu = labels[u] as i128;
        let bound = (2 * r.tree_size - 2 - r.parent_leaves.len()) as i128;
        let mut forbidden = vec![false; bound as usize + 1];
        let mut forbid = |x: i128| {
            if (1..=bound).contains(&x) {
                forbidden[x as usize] = true;
            }
        };
        for &w in tree.alive.iter().filter(|&&w| w != u) {
            let sw = tree.closed_sum(&labels, w);
            if !r.parent_leaves.contains(&w) {
                forbid(sw - su);
            }
            forbid(sw - fu);
        }
        let label = (1..=bound)
            .find(|&x| !forbidden[x as usize])
            .ok_or_else(|| Error::Invariant(format!("no label in [1, {bound}] for leaf {}", r.leaf)))?;
        labels[r.leaf] = label as u64;
        tree.adj[u].insert(r.leaf);
        tree.adj[r.leaf].insert(u);
        tree.alive.insert(r.leaf);
    }

    let labeling = Labeling::new(labels)?;
    if !is_vertex_sum_distinguishing(t, &labeling)? {
        return Err(Error::Invariant("tree labeling has a bad pair".into()));
    }
    if n >= 3 {
        let bound = (2 * n - 2 - leaf_stat(t)?.max_leaves) as u64;
        if labeling.max_label() > bound {
            return Err(Error::Invariant(format!(
                "tree labeling uses {} > {bound}",
                labeling.max_label()
            )));
        }
    }
    Ok(labeling)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_examples() {
        let k4 = s_star_bounds(&Graph::complete(4).unwrap());
        assert_eq!(
            (k4.distinct_neighborhoods, k4.min_degree, k4.max_degree, k4.lower, k4.xi),
            (1, 3, 3, 1, 2)
        );

        // K_4 plus a disjoint K_2: n' = 2, δ = 1, Δ = 3.
        let g = Graph::complete(4).unwrap().disjoint_union(&Graph::complete(2).unwrap());
        let b = s_star_bounds(&g);
        assert_eq!((b.distinct_neighborhoods, b.lower), (2, 1));

        let p3 = s_star_bounds(&Graph::path(3).unwrap());
        assert_eq!(
            (p3.distinct_neighborhoods, p3.min_degree, p3.max_degree, p3.lower, p3.xi),
            (3, 1, 2, 2, 4)
        );
        assert_eq!(p3.upper_loose, 9);
    }

    #[test]
    fn repair_examples() {
        let p3 = Graph::path(3).unwrap();
        let out = repair_labeler(&p3).unwrap();
        assert!(is_vertex_sum_distinguishing(&p3, &out.labeling).unwrap());
        assert!(out.labeling.max_label() <= 4);
        // All ones: s* = (2, 3, 2); the pair (0, 2) is non-adjacent, so vertex 0
        // moves to the smallest label outside {1} ∪ {s*(y') - s*(y) + 1}.
        assert_eq!(out.steps[0].bad_pair, (0, 2));
        assert_eq!(out.steps[0].relabeled, 0);

        let k4 = Graph::complete(4).unwrap();
        let out = repair_labeler(&k4).unwrap();
        assert_eq!(out.labeling.values(), &[1, 1, 1, 1]);
        assert!(out.steps.is_empty());
    }

    #[test]
    fn repair_on_empty_graph() {
        let g = Graph::empty(4).unwrap();
        let out = repair_labeler(&g).unwrap();
        assert_eq!(out.xi, 5);
        let mut v = out.labeling.values().to_vec();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn tree_examples() {
        let star = Graph::star(5).unwrap();
        let f = tree_labeler(&star).unwrap();
        assert_eq!(f.values(), &[1, 1, 2, 3, 4]);
        assert_eq!(f.max_label(), 4);

        let p4 = Graph::path(4).unwrap();
        let f = tree_labeler(&p4).unwrap();
        assert!(f.max_label() <= 5);
        assert!(is_vertex_sum_distinguishing(&p4, &f).unwrap());

        assert_eq!(tree_labeler(&Graph::path(2).unwrap()).unwrap().values(), &[1, 1]);
        assert!(matches!(
            tree_labeler(&Graph::cycle(4).unwrap()),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(
            tree_labeler(&Graph::empty(1).unwrap()),
            Err(Error::NotATree(_))
        ));
    }

    #[test]
    fn leaf_stat_examples() {
        assert_eq!(
            leaf_stat(&Graph::star(5).unwrap()).unwrap(),
            LeafStat {
                max_leaves: 4,
                vertex: 0
            }
        );
        assert_eq!(leaf_stat(&Graph::path(4).unwrap()).unwrap().max_leaves, 1);
        assert_eq!(
            leaf_stat(&Graph::path(2).unwrap()).unwrap(),
            LeafStat {
                max_leaves: 1,
                vertex: 0
            }
        );
    }
}
