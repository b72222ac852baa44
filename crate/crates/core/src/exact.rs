//! Exact `s(H)`, `s*(G)` and `irr(H)` for small instances.
//!
//! The search deepens the label bound `N` from a cheap lower bound. For
//! each `N` it assigns labels depth-first in a fixed vertex order (chosen
//! once, greedily, so that edges complete as early as possible) with labels
//! tried in ascending order, and backtracks as soon as two completed edges
//! share a sum. The first `N` admitting a labeling is optimal because every
//! smaller bound was refuted exhaustively.

use std::time::Duration;

use crate::clock::Stopwatch;

use crate::construct::s_star_bounds;
use crate::error::{Error, Result};
use crate::hypercore::{closed_neighborhood_hypergraph, dual, is_distinguishing, Graph, Hypergraph, Labeling};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest number of labelings [`oracle_enumerate`] agrees to scan.
pub const ORACLE_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Total search nodes (label assignments) across all bounds tried.
    pub node_budget: u64,
    /// Start deepening at least here.
    pub lower_hint: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            lower_hint: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// The smallest achievable maximum label.
    pub optimum: u64,
    /// A distinguishing labeling with maximum label `optimum`: the first one
    /// met in search order.
    pub witness: Labeling,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

struct Search<'a> {
    edges: &'a [Vec<usize>],
    order: Vec<usize>,
    // completes[d]: edges whose last vertex in `order` sits at depth d.
    completes: Vec<Vec<usize>>,
    labels: Vec<u64>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, budget: u64) -> Self {
        let order = completion_order(h);
        let mut position = vec![0; h.vertex_count()];
        for (d, &v) in order.iter().enumerate() {
            position[v] = d;
        }
        let mut completes = vec![Vec::new(); order.len()];
        for (i, e) in h.edges().iter().enumerate() {
            let last = e.iter().map(|&v| position[v]).max().expect("edges are nonempty");
            completes[last].push(i);
        }
        Self {
            edges: h.edges(),
            order,
            completes,
            labels: vec![0; h.vertex_count()],
            used: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self, bound: u64, max_edge: usize) -> Outcome {
        self.used.clear();
        self.used.resize(max_edge * bound as usize + 1, false);
        self.labels.iter_mut().for_each(|l| *l = 0);
        self.descend(0, bound)
    }

    fn descend(&mut self, depth: usize, bound: u64) -> Outcome {
        if depth == self.order.len() {
            return Outcome::Found;
        }
        let v = self.order[depth];
        let mut marked: Vec<usize> = Vec::with_capacity(self.completes[depth].len());
        for label in 1..=bound {
            if self.nodes >= self.budget {
                return Outcome::OutOfBudget;
            }
            self.nodes += 1;
            self.labels[v] = label;
            marked.clear();
            let mut clash = false;
            for &e in &self.completes[depth] {
                let s: u64 = self.edges[e].iter().map(|&w| self.labels[w]).sum();
                let s = s as usize;
                if self.used[s] {
                    clash = true;
                    break;
                }
                self.used[s] = true;
                marked.push(s);
            }
            if !clash {
                match self.descend(depth + 1, bound) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            for &s in &marked {
                self.used[s] = false;
            }
        }
        self.labels[v] = 0;
        Outcome::Exhausted
    }
}

/// Greedy static order: repeatedly take the vertex that completes the most
/// edges, then the one in most not-yet-complete edges, then the smallest
/// index. Vertices in no edge end up last.
fn completion_order(h: &Hypergraph) -> Vec<usize> {
    let n = h.vertex_count();
    let incidence = h.incidence();
    let mut missing: Vec<usize> = h.edges().iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let completes = incidence[v].iter().filter(|&&e| missing[e] == 1).count();
                let open = incidence[v].len();
                (completes, open, std::cmp::Reverse(v))
            })
            .expect("an unplaced vertex remains");
        placed[best] = true;
        for &e in &incidence[best] {
            missing[e] -= 1;
        }
        order.push(best);
    }
    order
}

/// Smallest `N` for which edges of the occurring sizes `k` could possibly
/// take `m` distinct sums, counting the values in `∪_k [k, kN]`.
pub fn sum_range_lower_bound(h: &Hypergraph) -> u64 {
    let m = h.edge_count() as u64;
    if m <= 1 {
        return 1;
    }
    let mut sizes: Vec<u64> = h.edges().iter().map(|e| e.len() as u64).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let reachable = |bound: u64| {
        let mut count = 0u64;
        let mut covered_to = 0u64;
        for &k in &sizes {
            let (lo, hi) = (k.max(covered_to + 1), k * bound);
            if hi >= lo {
                count += hi - lo + 1;
                covered_to = hi;
            }
        }
        count
    };
    let mut bound = 1;
    while reachable(bound) < m {
        bound += 1;
    }
    bound
}

fn power_bound(n: usize) -> u64 {
    if n == 0 {
        1
    } else if n <= 63 {
        1u64 << (n - 1)
    } else {
        u64::MAX
    }
}

/// A distinguishing labeling with every label at most `bound`, if one
/// exists. Deterministic; never gives up.
pub fn decide_labeling(h: &Hypergraph, bound: u64) -> Option<Labeling> {
    decide_labeling_within(h, bound, u64::MAX).expect("unbounded search cannot run out of budget")
}

/// As [`decide_labeling`] but stops after `node_budget` label assignments.
pub fn decide_labeling_within(h: &Hypergraph, bound: u64, node_budget: u64) -> Result<Option<Labeling>> {
    if bound == 0 {
        return Ok(None);
    }
    let mut search = Search::new(h, node_budget);
    match search.run(bound, h.max_edge_size()) {
        Outcome::Found => Ok(Some(Labeling::new(search.labels)?)),
        Outcome::Exhausted => Ok(None),
        Outcome::OutOfBudget => Err(Error::SearchBudget {
            budget: node_budget,
            lower: 1,
            upper: power_bound(h.vertex_count()),
        }),
    }
}

pub fn exact_s(h: &Hypergraph) -> Result<SolveResult> {
    exact_s_with(h, &SolveOptions::default())
}

pub fn exact_s_with(h: &Hypergraph, opts: &SolveOptions) -> Result<SolveResult> {
    let start = Stopwatch::start();
    let ceiling = power_bound(h.vertex_count());
    let mut bound = sum_range_lower_bound(h).max(opts.lower_hint).max(1);
    let mut search = Search::new(h, opts.node_budget);
    let max_edge = h.max_edge_size();
    loop {
        if bound > ceiling {
            return Err(Error::Invariant(format!(
                "no labeling within the power-of-two bound {ceiling}"
            )));
        }
        if (max_edge as u128) * (bound as u128) > (1u128 << 32) {
            return Err(Error::TooLarge(format!("label bound {bound} for exhaustive search")));
        }
        match search.run(bound, max_edge) {
            Outcome::Found => {
                let witness = Labeling::new(search.labels.clone())?;
                debug_assert!(is_distinguishing(h, &witness).unwrap_or(false));
                return Ok(SolveResult {
                    optimum: bound,
                    witness,
                    nodes_expanded: search.nodes,
                    elapsed: start.elapsed(),
                });
            }
            Outcome::Exhausted => bound += 1,
            Outcome::OutOfBudget => {
                return Err(Error::SearchBudget {
                    budget: opts.node_budget,
                    lower: bound,
                    upper: ceiling,
                })
            }
        }
    }
}

/// `s*(G)`, solved as `s` of the closed-neighborhood hypergraph, starting
/// from the degree-based lower bound.
pub fn exact_s_star(g: &Graph) -> Result<SolveResult> {
    exact_s_star_with(g, &SolveOptions::default())
}

pub fn exact_s_star_with(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    let h = closed_neighborhood_hypergraph(g);
    let lower = s_star_bounds(g).lower;
    let opts = SolveOptions {
        lower_hint: opts.lower_hint.max(lower),
        ..*opts
    };
    exact_s_with(&h, &opts)
}

/// `irr(H) = s(H*)`; the witness labels the edges of `h`.
pub fn exact_irr(h: &Hypergraph) -> Result<SolveResult> {
    exact_irr_with(h, &SolveOptions::default())
}

pub fn exact_irr_with(h: &Hypergraph, opts: &SolveOptions) -> Result<SolveResult> {
    let d = dual(h)?;
    exact_s_with(&d.hypergraph, opts)
}

/// Scans all `bound^n` labelings in lexicographic order (vertex 0 most
/// significant) and returns the first distinguishing one.
pub fn oracle_enumerate(h: &Hypergraph, bound: u64) -> Result<Option<Labeling>> {
    let n = h.vertex_count();
    let size = (bound as f64).powi(n as i32);
    if size > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge { size });
    }
    if bound == 0 {
        return Ok(None);
    }
    let mut values = vec![1u64; n];
    loop {
        let f = Labeling::new(values.clone())?;
        if is_distinguishing(h, &f)? {
            return Ok(Some(f));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if values[i] < bound {
                values[i] += 1;
                break;
            }
            values[i] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn decide_examples() {
        let full = Hypergraph::complete(3).unwrap();
        assert_eq!(decide_labeling(&full, 3), None);
        let f = decide_labeling(&full, 4).unwrap();
        assert!(is_distinguishing(&full, &f).unwrap());
        assert!(f.max_label() <= 4);
        assert_eq!(decide_labeling(&hg(1, &[&[0]]), 1).unwrap().values(), &[1]);
        assert_eq!(decide_labeling(&hg(1, &[&[0]]), 0), None);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_s(&Hypergraph::complete(3).unwrap()).unwrap().optimum, 4);
        assert_eq!(exact_s(&hg(2, &[&[0], &[1], &[0, 1]])).unwrap().optimum, 2);
        assert_eq!(exact_s(&hg(3, &[&[0, 1, 2]])).unwrap().optimum, 1);
    }

    #[test]
    fn s_star_examples() {
        assert_eq!(exact_s_star(&Graph::path(3).unwrap()).unwrap().optimum, 2);
        assert_eq!(exact_s_star(&Graph::star(4).unwrap()).unwrap().optimum, 3);
        assert_eq!(exact_s_star(&Graph::complete(4).unwrap()).unwrap().optimum, 1);
    }

    #[test]
    fn irr_examples() {
        assert_eq!(exact_irr(&hg(3, &[&[0, 1], &[1, 2]])).unwrap().optimum, 2);
        assert_eq!(exact_irr(&hg(1, &[&[0]])).unwrap().optimum, 1);
        assert!(matches!(
            exact_irr(&hg(2, &[&[0, 1]])),
            Err(Error::DualDegenerate { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        let h = hg(2, &[&[0], &[1]]);
        assert_eq!(oracle_enumerate(&h, 1).unwrap(), None);
        assert_eq!(oracle_enumerate(&h, 2).unwrap().unwrap().values(), &[1, 2]);
        let big = Hypergraph::complete(12).unwrap();
        assert!(matches!(
            oracle_enumerate(&big, 10),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_reports_a_bracket() {
        let full = Hypergraph::complete(5).unwrap();
        let opts = SolveOptions {
            node_budget: 50,
            ..SolveOptions::default()
        };
        match exact_s_with(&full, &opts) {
            Err(Error::SearchBudget { lower, upper, .. }) => {
                assert!(lower <= 16 && upper >= 16);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn lower_bound_is_valid() {
        // Seven subsets of three vertices: sizes 1..3 reach [1, 3N], so N >= 3.
        assert_eq!(sum_range_lower_bound(&Hypergraph::complete(3).unwrap()), 3);
        assert_eq!(sum_range_lower_bound(&hg(3, &[&[0], &[1], &[2]])), 3);
        assert_eq!(sum_range_lower_bound(&hg(3, &[&[0, 1, 2]])), 1);
    }

    #[test]
    fn uncovered_vertices_get_label_one() {
        let h = hg(4, &[&[0], &[1]]);
        let r = exact_s(&h).unwrap();
        assert_eq!(r.optimum, 2);
        assert_eq!(r.witness.get(2), 1);
        assert_eq!(r.witness.get(3), 1);
    }
}
