//! Seeded generators: random `r`-uniform hypergraphs with the random-graph
//! density parameters, padded lower-bound instances, random graphs and
//! trees, sum-class histograms, and a JSON-configured experiment runner.

use std::collections::{BTreeMap, HashSet};
use std::time::Duration;

use crate::clock::Stopwatch;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exact_s_with, SolveOptions};
use crate::hypercore::for_each_combination;
use crate::hypercore::{Graph, Hypergraph, Labeling};
use crate::randlabel::{parse_constant, quadratic_random_labeling, two_step_labeling, TwoStepConfig};

/// Largest number of `r`-subsets the generators will walk through.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

fn guarded_binomial(n: usize, r: usize) -> Result<u128> {
    match binomial(n as u64, r as u64) {
        Some(b) if b <= ENUMERATION_LIMIT => Ok(b),
        _ => Err(Error::TooLarge(format!(
            "C({n}, {r}) exceeds the enumeration limit of {ENUMERATION_LIMIT}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityParams {
    pub r: usize,
    pub n: u64,
    /// `√(13 r r!)`.
    pub q: f64,
    /// Edge probability `q √(ln N) / √(N^{r-1})`.
    pub p: f64,
    /// `⌊N^r / (2 r r!)⌋`.
    pub s: u128,
    /// `p C(N, r)`.
    pub expected_edges: f64,
}

fn factorial(r: usize) -> BigUint {
    (1..=r as u64).map(BigUint::from).product()
}

fn density_probability(r: usize, n: u64) -> f64 {
    let q = (13.0 * r as f64 * factorial(r).to_f64().unwrap_or(f64::INFINITY)).sqrt();
    q * (n as f64).ln().sqrt() / (n as f64).powf((r as f64 - 1.0) / 2.0)
}

pub fn density_params(r: usize, n: u64) -> Result<DensityParams> {
    if r < 2 || n < 2 {
        return Err(Error::Domain(format!("need r >= 2 and N >= 2, got r = {r}, N = {n}")));
    }
    let fact = factorial(r);
    let q = (13.0 * r as f64 * fact.to_f64().unwrap_or(f64::INFINITY)).sqrt();
    let p = density_probability(r, n);
    if p > 1.0 {
        return Err(Error::ParamsOutOfRange(format!(
            "edge probability {p} > 1 for r = {r}, N = {n}"
        )));
    }
    let s = BigUint::from(n).pow(r as u32) / (BigUint::from(2 * r as u64) * fact);
    let s = s
        .to_u128()
        .ok_or_else(|| Error::Overflow(format!("N^r / (2r r!) for r = {r}, N = {n}")))?;
    if s == 0 {
        return Err(Error::ParamsOutOfRange(format!("label budget s is 0 for r = {r}, N = {n}")));
    }
    let expected_edges = p * binomial(n, r as u64).map_or(f64::INFINITY, |b| b as f64);
    Ok(DensityParams {
        r,
        n,
        q,
        p,
        s,
        expected_edges,
    })
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} is outside [0, 1]")));
    }
    Ok(())
}

fn runiform_edges<R: Rng + ?Sized>(n: usize, r: usize, p: f64, rng: &mut R) -> Result<Vec<Vec<usize>>> {
    check_probability(p)?;
    guarded_binomial(n, r)?;
    let mut edges = Vec::new();
    for_each_combination(n, r, |c| {
        if rng.random_bool(p) {
            edges.push(c.to_vec());
        }
    });
    Ok(edges)
}

/// Includes every `r`-subset of `[0, n)` independently with probability `p`.
pub fn gen_runiform(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Hypergraph::new(n, runiform_edges(n, r, p, &mut rng)?)
}

/// `m` distinct nonempty edges, each drawn by keeping every vertex with
/// probability `inclusion` and redrawing empty or repeated sets.
pub fn random_hypergraph<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    inclusion: f64,
    rng: &mut R,
) -> Result<Hypergraph> {
    check_probability(inclusion)?;
    if n < 128 && (m as u128) >= (1u128 << n) {
        return Err(Error::InfeasibleParams(format!(
            "{m} distinct nonempty edges do not fit on {n} vertices"
        )));
    }
    if inclusion == 0.0 && m > 0 {
        return Err(Error::InfeasibleParams("inclusion probability 0 gives only empty sets".into()));
    }
    let max_draws = 1000 * (m as u64 + 1);
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut draws = 0;
    while edges.len() < m {
        draws += 1;
        if draws > max_draws {
            return Err(Error::TooLarge(format!(
                "no {m} distinct edges after {max_draws} draws"
            )));
        }
        let e: Vec<usize> = (0..n).filter(|_| rng.random_bool(inclusion)).collect();
        if !e.is_empty() && seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges)
}

/// `G(n, p)`: every pair is an edge independently with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// A uniformly random labeled tree, decoded from a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n <= 2 {
        return Graph::path(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::new(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundOptions {
    /// Exponent slack in `N = ⌊m^{2/(r+1+2δ)}⌋`.
    pub delta: f64,
    /// Largest uniformity tried when choosing `r`.
    pub max_r: usize,
}

impl Default for LowerBoundOptions {
    fn default() -> Self {
        LowerBoundOptions {
            delta: 0.1,
            max_r: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundInstance {
    pub hypergraph: Hypergraph,
    pub r: usize,
    /// Vertices that can carry edges; the rest are isolated padding.
    pub core_vertices: usize,
    /// Edge probability used for sampling, after clamping to 1.
    pub p: f64,
    /// Edges sampled before trimming or topping up to `m`.
    pub sampled_edges: usize,
}

/// An `n`-vertex, `m`-edge instance: a random `r`-uniform hypergraph on
/// `N` vertices, adjusted to exactly `m` edges and padded with `n - N`
/// isolated vertices.
pub fn lower_bound_instance(
    n: usize,
    m: usize,
    epsilon: f64,
    seed: u64,
    opts: &LowerBoundOptions,
) -> Result<LowerBoundInstance> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon {epsilon} is outside (0, 1)")));
    }
    if opts.delta.is_nan() || opts.delta <= 0.0 {
        return Err(Error::Domain(format!("delta {} must be positive", opts.delta)));
    }
    if n > m {
        return Err(Error::InfeasibleParams(format!("need n <= m, got n = {n}, m = {m}")));
    }
    let r = (1..=opts.max_r)
        .find(|&r| epsilon * (r as f64 + 1.0) > 2.0)
        .ok_or_else(|| {
            Error::InfeasibleParams(format!("no r <= {} with epsilon > 2/(r+1)", opts.max_r))
        })?;
    let exponent = 2.0 / (r as f64 + 1.0 + 2.0 * opts.delta);
    let core = ((m as f64).powf(exponent) * (1.0 + 1e-12)).floor() as usize;
    if core > n {
        return Err(Error::InfeasibleParams(format!("N = {core} exceeds n = {n}")));
    }
    let available = binomial(core as u64, r as u64).unwrap_or(u128::MAX);
    if (m as u128) > available {
        return Err(Error::InfeasibleParams(format!(
            "m = {m} exceeds C({core}, {r}) = {available}"
        )));
    }
    guarded_binomial(core, r)?;

    let p = if core >= 2 { density_probability(r, core as u64).min(1.0) } else { 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = runiform_edges(core, r, p, &mut rng)?;
    let sampled_edges = edges.len();
    if edges.len() > m {
        let mut keep: Vec<usize> = sample(&mut rng, edges.len(), m).into_vec();
        keep.sort_unstable();
        edges = keep.into_iter().map(|i| std::mem::take(&mut edges[i])).collect();
    } else if edges.len() < m {
        let present: HashSet<Vec<usize>> = edges.iter().cloned().collect();
        let mut missing = Vec::new();
        for_each_combination(core, r, |c| {
            if !present.contains(c) {
                missing.push(c.to_vec());
            }
        });
        let mut add: Vec<usize> = sample(&mut rng, missing.len(), m - edges.len()).into_vec();
        add.sort_unstable();
        edges.extend(add.into_iter().map(|i| std::mem::take(&mut missing[i])));
        edges.sort_unstable();
    }
    let hypergraph = Hypergraph::new(core.max(1), edges)?.padded(n - core.max(1));
    Ok(LowerBoundInstance {
        hypergraph,
        r,
        core_vertices: core,
        p,
        sampled_edges,
    })
}

/// `h_k`: how many `r`-subsets of `[0, N)` have label sum `k` under `f`.
pub fn sum_class_histogram(n: usize, r: usize, f: &Labeling) -> Result<BTreeMap<u64, u64>> {
    f.check_len(n)?;
    guarded_binomial(n, r)?;
    let mut hist = BTreeMap::new();
    for_each_combination(n, r, |c| {
        let s: u64 = c.iter().map(|&v| f.get(v)).sum();
        *hist.entry(s).or_insert(0) += 1;
    });
    Ok(hist)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorConfig {
    /// All nonempty subsets, one instance per size.
    Complete { sizes: Vec<usize> },
    Runiform { n: usize, r: usize, p: f64 },
    Random { n: usize, m: usize, inclusion: f64 },
    Lowerbound {
        n: usize,
        m: usize,
        epsilon: f64,
        #[serde(default = "default_delta")]
        delta: f64,
    },
}

fn default_delta() -> f64 {
    LowerBoundOptions::default().delta
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureConfig {
    ExactS {
        #[serde(default)]
        node_budget: Option<u64>,
    },
    Quadratic {
        #[serde(default = "default_budget")]
        budget: u64,
    },
    TwoStep {
        #[serde(default = "default_c")]
        c: String,
        #[serde(default = "default_k")]
        k: u64,
        #[serde(default = "default_p")]
        p: u64,
        #[serde(default = "default_budget")]
        step1_budget: u64,
        #[serde(default = "default_budget")]
        step2_budget: u64,
    },
}

fn default_budget() -> u64 {
    1000
}
fn default_c() -> String {
    crate::randlabel::DEFAULT_C.to_string()
}
fn default_k() -> u64 {
    crate::randlabel::DEFAULT_K
}
fn default_p() -> u64 {
    crate::randlabel::DEFAULT_P
}

/// ```json
/// {"seed": 7, "instances": 20,
///  "generator": {"kind": "runiform", "n": 6, "r": 2, "p": 0.8},
///  "measure": {"kind": "exact_s"}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(default = "default_instances")]
    pub instances: usize,
    pub generator: GeneratorConfig,
    pub measure: MeasureConfig,
}

fn default_instances() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    /// `s(H)` for `exact_s`, the maximum label for the labelers.
    pub value: Option<u64>,
    /// A known upper bound on `s(H)`: `2^{n-1}` for complete hypergraphs,
    /// from the powers-of-two labeling.
    pub reference: Option<u64>,
    pub attempts: Option<u64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub min: u64,
    /// Lower median.
    pub median: u64,
    pub max: u64,
}

impl Summary {
    fn of(mut values: Vec<u64>) -> Option<Summary> {
        values.sort_unstable();
        Some(Summary {
            count: values.len(),
            min: *values.first()?,
            median: values[(values.len() - 1) / 2],
            max: *values.last()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub records: Vec<InstanceRecord>,
    pub edge_counts: Option<Summary>,
    pub values: Option<Summary>,
    pub successes: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn generate(cfg: &GeneratorConfig, index: usize, rng: &mut ChaCha8Rng) -> Result<(Hypergraph, Option<u64>)> {
    match cfg {
        GeneratorConfig::Complete { sizes } => {
            let n = sizes[index];
            Ok((Hypergraph::complete(n)?, Some(1u64 << (n - 1))))
        }
        GeneratorConfig::Runiform { n, r, p } => {
            Ok((Hypergraph::new(*n, runiform_edges(*n, *r, *p, rng)?)?, None))
        }
        GeneratorConfig::Random { n, m, inclusion } => Ok((random_hypergraph(*n, *m, *inclusion, rng)?, None)),
        GeneratorConfig::Lowerbound { n, m, epsilon, delta } => {
            let opts = LowerBoundOptions {
                delta: *delta,
                ..LowerBoundOptions::default()
            };
            Ok((lower_bound_instance(*n, *m, *epsilon, rng.random(), &opts)?.hypergraph, None))
        }
    }
}

fn measure(cfg: &MeasureConfig, h: &Hypergraph, rng: &mut ChaCha8Rng, record: &mut InstanceRecord) -> Result<()> {
    let outcome = match cfg {
        MeasureConfig::ExactS { node_budget } => {
            let mut opts = SolveOptions::default();
            if let Some(b) = node_budget {
                opts.node_budget = *b;
            }
            exact_s_with(h, &opts).map(|r| (r.optimum, r.nodes_expanded))
        }
        MeasureConfig::Quadratic { budget } => {
            quadratic_random_labeling(h, rng.random(), *budget).map(|o| (o.labeling.max_label(), o.attempts))
        }
        MeasureConfig::TwoStep {
            c,
            k,
            p,
            step1_budget,
            step2_budget,
        } => {
            let cfg = TwoStepConfig {
                c: parse_constant(c)?,
                k: *k,
                p: *p,
                seed: rng.random(),
                step1_budget: *step1_budget,
                step2_budget: *step2_budget,
            };
            two_step_labeling(h, &cfg).map(|o| (o.labeling.max_label(), o.stats.step1_attempts))
        }
    };
    match outcome {
        Ok((value, attempts)) => {
            record.value = Some(value);
            record.attempts = Some(attempts);
        }
        Err(e @ (Error::SearchBudget { .. } | Error::RetryBudget { .. })) => record.error = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Generates the configured instances, each from its own stream of the
/// seed, and measures each one. Reports are identical for identical configs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Stopwatch::start();
    let count = match &config.generator {
        GeneratorConfig::Complete { sizes } => sizes.len(),
        _ => config.instances,
    };
    let mut records = Vec::with_capacity(count);
    for index in 0..count {
        let mut rng = instance_rng(config.seed, index);
        let (h, reference) = generate(&config.generator, index, &mut rng)?;
        let mut record = InstanceRecord {
            index,
            vertices: h.vertex_count(),
            edges: h.edge_count(),
            value: None,
            reference,
            attempts: None,
            error: None,
        };
        measure(&config.measure, &h, &mut rng, &mut record)?;
        records.push(record);
    }
    Ok(ExperimentReport {
        config: config.clone(),
        edge_counts: Summary::of(records.iter().map(|r| r.edges as u64).collect()),
        values: Summary::of(records.iter().filter_map(|r| r.value).collect()),
        successes: records.iter().filter(|r| r.value.is_some()).count(),
        records,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::is_distinguishing;

    #[test]
    fn binomials() {
        assert_eq!(binomial(30, 2), Some(435));
        assert_eq!(binomial(5, 7), Some(0));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
    }

    #[test]
    fn density_examples() {
        let p = density_params(2, 10_000).unwrap();
        assert_eq!(p.s, 12_500_000);
        assert!((p.q - 52f64.sqrt()).abs() < 1e-12);
        assert!(matches!(density_params(2, 100), Err(Error::ParamsOutOfRange(_))));
        assert!(density_params(1, 100).is_err());
    }

    #[test]
    fn runiform_extremes() {
        assert_eq!(gen_runiform(6, 3, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(gen_runiform(6, 3, 1.0, 1).unwrap().edge_count(), 20);
        assert_eq!(gen_runiform(6, 3, 0.5, 4).unwrap(), gen_runiform(6, 3, 0.5, 4).unwrap());
        assert!(gen_runiform(6, 3, 1.5, 4).is_err());
        assert!(matches!(gen_runiform(200, 5, 0.1, 4), Err(Error::TooLarge(_))));
    }

    #[test]
    fn lower_bound_shape() {
        let inst = lower_bound_instance(100, 100, 0.9, 3, &LowerBoundOptions::default()).unwrap();
        assert_eq!((inst.r, inst.core_vertices), (2, 17));
        assert_eq!(inst.hypergraph.vertex_count(), 100);
        assert_eq!(inst.hypergraph.edge_count(), 100);
        assert!(inst.hypergraph.uncovered_vertices().len() >= 83);
        assert!(matches!(
            lower_bound_instance(100, 100, 0.01, 3, &LowerBoundOptions::default()),
            Err(Error::InfeasibleParams(_))
        ));
        assert!(matches!(
            lower_bound_instance(10, 100, 0.9, 3, &LowerBoundOptions::default()),
            Err(Error::InfeasibleParams(_))
        ));
    }

    #[test]
    fn histograms() {
        let h = sum_class_histogram(3, 2, &Labeling::new(vec![1, 2, 3]).unwrap()).unwrap();
        assert_eq!(h, BTreeMap::from([(3, 1), (4, 1), (5, 1)]));
        let h = sum_class_histogram(3, 2, &Labeling::new(vec![1, 1, 2]).unwrap()).unwrap();
        assert_eq!(h, BTreeMap::from([(2, 1), (3, 2)]));
        let f = Labeling::new(vec![1, 2, 4, 8, 9]).unwrap();
        let hist = sum_class_histogram(5, 2, &f).unwrap();
        let complete = Hypergraph::complete_uniform(5, 2).unwrap();
        assert_eq!(hist.values().all(|&c| c <= 1), is_distinguishing(&complete, &f).unwrap());
        assert_eq!(hist.values().sum::<u64>(), 10);
    }

    #[test]
    fn trees_and_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..30 {
            assert!(random_tree(n, &mut rng).unwrap().is_tree() || n == 0);
        }
        let g = random_graph(10, 1.0, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 45);
    }

    #[test]
    fn complete_experiment() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"seed": 1, "generator": {"kind": "complete", "sizes": [3, 4]},
                "measure": {"kind": "exact_s"}}"#,
        )
        .unwrap();
        let report = run_experiment(&cfg).unwrap();
        let got: Vec<_> = report.records.iter().map(|r| (r.value, r.reference)).collect();
        // (3, 5, 6, 7) already separates all subsets of four vertices.
        assert_eq!(got, vec![(Some(4), Some(4)), (Some(7), Some(8))]);
    }

    #[test]
    fn experiments_are_reproducible() {
        let cfg = ExperimentConfig {
            seed: 11,
            instances: 5,
            generator: GeneratorConfig::Runiform { n: 6, r: 2, p: 0.8 },
            measure: MeasureConfig::ExactS { node_budget: None },
        };
        let a = serde_json::to_string(&run_experiment(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_experiment(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
