//! Randomized labelers for hypergraphs: the easy `m²` labeler and the
//! two-step `⌈m²/C⌉` labeler that first fixes the dangerously popular
//! vertices. Both are verify-and-retry procedures driven by a seeded
//! ChaCha stream, so a seed pins down the output and the statistics.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::{edge_sums, is_distinguishing, Hypergraph, Labeling};

pub const DEFAULT_K: u64 = 64;
pub const DEFAULT_P: u64 = 16;
pub const DEFAULT_C: u64 = 4;
pub const DEFAULT_SEED: u64 = 0xD15C0;

/// Parses a positive constant written as `7`, `7/2` or `3.5`.
pub fn parse_constant(text: &str) -> Result<Ratio<u64>> {
    let text = text.trim();
    let bad = || Error::Domain(format!("`{text}` is not a positive rational constant"));
    let value = if let Some((num, den)) = text.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ratio::new(num, den)
    } else if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let frac: u64 = frac.parse().map_err(|_| bad())?;
        let num = whole
            .checked_mul(den)
            .and_then(|w| w.checked_add(frac))
            .ok_or_else(bad)?;
        Ratio::new(num, den)
    } else {
        Ratio::from_integer(text.parse().map_err(|_| bad())?)
    };
    if value.is_zero() {
        return Err(bad());
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStepConfig {
    pub c: Ratio<u64>,
    pub k: u64,
    pub p: u64,
    pub seed: u64,
    pub step1_budget: u64,
    pub step2_budget: u64,
}

impl Default for TwoStepConfig {
    fn default() -> Self {
        TwoStepConfig {
            c: Ratio::from_integer(DEFAULT_C),
            k: DEFAULT_K,
            p: DEFAULT_P,
            seed: DEFAULT_SEED,
            step1_budget: 1000,
            step2_budget: 1000,
        }
    }
}

impl TwoStepConfig {
    /// Checks `K > P > C > 0`.
    pub fn validate(&self) -> Result<()> {
        if self.c.is_zero() {
            return Err(Error::Domain("C must be positive".into()));
        }
        if Ratio::from_integer(self.p) <= self.c {
            return Err(Error::Domain(format!("need P > C, got P = {}, C = {}", self.p, self.c)));
        }
        if self.k <= self.p {
            return Err(Error::Domain(format!("need K > P, got K = {}, P = {}", self.k, self.p)));
        }
        Ok(())
    }

    /// `N = ⌈m²/C⌉`, computed exactly.
    pub fn label_bound(&self, m: usize) -> Result<u64> {
        let m2 = (m as u128) * (m as u128);
        let num = m2 * (*self.c.denom() as u128);
        let den = *self.c.numer() as u128;
        u64::try_from(num.div_ceil(den).max(1))
            .map_err(|_| Error::Overflow(format!("⌈m²/C⌉ for m = {m}")))
    }
}

fn pair_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Index of the pair `(i, j)`, `i < j`, in lexicographic pair order.
fn pair_index(m: usize, i: usize, j: usize) -> usize {
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairInfo {
    pub first: usize,
    pub second: usize,
    /// `Y(e, e')` and `Y(e', e)`: the popular vertices of each side.
    pub y: [Vec<usize>; 2],
    /// `Z(e, e')` and `Z(e', e)`: the remaining vertices of each side.
    pub z: [Vec<usize>; 2],
    pub dangerous: bool,
    pub special: bool,
    pub newly_dangerous: bool,
    pub special_class: Option<usize>,
}

impl PairInfo {
    /// `X(e, e')` for `side == 0`, `X(e', e)` for `side == 1`.
    pub fn x(&self, side: usize) -> Vec<usize> {
        let mut x = [self.y[side].as_slice(), self.z[side].as_slice()].concat();
        x.sort_unstable();
        x
    }

    /// `|D(e, e')|`.
    pub fn difference_size(&self) -> usize {
        self.y[0].len() + self.y[1].len() + self.z[0].len() + self.z[1].len()
    }

    fn side_sum(&self, side: usize, values: &[u64]) -> i128 {
        self.y[side].iter().map(|&w| values[w] as i128).sum()
    }

    /// `f(e, e') - f(e', e)` under a Step 1 assignment.
    pub fn popular_difference(&self, values: &[u64]) -> i128 {
        self.side_sum(0, values) - self.side_sum(1, values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub k: u64,
    pub p: u64,
    pub edge_count: usize,
    /// The dangerously popular vertices `S`, ascending.
    pub popular: Vec<usize>,
    /// For every vertex, the number of dangerous pairs whose difference contains it.
    pub dangerous_hits: Vec<u64>,
    /// One entry per unordered edge pair, in lexicographic order.
    pub pairs: Vec<PairInfo>,
    pub special_classes: usize,
}

impl PairClassification {
    pub fn pair(&self, i: usize, j: usize) -> &PairInfo {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        &self.pairs[pair_index(self.edge_count, i, j)]
    }

    pub fn dangerous_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.dangerous).count()
    }

    pub fn special_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.special).count()
    }

    pub fn newly_dangerous_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.newly_dangerous).count()
    }

    /// The type, (a) to (e), of a pair once Step 1 has fixed `values` on `S`.
    pub fn pair_type(&self, pair: &PairInfo, values: &[u64], n_bound: u64) -> PairType {
        if pair.special {
            PairType::A
        } else if pair.newly_dangerous {
            let pn = self.p as i128 * n_bound as i128;
            if pair.popular_difference(values).abs() > pn {
                PairType::B
            } else {
                PairType::C
            }
        } else if pair.dangerous {
            PairType::E
        } else {
            PairType::D
        }
    }
}

fn sorted_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect()
}

/// Computes `D`, `X`, `Y`, `Z` and the flags for every pair of edges.
pub fn classify_pairs(h: &Hypergraph, k: u64, p: u64) -> Result<PairClassification> {
    if k <= p {
        return Err(Error::Domain(format!("need K > P, got K = {k}, P = {p}")));
    }
    let m = h.edge_count();
    let n = h.vertex_count();
    let mut xs = Vec::with_capacity(pair_count(m));
    let mut hits = vec![0u64; n];
    for i in 0..m {
        for j in i + 1..m {
            let a = sorted_difference(h.edge(i), h.edge(j));
            let b = sorted_difference(h.edge(j), h.edge(i));
            let dangerous = (a.len() + b.len()) as u64 <= k;
            if dangerous {
                for &w in a.iter().chain(&b) {
                    hits[w] += 1;
                }
            }
            xs.push((i, j, a, b, dangerous));
        }
    }

    // w is popular iff hits(w) >= m² / K³.
    let m2 = (m as u128) * (m as u128);
    let k3 = (k as u128).pow(3);
    let is_popular: Vec<bool> = hits
        .iter()
        .map(|&c| c > 0 && (c as u128) * k3 >= m2)
        .collect();
    let popular: Vec<usize> = (0..n).filter(|&v| is_popular[v]).collect();
    if (popular.len() as u128) > (k as u128).pow(4) {
        return Err(Error::Invariant(format!(
            "{} popular vertices exceed K⁴",
            popular.len()
        )));
    }

    let mut classes: HashMap<[Vec<usize>; 2], usize> = HashMap::new();
    let pairs = xs
        .into_iter()
        .map(|(i, j, a, b, dangerous)| {
            let split = |x: Vec<usize>| -> (Vec<usize>, Vec<usize>) {
                x.into_iter().partition(|&w| is_popular[w])
            };
            let (ya, za) = split(a);
            let (yb, zb) = split(b);
            let special = za.is_empty() && zb.is_empty();
            let outside = za.len() + zb.len();
            let newly_dangerous =
                !dangerous && !special && outside >= 1 && outside as u64 <= p;
            let special_class = special.then(|| {
                let key = if ya <= yb {
                    [ya.clone(), yb.clone()]
                } else {
                    [yb.clone(), ya.clone()]
                };
                let next = classes.len();
                *classes.entry(key).or_insert(next)
            });
            PairInfo {
                first: i,
                second: j,
                y: [ya, yb],
                z: [za, zb],
                dangerous,
                special,
                newly_dangerous,
                special_class,
            }
        })
        .collect();

    Ok(PairClassification {
        k,
        p,
        edge_count: m,
        popular,
        dangerous_hits: hits,
        pairs,
        special_classes: classes.len(),
    })
}

/// The five pair types of the two-step analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairType {
    /// Special.
    A,
    /// Newly dangerous, popular parts differ by more than `PN`.
    B,
    /// Newly dangerous, popular parts within `PN`.
    C,
    /// Non-dangerous, neither newly dangerous nor special.
    D,
    /// Dangerous, not special.
    E,
}

/// Counts of colliding pairs by type, accumulated over failed attempts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TypeCensus {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    /// Step 1 draws rejected because a special pair tied.
    pub special_ties: u64,
    /// Step 1 draws rejected because too many newly dangerous pairs were near ties.
    pub near_tie_excess: u64,
}

impl TypeCensus {
    fn record(&mut self, t: PairType) {
        match t {
            PairType::A => self.a += 1,
            PairType::B => self.b += 1,
            PairType::C => self.c += 1,
            PairType::D => self.d += 1,
            PairType::E => self.e += 1,
        }
    }
}

/// Draws a uniform value in `[1, n_bound]` for every popular vertex. The
/// returned vector is indexed by vertex; vertices outside `S` hold 0.
pub fn step_one<R: Rng + ?Sized>(
    vertex_count: usize,
    cls: &PairClassification,
    n_bound: u64,
    rng: &mut R,
) -> Vec<u64> {
    let mut values = vec![0u64; vertex_count];
    for &v in &cls.popular {
        values[v] = rng.random_range(1..=n_bound);
    }
    values
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepOneReport {
    pub successful: bool,
    /// Special pairs with `f(e, e') = f(e', e)`.
    pub special_ties: usize,
    pub first_special_tie: Option<(usize, usize)>,
    /// Newly dangerous pairs with `|f(e, e') - f(e', e)| <= PN`.
    pub near_ties: usize,
    /// `m² e^{-4C}`.
    pub allowance: f64,
}

fn ratio_to_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Checks both Step 1 success conditions for the assignment `values` on `S`.
pub fn step_one_successful(
    cls: &PairClassification,
    c: &Ratio<u64>,
    n_bound: u64,
    values: &[u64],
) -> StepOneReport {
    let m = cls.edge_count as f64;
    let allowance = m * m * (-4.0 * ratio_to_f64(c)).exp();
    let pn = cls.p as i128 * n_bound as i128;
    let mut special_ties = 0;
    let mut first_special_tie = None;
    let mut near_ties = 0;
    for pair in &cls.pairs {
        if pair.special {
            if pair.popular_difference(values) == 0 {
                special_ties += 1;
                first_special_tie.get_or_insert((pair.first, pair.second));
            }
        } else if pair.newly_dangerous && pair.popular_difference(values).abs() <= pn {
            near_ties += 1;
        }
    }
    StepOneReport {
        successful: special_ties == 0 && near_ties as f64 <= allowance,
        special_ties,
        first_special_tie,
        near_ties,
        allowance,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwoStepStats {
    pub label_bound: u64,
    pub popular_vertices: usize,
    pub dangerous_pairs: usize,
    pub special_pairs: usize,
    pub newly_dangerous_pairs: usize,
    pub step1_attempts: u64,
    pub step1_successes: u64,
    pub step2_attempts: u64,
    pub census: TypeCensus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoStepOutcome {
    pub labeling: Labeling,
    pub stats: TwoStepStats,
}

/// Redraws Step 1 until it is successful, then redraws Step 2 until the
/// labeling is distinguishing, within the configured budgets. Every accepted
/// labeling is verified and uses labels in `[1, ⌈m²/C⌉]`.
pub fn two_step_labeling(h: &Hypergraph, cfg: &TwoStepConfig) -> Result<TwoStepOutcome> {
    cfg.validate()?;
    let m = h.edge_count();
    let n = h.vertex_count();
    if m <= 1 {
        return Ok(TwoStepOutcome {
            labeling: Labeling::all_ones(n),
            stats: TwoStepStats::default(),
        });
    }
    let n_bound = cfg.label_bound(m)?;
    let cls = classify_pairs(h, cfg.k, cfg.p)?;
    let mut stats = TwoStepStats {
        label_bound: n_bound,
        popular_vertices: cls.popular.len(),
        dangerous_pairs: cls.dangerous_count(),
        special_pairs: cls.special_count(),
        newly_dangerous_pairs: cls.newly_dangerous_count(),
        ..TwoStepStats::default()
    };
    let mut in_s = vec![false; n];
    for &v in &cls.popular {
        in_s[v] = true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    while stats.step1_attempts < cfg.step1_budget {
        stats.step1_attempts += 1;
        let mut values = step_one(n, &cls, n_bound, &mut rng);
        let report = step_one_successful(&cls, &cfg.c, n_bound, &values);
        if !report.successful {
            if report.special_ties > 0 {
                stats.census.special_ties += 1;
            } else {
                stats.census.near_tie_excess += 1;
            }
            continue;
        }
        stats.step1_successes += 1;
        let fixed = values.clone();

        for _ in 0..cfg.step2_budget {
            stats.step2_attempts += 1;
            for v in (0..n).filter(|&v| !in_s[v]) {
                values[v] = rng.random_range(1..=n_bound);
            }
            let labeling = Labeling::new(values.clone())?;
            let sums = edge_sums(h, &labeling)?;
            check_after_step_one(&cls, &fixed, &sums, n_bound)?;
            if is_distinguishing(h, &labeling)? {
                return Ok(TwoStepOutcome { labeling, stats });
            }
            census_collisions(&cls, &fixed, &sums, n_bound, &mut stats.census);
        }
    }
    Err(Error::RetryBudget {
        attempts: stats.step1_attempts,
        census: Some(Box::new(stats.census)),
    })
}

// Type (a) pairs differ by exactly f(e,e') - f(e',e) != 0; type (b) pairs
// cannot tie because the Step 2 parts differ by less than PN.
fn check_after_step_one(
    cls: &PairClassification,
    fixed: &[u64],
    sums: &[u64],
    n_bound: u64,
) -> Result<()> {
    for pair in &cls.pairs {
        let diff = sums[pair.first] as i128 - sums[pair.second] as i128;
        match cls.pair_type(pair, fixed, n_bound) {
            PairType::A if diff != pair.popular_difference(fixed) || diff == 0 => {
                return Err(Error::Invariant(format!(
                    "special pair ({}, {}) has sum difference {diff}",
                    pair.first, pair.second
                )));
            }
            PairType::B if diff == 0 => {
                return Err(Error::Invariant(format!(
                    "type (b) pair ({}, {}) collided",
                    pair.first, pair.second
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

fn census_collisions(
    cls: &PairClassification,
    fixed: &[u64],
    sums: &[u64],
    n_bound: u64,
    census: &mut TypeCensus,
) {
    let mut by_sum: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &s) in sums.iter().enumerate() {
        by_sum.entry(s).or_default().push(i);
    }
    for group in by_sum.values().filter(|g| g.len() > 1) {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                census.record(cls.pair_type(cls.pair(i, j), fixed, n_bound));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticOutcome {
    pub labeling: Labeling,
    pub attempts: u64,
}

/// One draw of the `m²` labeler: uniform labels in `[1, m²]`, and whether
/// they are distinguishing.
pub fn quadratic_attempt<R: Rng + ?Sized>(h: &Hypergraph, rng: &mut R) -> Result<(Labeling, bool)> {
    let m = h.edge_count() as u64;
    if m <= 1 {
        return Ok((Labeling::all_ones(h.vertex_count()), true));
    }
    let bound = m
        .checked_mul(m)
        .ok_or_else(|| Error::Overflow(format!("m² for m = {m}")))?;
    let labeling = Labeling::new(
        (0..h.vertex_count())
            .map(|_| rng.random_range(1..=bound))
            .collect(),
    )?;
    let ok = is_distinguishing(h, &labeling)?;
    Ok((labeling, ok))
}

/// Retries [`quadratic_attempt`] up to `budget` times.
pub fn quadratic_random_labeling(h: &Hypergraph, seed: u64, budget: u64) -> Result<QuadraticOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=budget {
        let (labeling, ok) = quadratic_attempt(h, &mut rng)?;
        if ok {
            return Ok(QuadraticOutcome {
                labeling,
                attempts: attempt,
            });
        }
    }
    Err(Error::RetryBudget {
        attempts: budget,
        census: None,
    })
}
