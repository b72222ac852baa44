//! Exact distributions of sums of i.i.d. discrete uniforms on `[N]`.
//!
//! Counts are kept as big integers (the number of outcomes in `[N]^ℓ`
//! hitting each sum), so symmetry and unimodality checks are exact;
//! floating point only appears when a probability is read out.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Upper limit on the estimated memory footprint of a [`Pmf`].
const MAX_PMF_BYTES: f64 = 512.0 * 1024.0 * 1024.0;

/// Distribution of `X_1 + ... + X_ℓ`, each `X_i` uniform on `{1, ..., N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    summands: usize,
    faces: u64,
    counts: Vec<BigUint>,
    total: BigUint,
}

impl Pmf {
    /// `ℓ`.
    pub fn summands(&self) -> usize {
        self.summands
    }

    /// `N`.
    pub fn faces(&self) -> u64 {
        self.faces
    }

    /// Smallest sum with positive probability, `ℓ`.
    pub fn support_min(&self) -> u64 {
        self.summands as u64
    }

    /// Largest sum with positive probability, `ℓN`.
    pub fn support_max(&self) -> u64 {
        self.support_min() + self.counts.len() as u64 - 1
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `N^ℓ`, the number of equally likely outcomes.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Number of outcomes with sum `t`, indexed from `support_min`.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, t: i64) -> BigUint {
        self.index(t)
            .map(|i| self.counts[i].clone())
            .unwrap_or_default()
    }

    fn index(&self, t: i64) -> Option<usize> {
        let i = t.checked_sub(self.summands as i64)?;
        usize::try_from(i).ok().filter(|&i| i < self.counts.len())
    }

    /// `Pr[sum = t]` exactly.
    pub fn exact(&self, t: i64) -> BigRational {
        ratio(self.count(t), &self.total)
    }

    pub fn probability(&self, t: i64) -> f64 {
        self.exact(t).to_f64().unwrap_or(0.0)
    }

    /// All probabilities from `support_min` to `support_max`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|c| ratio(c.clone(), &self.total).to_f64().unwrap_or(0.0))
            .collect()
    }

    /// Twice the mean, `ℓ(N+1)`, which is always an integer.
    pub fn twice_mean(&self) -> u64 {
        self.summands as u64 * (self.faces + 1)
    }

    pub fn mean(&self) -> f64 {
        self.twice_mean() as f64 / 2.0
    }

    /// The smallest sum attaining the maximum probability.
    pub fn mode(&self) -> u64 {
        let mut best = 0;
        for (i, c) in self.counts.iter().enumerate() {
            if *c > self.counts[best] {
                best = i;
            }
        }
        self.support_min() + best as u64
    }

    pub fn max_exact(&self) -> BigRational {
        self.exact(self.mode() as i64)
    }

    /// Exact `Pr[lo <= sum <= hi]`.
    pub fn window(&self, lo: i64, hi: i64) -> BigRational {
        if hi < lo {
            return BigRational::zero();
        }
        let lo = lo.max(self.support_min() as i64);
        let hi = hi.min(self.support_max() as i64);
        let mut acc = BigUint::zero();
        let mut t = lo;
        while t <= hi {
            acc += &self.counts[(t - self.summands as i64) as usize];
            t += 1;
        }
        ratio(acc, &self.total)
    }
}

/// Nearest `f64` to an exact probability.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn ratio(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.clone()))
}

fn check_size(summands: usize, faces: u64) -> Result<()> {
    let support = summands as f64 * (faces as f64 - 1.0) + 1.0;
    let bits = summands as f64 * (faces as f64).log2() + 64.0;
    if support * (bits / 8.0 + 32.0) > MAX_PMF_BYTES {
        return Err(Error::TooLarge(format!(
            "distribution of {summands} summands on [{faces}] has {support} support points"
        )));
    }
    Ok(())
}

/// Exact distribution of a sum of `l` i.i.d. uniforms on `[n]`, by
/// iterated convolution with a sliding window (prefix sums), `O(l · support)`.
pub fn sum_pmf(l: usize, n: u64) -> Result<Pmf> {
    if l == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "need at least one summand and one face, got l={l}, N={n}"
        )));
    }
    check_size(l, n)?;
    let width = n as usize;
    let mut counts = vec![BigUint::one(); width];
    for _ in 1..l {
        let len = counts.len() + width - 1;
        let mut next = Vec::with_capacity(len);
        let mut window = BigUint::zero();
        for i in 0..len {
            if i < counts.len() {
                window += &counts[i];
            }
            if i >= width {
                window -= &counts[i - width];
            }
            next.push(window.clone());
        }
        counts = next;
    }
    Ok(Pmf {
        summands: l,
        faces: n,
        counts,
        total: BigUint::from(n).pow(l as u32),
    })
}

/// Exact `Pr[lo <= X_1 + ... + X_l <= hi]`.
pub fn window_probability(l: usize, n: u64, lo: i64, hi: i64) -> Result<BigRational> {
    Ok(sum_pmf(l, n)?.window(lo, hi))
}

/// Exact `Pr[|X_1 + ... + X_l - l(N+1)/2| >= l^{2/3} N]`.
///
/// The threshold is compared in integers: `|2t - l(N+1)|^3 >= 8 N^3 l^2`.
pub fn concentration_tail(l: usize, n: u64) -> Result<BigRational> {
    let pmf = sum_pmf(l, n)?;
    let twice_mean = BigInt::from(pmf.twice_mean());
    let bound = BigInt::from(8u32) * BigInt::from(n).pow(3) * BigInt::from(l).pow(2);
    let mut acc = BigUint::zero();
    for (i, c) in pmf.counts.iter().enumerate() {
        let t = BigInt::from(pmf.support_min() + i as u64);
        let dev = (BigInt::from(2u32) * t - &twice_mean).magnitude().clone();
        if BigInt::from(dev.pow(3)) >= bound {
            acc += c;
        }
    }
    Ok(ratio(acc, &pmf.total))
}

/// The point-probability bound certified at concrete parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMargin {
    /// `max_t Pr[X_1 + ... + X_{2l} = t] · e^{4C} · N / 5`; at most 1 certifies the bound.
    pub margin: f64,
    pub max_probability: f64,
    /// Smallest sum attaining the maximum.
    pub argmax: u64,
    /// Mean of the `2l`-fold sum, `l(N+1)`.
    pub mean: f64,
}

/// Evaluates the `5/(e^{4C} N)` point-probability bound for a sum of `2l`
/// uniforms on `[n]`.
pub fn point_margin(l: usize, n: u64, c: f64) -> Result<PointMargin> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("C must be positive, got {c}")));
    }
    let pmf = sum_pmf(2 * l, n)?;
    let max_probability = pmf.max_exact().to_f64().unwrap_or(0.0);
    Ok(PointMargin {
        margin: max_probability * (4.0 * c).exp() * n as f64 / 5.0,
        max_probability,
        argmax: pmf.mode(),
        mean: pmf.mean(),
    })
}

/// `g(t) = (1-p)^t + t p (1-p)^{t-1}`, the probability that a
/// `Binomial(t, p)` variable is at most 1.
pub fn at_most_one_probability(p: f64, t: u64) -> f64 {
    ln_at_most_one(p, t).exp()
}

// ln g(t) = (t-1) ln(1-p) + ln(1 + (t-1) p), stable for large t.
fn ln_at_most_one(p: f64, t: u64) -> f64 {
    if t == 0 {
        return 0.0;
    }
    let k = (t - 1) as f64;
    k * (-p).ln_1p() + (k * p).ln_1p()
}

/// Outcome of [`merge_inequality_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeCheck {
    /// `g(t1) g(t2) <= g(t1+1) g(t2-1)`.
    pub conv1_holds: bool,
    /// `g(t2)^{1/t2} <= g(2)^{1/2}`.
    pub decrease_holds: bool,
}

/// Checks, at one point, that moving two class sizes closer together never
/// lowers the product of at-most-one probabilities, and that
/// `g(t)^{1/t}` peaks at `t = 2`.
pub fn merge_inequality_check(p: f64, t1: u64, t2: u64) -> Result<MergeCheck> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    if t1 < 2 || t1 + 2 > t2 {
        return Err(Error::Domain(format!(
            "need 2 <= t1 <= t2 - 2, got t1={t1}, t2={t2}"
        )));
    }
    let g = |t| ln_at_most_one(p, t);
    let conv1_holds = g(t1) + g(t2) <= g(t1 + 1) + g(t2 - 1);
    let decrease_holds = g(t2) / t2 as f64 <= g(2) / 2.0;
    Ok(MergeCheck {
        conv1_holds,
        decrease_holds,
    })
}

/// Exact probability that i.i.d. uniform labels on `[n]` give the vertex
/// sets `x` and `y` equal sums.
///
/// Shared vertices cancel, so this is `Pr[A = B]` for independent sums `A`
/// and `B` of `|x \ y|` and `|y \ x|` uniforms.
pub fn exact_collision_probability(x: &[usize], y: &[usize], n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("N must be positive".into()));
    }
    let xs: BTreeSet<usize> = x.iter().copied().collect();
    let ys: BTreeSet<usize> = y.iter().copied().collect();
    if xs == ys {
        return Err(Error::Domain(
            "the two vertex sets are equal, their sums always coincide".into(),
        ));
    }
    let only_x = xs.difference(&ys).count();
    let only_y = ys.difference(&xs).count();
    if only_x == 0 || only_y == 0 {
        // One side is a sum of at least one positive label, the other is 0.
        return Ok(BigRational::zero());
    }
    let a = sum_pmf(only_x, n)?;
    let b = sum_pmf(only_y, n)?;
    let lo = a.support_min().max(b.support_min()) as i64;
    let hi = a.support_max().min(b.support_max()) as i64;
    let mut hits = BigUint::zero();
    for t in lo..=hi {
        hits += a.count(t) * b.count(t);
    }
    Ok(ratio(hits, &(a.total * b.total)))
}
