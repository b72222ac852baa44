//! The exact solvers and the probability engine against brute force.

mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumdist::exact::{decide_labeling, exact_irr, exact_s, exact_s_star, oracle_enumerate};
use sumdist::genx::{random_graph, random_hypergraph};
use sumdist::hypercore::{dual, is_distinguishing};
use sumdist::prob::{exact_collision_probability, sum_pmf};
use sumdist::Hypergraph;

#[test]
fn decide_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..500 {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(1..=((1usize << n) - 1).min(8));
        let h = random_hypergraph(n, m, 0.5, &mut rng).unwrap();
        let bound = rng.random_range(1..=6);
        let fast = decide_labeling(&h, bound);
        let slow = oracle_enumerate(&h, bound).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "{:?} at {bound}", h.edges());
        if let Some(f) = fast {
            assert!(is_distinguishing(&h, &f).unwrap());
            assert!(f.max_label() <= bound);
        }
    }
}

#[test]
fn exact_s_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for _ in 0..150 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(1..=((1usize << n) - 1).min(9));
        let h = random_hypergraph(n, m, 0.4, &mut rng).unwrap();
        let r = exact_s(&h).unwrap();
        assert_eq!(r.optimum, common::brute_s(&h), "{:?}", h.edges());
        assert!(r.optimum <= 1 << (n - 1));
        assert_eq!(r.witness.max_label(), r.optimum);
        assert!(decide_labeling(&h, r.optimum).is_some());
        if r.optimum > 1 {
            assert!(decide_labeling(&h, r.optimum - 1).is_none());
        }
    }
}

#[test]
fn exact_s_star_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(502);
    for _ in 0..150 {
        let n = rng.random_range(1..=6);
        let g = random_graph(n, rng.random_range(0.0..1.0), &mut rng).unwrap();
        assert_eq!(exact_s_star(&g).unwrap().optimum, common::brute_s_star(&g), "{:?}", g.edges());
    }
}

#[test]
fn exact_irr_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(503);
    let mut checked = 0;
    while checked < 80 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(1..=5).min((1 << n) - 1);
        let h = random_hypergraph(n, m, 0.5, &mut rng).unwrap();
        if dual(&h).is_err() {
            assert!(exact_irr(&h).is_err());
            continue;
        }
        assert_eq!(exact_irr(&h).unwrap().optimum, common::brute_irr(&h), "{:?}", h.edges());
        checked += 1;
    }
}

#[test]
fn adding_an_edge_never_lowers_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(504);
    for _ in 0..30 {
        let n = rng.random_range(2..=4);
        let mut h = Hypergraph::new(n, vec![vec![0]]).unwrap();
        let mut last = exact_s(&h).unwrap().optimum;
        for _ in 0..6 {
            let e: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
            if e.is_empty() || h.contains_edge(&e) {
                continue;
            }
            h = h.with_edge(e).unwrap();
            let s = exact_s(&h).unwrap().optimum;
            assert!(s >= last);
            last = s;
        }
    }
}

fn enumerate_collision(x: &[usize], y: &[usize], n: u64) -> BigRational {
    let vars = 1 + x.iter().chain(y).copied().max().unwrap();
    let mut hits = 0u64;
    let mut total = 0u64;
    common::any_labeling(vars, n, |f| {
        total += 1;
        let sx: u64 = x.iter().map(|&v| f[v]).sum();
        let sy: u64 = y.iter().map(|&v| f[v]).sum();
        hits += u64::from(sx == sy);
        false
    });
    BigRational::new(hits.into(), total.into())
}

#[test]
fn collision_probability_matches_enumeration() {
    let cases: [(&[usize], &[usize], u64); 6] = [
        (&[0], &[1], 2),
        (&[0], &[0, 1], 5),
        (&[0, 1], &[2], 3),
        (&[0, 1, 2], &[3], 4),
        (&[0, 1], &[1, 2, 3], 5),
        (&[0, 2], &[1, 3], 6),
    ];
    for (x, y, n) in cases {
        assert_eq!(exact_collision_probability(x, y, n).unwrap(), enumerate_collision(x, y, n));
    }
    assert_eq!(
        exact_collision_probability(&[0, 1], &[2], 3).unwrap(),
        BigRational::new(1.into(), 9.into())
    );
}

#[test]
fn pmf_matches_enumeration() {
    for (l, n) in [(1usize, 4u64), (2, 2), (3, 6), (4, 5), (5, 3)] {
        let pmf = sum_pmf(l, n).unwrap();
        let mut counts = vec![0u64; l * n as usize + 1];
        common::any_labeling(l, n, |f| {
            counts[f.iter().sum::<u64>() as usize] += 1;
            false
        });
        for (t, &c) in counts.iter().enumerate().skip(l) {
            assert_eq!(pmf.count(t as i64), BigUint::from(c), "l={l}, N={n}, t={t}");
        }
    }
}
