//! Independent brute-force oracles and corpora shared by the integration
//! tests. Nothing here calls into the library's bound routines; every value
//! is recomputed from first principles on the full support.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pvlab::bsc::{BlockCode, BscParams};
use pvlab::hypothesis::{build_joint, JointDistribution};
use pvlab::{Probability, Rational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn prob(n: i64, d: i64) -> Probability<Rational> {
    Probability::new(r(n, d)).unwrap()
}

pub fn bsc(n: i64, d: i64) -> BscParams<Rational> {
    BscParams::new(prob(n, d)).unwrap()
}

pub fn pow(base: &Rational, e: usize) -> Rational {
    num_traits::pow(base.clone(), e)
}

pub fn choose(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= r((n - i) as i64, (i + 1) as i64);
    }
    acc
}

/// Dense `mass[x][y]` view of a joint.
pub fn dense(j: &JointDistribution<Rational>) -> Vec<Vec<Rational>> {
    (0..j.x_alphabet().len())
        .map(|x| (0..j.y_alphabet().len()).map(|y| j.mass(x, y)).collect())
        .collect()
}

fn column_sums(m: &[Vec<Rational>]) -> Vec<Rational> {
    let ny = m.first().map_or(0, |row| row.len());
    (0..ny).map(|y| m.iter().fold(Rational::zero(), |acc, row| acc + &row[y])).collect()
}

pub fn oracle_map_error(j: &JointDistribution<Rational>) -> Rational {
    let m = dense(j);
    let ny = j.y_alphabet().len();
    let mut success = Rational::zero();
    for y in 0..ny {
        success += m.iter().map(|row| row[y].clone()).max().unwrap();
    }
    Rational::one() - success
}

/// Tilted posterior of every atom, computed directly as
/// `P(x|y)^theta / sum_u P(u|y)^theta`.
pub fn oracle_tilted(j: &JointDistribution<Rational>, theta: u32) -> Vec<Vec<Option<Rational>>> {
    let m = dense(j);
    let py = column_sums(&m);
    let mut out = vec![vec![None; py.len()]; m.len()];
    for y in 0..py.len() {
        if py[y].is_zero() {
            continue;
        }
        let powers: Vec<Rational> = m.iter().map(|row| pow(&(&row[y] / &py[y]), theta as usize)).collect();
        let norm = powers.iter().fold(Rational::zero(), |a, b| a + b);
        for x in 0..m.len() {
            out[x][y] = Some(&powers[x] / &norm);
        }
    }
    out
}

/// `(1 - alpha) P{ tilted posterior <= alpha }` by direct summation.
pub fn oracle_pv(j: &JointDistribution<Rational>, theta: u32, alpha: &Rational) -> Rational {
    let m = dense(j);
    let tilted = oracle_tilted(j, theta);
    let mut event = Rational::zero();
    for x in 0..m.len() {
        for y in 0..m[x].len() {
            if m[x][y].is_zero() {
                continue;
            }
            if let Some(t) = &tilted[x][y] {
                if t <= alpha {
                    event += &m[x][y];
                }
            }
        }
    }
    (Rational::one() - alpha) * event
}

/// Mass of atoms strictly below their column maximum.
pub fn oracle_strict_dominance(j: &JointDistribution<Rational>) -> Rational {
    let m = dense(j);
    let ny = j.y_alphabet().len();
    let mut total = Rational::zero();
    for y in 0..ny {
        let max = m.iter().map(|row| row[y].clone()).max().unwrap();
        for row in &m {
            if !row[y].is_zero() && row[y] < max {
                total += &row[y];
            }
        }
    }
    total
}

/// `max_gamma P[P(X|Y) <= gamma] - gamma` scanning every candidate gamma in
/// a fine grid plus every posterior value.
pub fn oracle_vh(j: &JointDistribution<Rational>) -> Rational {
    let m = dense(j);
    let py = column_sums(&m);
    let mut atoms = Vec::new();
    for row in &m {
        for y in 0..py.len() {
            if !row[y].is_zero() {
                atoms.push((&row[y] / &py[y], row[y].clone()));
            }
        }
    }
    let mut candidates: Vec<Rational> = atoms.iter().map(|(p, _)| p.clone()).collect();
    candidates.extend((0..=64).map(|k| r(k, 64)));
    candidates
        .iter()
        .map(|g| atoms.iter().filter(|(p, _)| p <= g).fold(Rational::zero(), |a, (_, m)| a + m) - g)
        .max()
        .unwrap()
}

/// Random joint with `|X| <= max_x`, `|Y| <= max_y` and small integer
/// weights, normalized exactly. Some atoms are zero; all-zero columns are
/// allowed.
pub fn random_joint(rng: &mut impl Rng, max_x: usize, max_y: usize) -> JointDistribution<Rational> {
    loop {
        let nx = rng.gen_range(1..=max_x);
        let ny = rng.gen_range(1..=max_y);
        let weights: Vec<Vec<i64>> = (0..nx)
            .map(|_| (0..ny).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=6) }).collect())
            .collect();
        let total: i64 = weights.iter().flatten().sum();
        if total == 0 {
            continue;
        }
        let entries = weights.iter().enumerate().flat_map(|(x, row)| {
            row.iter().enumerate().map(move |(y, w)| (format!("x{x}"), format!("y{y}"), prob(*w, total)))
        });
        return build_joint(entries).unwrap();
    }
}

/// One instance of the random code corpus.
pub struct CorpusCode {
    pub code: BlockCode,
    pub p: (i64, i64),
}

pub const CROSSOVERS: [(i64, i64); 3] = [(1, 10), (1, 4), (2, 5)];

/// `count` seeded random codes with `n <= 14` and `2 <= M <= 8`.
pub fn code_corpus(count: usize, seed: u64) -> Vec<CorpusCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=14usize);
            let m = rng.gen_range(2..=8usize.min(1 << n));
            CorpusCode { code: BlockCode::random(n, m, &mut rng).unwrap(), p: CROSSOVERS[i % 3] }
        })
        .collect()
}

/// Exact `(a_n, b_n, delta_n)` by enumerating outputs and comparing channel
/// likelihoods `p^d (1-p)^(n-d)` directly.
pub fn oracle_ties(code: &BlockCode, p: &Rational) -> (Rational, Rational, Rational) {
    let n = code.n();
    let q = Rational::one() - p;
    let words: Vec<u64> = code.words().iter().map(|w| w.to_u64().unwrap()).collect();
    let mm = r(words.len() as i64, 1);
    let (mut a, mut b, mut delta) = (Rational::zero(), Rational::zero(), Rational::zero());
    for y in 0..1u64 << n {
        let lik: Vec<Rational> = words
            .iter()
            .map(|x| {
                let d = (x ^ y).count_ones() as usize;
                pow(p, d) * pow(&q, n - d)
            })
            .collect();
        let best = lik.iter().max().unwrap().clone();
        let winners = lik.iter().filter(|l| **l == best).count();
        a += &lik.iter().fold(Rational::zero(), |s, l| s + l) - &best;
        for l in &lik {
            if *l < best {
                b += l;
            } else if winners > 1 {
                delta += l;
            }
        }
    }
    (a / &mm, b / &mm, delta / mm)
}
