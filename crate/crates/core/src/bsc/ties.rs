//! Exact tie / no-tie decomposition of MAP decoding over the BSC.
//!
//! For `p < 1/2` the posterior order of codewords given `y` is the reverse of
//! their Hamming distance order, so every event reduces to distance
//! comparisons. One pass over all `2^n` outputs tallies, per codeword and
//! per distance `d`, how many outputs fall in each event; probabilities are
//! then exact sums `count[d] * p^d (1-p)^(n-d)`.

use rayon::prelude::*;

use crate::bsc::channel::check_ceiling;
use crate::bsc::pairwise::pair_tie_probability;
use crate::bsc::{BlockCode, BscParams, Limits, Word};
use crate::error::Result;
use crate::probability::{sum, Probability};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CodewordTies<T> {
    /// `P(Y in T_i | x_i)`: the sent word ties with its best competitor.
    pub tie: Probability<T>,
    /// `P(Y in N_i | x_i)`: some competitor is strictly closer.
    pub notie: Probability<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TieReport<T> {
    pub n: usize,
    pub m: usize,
    /// Minimum decoding error probability.
    pub a_n: Probability<T>,
    /// Probability that the sent word is strictly beaten.
    pub b_n: Probability<T>,
    /// Probability of a tie with the best competitor.
    pub delta_n: Probability<T>,
    pub per_codeword: Vec<CodewordTies<T>>,
}

impl<T: Scalar> TieReport<T> {
    /// `b_n <= a_n <= b_n + delta_n`.
    pub fn sandwich_holds(&self) -> bool {
        let (a, b, d) = (self.a_n.value(), self.b_n.value(), self.delta_n.value());
        b <= a && *a <= b.clone() + d.clone()
    }

    pub fn gap_check(&self, params: &BscParams<T>) -> GapCheck<T> {
        let lhs = self.b_n.value().clone();
        let rhs = params.tie_ratio() * self.delta_n.value().clone() / T::from_count(self.m as u128 - 1);
        GapCheck {
            holds: lhs >= rhs,
            slack: lhs.clone() - rhs.clone(),
            lhs: Probability::from_computed(lhs),
            rhs: Probability::from_computed(rhs),
        }
    }
}

/// `b_n` against `p / (2(1-p)) * delta_n / (M - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCheck<T> {
    pub lhs: Probability<T>,
    pub rhs: Probability<T>,
    pub holds: bool,
    pub slack: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct DistanceCounts {
    /// Outputs whose nearest codeword sits at distance `d`.
    nearest: Vec<u64>,
    /// `tie[i][d]`: outputs at distance `d` from word `i` that tie.
    tie: Vec<Vec<u64>>,
    notie: Vec<Vec<u64>>,
}

impl DistanceCounts {
    fn new(n: usize, m: usize) -> Self {
        Self { nearest: vec![0; n + 1], tie: vec![vec![0; n + 1]; m], notie: vec![vec![0; n + 1]; m] }
    }

    fn merge(mut self, other: Self) -> Self {
        add_into(&mut self.nearest, &other.nearest);
        for (a, b) in self.tie.iter_mut().zip(&other.tie) {
            add_into(a, b);
        }
        for (a, b) in self.notie.iter_mut().zip(&other.notie) {
            add_into(a, b);
        }
        self
    }
}

fn add_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

fn count_distances(code: &BlockCode) -> DistanceCounts {
    let n = code.n();
    let m = code.m();
    let packed: Vec<u64> = code.words().iter().map(|w| w.to_u64().expect("n checked")).collect();
    let outputs = 1u64 << n;
    if n >= 20 {
        log::info!("enumerating 2^{n} outputs against {m} codewords");
    }
    (0..outputs)
        .into_par_iter()
        .fold(
            || (DistanceCounts::new(n, m), vec![0usize; m]),
            |(mut counts, mut dist), y| {
                let mut best = usize::MAX;
                let mut best_count = 0;
                for (d, x) in dist.iter_mut().zip(&packed) {
                    *d = (x ^ y).count_ones() as usize;
                    if *d < best {
                        best = *d;
                        best_count = 1;
                    } else if *d == best {
                        best_count += 1;
                    }
                }
                counts.nearest[best] += 1;
                for (i, &d) in dist.iter().enumerate() {
                    if d > best {
                        counts.notie[i][d] += 1;
                    } else if best_count > 1 {
                        counts.tie[i][d] += 1;
                    }
                }
                (counts, dist)
            },
        )
        .map(|(counts, _)| counts)
        .reduce(|| DistanceCounts::new(n, m), DistanceCounts::merge)
}

fn weigh<T: Scalar>(counts: &[u64], weights: &[T]) -> T {
    sum(counts
        .iter()
        .zip(weights)
        .filter(|(c, _)| **c > 0)
        .map(|(c, w)| T::from_count(*c as u128) * w.clone()))
}

/// Exact `a_n`, `b_n`, `delta_n` and the per-codeword tie / no-tie
/// probabilities of a code under a uniform prior.
pub fn tie_report<T: Scalar>(code: &BlockCode, params: &BscParams<T>) -> Result<TieReport<T>> {
    tie_report_with(code, params, &Limits::default())
}

pub fn tie_report_with<T: Scalar>(code: &BlockCode, params: &BscParams<T>, limits: &Limits) -> Result<TieReport<T>> {
    check_ceiling(code.n(), limits.tie)?;
    let counts = count_distances(code);
    let weights = params.distance_weights(code.n());
    let prior = T::one() / T::from_count(code.m() as u128);

    let per_codeword: Vec<CodewordTies<T>> = counts
        .tie
        .iter()
        .zip(&counts.notie)
        .map(|(tie, notie)| CodewordTies {
            tie: Probability::from_computed(weigh(tie, &weights)),
            notie: Probability::from_computed(weigh(notie, &weights)),
        })
        .collect();
    let delta = prior.clone() * sum(per_codeword.iter().map(|c| c.tie.value().clone()));
    let b = prior.clone() * sum(per_codeword.iter().map(|c| c.notie.value().clone()));
    let a = T::one() - prior * weigh(&counts.nearest, &weights);
    Ok(TieReport {
        n: code.n(),
        m: code.m(),
        a_n: Probability::from_computed(a),
        b_n: Probability::from_computed(b),
        delta_n: Probability::from_computed(delta),
        per_codeword,
    })
}

pub fn theorem1_gap_check<T: Scalar>(code: &BlockCode, params: &BscParams<T>) -> Result<GapCheck<T>> {
    Ok(tie_report(code, params)?.gap_check(params))
}

/// Pairs `(i, y)` with `x_i` among the nearest codewords to `y`; for
/// `p < 1/2` these are exactly the atoms where `x_i` is a MAP estimate.
pub fn nearest_codeword_pairs(code: &BlockCode, limits: &Limits) -> Result<Vec<(usize, Word)>> {
    check_ceiling(code.n(), limits.joint)?;
    let n = code.n();
    let mut out = Vec::new();
    for y in 0..1u64 << n {
        let yw = Word::from_u64(y, n);
        let dist: Vec<usize> = code.words().iter().map(|x| x.distance(&yw)).collect();
        let best = *dist.iter().min().expect("code is nonempty");
        out.extend(dist.iter().enumerate().filter(|(_, d)| **d == best).map(|(i, _)| (i, yw.clone())));
    }
    Ok(out)
}

/// Union bound over competitors: `sum_{j != i} P(d(x_i, Y) = d(x_j, Y) | x_i)`
/// for each codeword `i`. Not a probability; the sum may exceed one.
pub fn tie_cover_bounds<T: Scalar>(code: &BlockCode, params: &BscParams<T>) -> Vec<T> {
    let words = code.words();
    (0..words.len())
        .map(|i| {
            sum((0..words.len()).filter(|&j| j != i).map(|j| {
                pair_tie_probability(words[i].distance(&words[j]), params)
                    .expect("codewords are distinct")
                    .into_inner()
            }))
        })
        .collect()
}
