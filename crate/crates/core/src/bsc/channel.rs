use crate::bsc::BlockCode;
use crate::error::{Error, Result};
use crate::hypothesis::JointDistribution;
use crate::probability::Probability;
use crate::scalar::Scalar;

/// Environment variable overriding the `2^n` enumeration ceilings.
pub const CEILING_ENV: &str = "PVLAB_ENUM_CEILING";

/// Largest blocklengths accepted by the enumerating routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// [`bsc_joint`]: the exported joint has `M * 2^n` atoms.
    pub joint: usize,
    /// [`crate::bsc::tie_report`]: one pass over `2^n` outputs.
    pub tie: usize,
    /// [`bec_joint`]: the output alphabet has `3^n` labels.
    pub bec: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { joint: 20, tie: 24, bec: 12 }
    }
}

impl Limits {
    /// Packed enumeration works on `u64` outputs.
    pub const HARD_MAX: usize = 63;

    /// Defaults, with both `2^n` ceilings replaced by `PVLAB_ENUM_CEILING`
    /// when it is set to an integer.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(c) = std::env::var(CEILING_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            limits.joint = c.min(Self::HARD_MAX);
            limits.tie = c.min(Self::HARD_MAX);
        }
        limits
    }
}

pub(crate) fn check_ceiling(n: usize, ceiling: usize) -> Result<()> {
    let ceiling = ceiling.min(Limits::HARD_MAX);
    if n > ceiling {
        return Err(Error::BlocklengthTooLarge { n, ceiling });
    }
    Ok(())
}

/// Binary symmetric channel with crossover `0 < p < 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BscParams<T> {
    p: Probability<T>,
}

impl<T: Scalar> BscParams<T> {
    pub fn new(p: Probability<T>) -> Result<Self> {
        let half = T::one() / (T::one() + T::one());
        if *p.value() <= T::zero() || *p.value() >= half {
            return Err(Error::InvalidCrossover(p.value().to_string()));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> &T {
        self.p.value()
    }

    pub fn q(&self) -> T {
        T::one() - self.p.value().clone()
    }

    /// `p^d (1 - p)^(n - d)` for `d = 0..=n`, built by repeated
    /// multiplication by `p / (1 - p)`.
    pub fn distance_weights(&self, n: usize) -> Vec<T> {
        let ratio = self.p().clone() / self.q();
        let mut weights = Vec::with_capacity(n + 1);
        let mut w = num_traits::pow(self.q(), n);
        for _ in 0..=n {
            weights.push(w.clone());
            w = w * ratio.clone();
        }
        weights
    }

    /// `p / (2 (1 - p))`, the constant relating dominated and tied mass.
    pub fn tie_ratio(&self) -> T {
        self.p().clone() / ((T::one() + T::one()) * self.q())
    }
}

/// Uniform prior over the code, memoryless BSC law: atom `(x, y)` carries
/// `p^d(x,y) (1-p)^(n-d(x,y)) / M`.
pub fn bsc_joint<T: Scalar>(code: &BlockCode, params: &BscParams<T>) -> Result<JointDistribution<T>> {
    bsc_joint_with(code, params, &Limits::default())
}

pub fn bsc_joint_with<T: Scalar>(
    code: &BlockCode,
    params: &BscParams<T>,
    limits: &Limits,
) -> Result<JointDistribution<T>> {
    let n = code.n();
    check_ceiling(n, limits.joint)?;
    let prior = T::one() / T::from_count(code.m() as u128);
    let weights: Vec<T> = params.distance_weights(n).into_iter().map(|w| w * prior.clone()).collect();
    let packed: Vec<u64> = code.words().iter().map(|w| w.to_u64().expect("n within ceiling")).collect();

    let outputs = 1u64 << n;
    let y_alphabet: Vec<String> = (0..outputs).map(|y| crate::bsc::Word::from_u64(y, n).to_string()).collect();
    let columns = (0..outputs)
        .map(|y| {
            packed
                .iter()
                .enumerate()
                .map(|(i, x)| (i, weights[(x ^ y).count_ones() as usize].clone()))
                .collect()
        })
        .collect();
    let x_alphabet = code.words().iter().map(|w| w.to_string()).collect();
    JointDistribution::from_columns(x_alphabet, y_alphabet, columns)
}

pub const ERASURE: char = 'e';

/// Uniform prior over the code, memoryless binary erasure channel: each
/// symbol is replaced by `e` with probability `epsilon`. The output alphabet
/// lists all `3^n` strings over `0 < 1 < e` in lexicographic order.
pub fn bec_joint<T: Scalar>(code: &BlockCode, epsilon: &Probability<T>) -> Result<JointDistribution<T>> {
    bec_joint_with(code, epsilon, &Limits::default())
}

pub fn bec_joint_with<T: Scalar>(
    code: &BlockCode,
    epsilon: &Probability<T>,
    limits: &Limits,
) -> Result<JointDistribution<T>> {
    let eps = epsilon.value().clone();
    if eps <= T::zero() || eps >= T::one() {
        return Err(Error::InvalidErasure(eps.to_string()));
    }
    let n = code.n();
    if n > limits.bec {
        return Err(Error::BlocklengthTooLarge { n, ceiling: limits.bec });
    }
    let prior = T::one() / T::from_count(code.m() as u128);
    let keep = T::one() - eps.clone();
    let weights: Vec<T> = (0..=n)
        .map(|k| num_traits::pow(eps.clone(), k) * num_traits::pow(keep.clone(), n - k) * prior.clone())
        .collect();

    let outputs = 3usize.pow(n as u32);
    let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); outputs];
    for (i, word) in code.words().iter().enumerate() {
        for erased in 0u64..(1 << n) {
            let mut index = 0usize;
            for pos in 0..n {
                let digit = if erased >> (n - 1 - pos) & 1 == 1 { 2 } else { word.bit(pos) as usize };
                index = index * 3 + digit;
            }
            columns[index].push((i, weights[erased.count_ones() as usize].clone()));
        }
    }
    let y_alphabet = (0..outputs).map(|idx| ternary_label(idx, n)).collect();
    let x_alphabet = code.words().iter().map(|w| w.to_string()).collect();
    JointDistribution::from_columns(x_alphabet, y_alphabet, columns)
}

fn ternary_label(mut index: usize, n: usize) -> String {
    let mut chars = vec!['0'; n];
    for c in chars.iter_mut().rev() {
        *c = ['0', '1', ERASURE][index % 3];
        index /= 3;
    }
    chars.into_iter().collect()
}
