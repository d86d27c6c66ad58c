//! Closed forms for a single pair of codewords `x_i, x_j` at Hamming
//! distance `d`, transmitted `x_i`.
//!
//! An output `y` is described by how many of the `d` disagreeing positions
//! it flips toward `x_j` (call it `a`) and how many of the `n - d` agreeing
//! positions it flips (`b`). Then `d(x_i, y) = a + b` and
//! `d(x_j, y) = d - a + b`, so ties need `2a = d` and domination by `x_j`
//! needs `2a > d`. Writing `d = 2l` (even) or `d = 2l - 1` (odd) recovers the
//! indexing used by the counting formulas below.

use num_integer::Integer;

use crate::bsc::BscParams;
use crate::error::{Error, Result};
use crate::probability::{sum, Probability};
use crate::scalar::Scalar;

/// Binomial coefficient, zero when `k > n`; `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1); cancel the common factor
        // first so only the final value has to fit.
        let (num, den) = ((n - i) as u128, i as u128 + 1);
        let g = acc.gcd(&den);
        acc = (acc / g).checked_mul(num / (den / g))?;
    }
    Some(acc)
}

fn binom(n: usize, k: usize) -> Result<u128> {
    binomial(n as u64, k as u64).ok_or_else(|| Error::RangeError(format!("C({n}, {k}) overflows u128")))
}

/// Binomial coefficient for possibly negative lower index.
fn binom_signed(n: usize, k: i64) -> Result<u128> {
    if k < 0 {
        Ok(0)
    } else {
        binom(n, k as usize)
    }
}

fn check_pair(n: usize, d: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::RangeError(format!("need 1 <= d <= n, got d = {d}, n = {n}")));
    }
    Ok(())
}

/// `P(d(x_i, Y) = d(x_j, Y) | x_i)` for a pair at distance `d`:
/// `C(2l, l) p^l (1-p)^l` when `d = 2l`, zero when `d` is odd.
///
/// Independent of the blocklength; positions where the words agree change
/// both distances equally.
pub fn pair_tie_probability<T: Scalar>(d: usize, params: &BscParams<T>) -> Result<Probability<T>> {
    if d == 0 {
        return Err(Error::RangeError("pair distance must be positive".into()));
    }
    if d % 2 == 1 {
        return Ok(Probability::zero());
    }
    let l = d / 2;
    let value = T::from_count(binom(d, l)?) * num_traits::pow(params.p().clone() * params.q(), l);
    Ok(Probability::from_computed(value))
}

/// Number of `y` with `d(x_i, y) = d(x_j, y) = l + m` for a pair at distance
/// `2l`: `C(2l, l) C(n - 2l, m)`.
pub fn count_equidistant(n: usize, l: usize, m: usize) -> Result<u128> {
    if l == 0 || 2 * l > n || m > n - 2 * l {
        return Err(Error::RangeError(format!("need 1 <= l, 2l <= n, m <= n - 2l; got n = {n}, l = {l}, m = {m}")));
    }
    Ok(binom(2 * l, l)? * binom(n - 2 * l, m)?)
}

/// `(l, largest admissible m)` for the dominated-count indexing.
fn dominated_range(n: usize, d: usize) -> (usize, usize) {
    if d.is_multiple_of(2) {
        (d / 2, n - d)
    } else {
        (d.div_ceil(2), n - d)
    }
}

/// Number of `y` with `d(x_i, y) = k` and `d(x_i, y) > d(x_j, y)`:
/// `sum_{2a > d} C(d, a) C(n - d, k - a)`.
pub fn dominated_at_distance(n: usize, d: usize, k: usize) -> Result<u128> {
    check_pair(n, d)?;
    let mut total: u128 = 0;
    for a in (d / 2 + 1)..=d.min(k) {
        total += binom(d, a)? * binom(n - d, k - a)?;
    }
    Ok(total)
}

/// Number of `y` with `d(x_i, y) = l + 1 + m` and `d(x_i, y) > d(x_j, y)`,
/// where `d = 2l` with `0 <= m <= n - 2l`, or `d = 2l - 1` with
/// `0 <= m <= n - 2l + 1`.
///
/// For even `d` this is `sum_{l'=0}^{min(m, l-1)} C(2l, l+l'+1) C(n-2l, m-l')`.
/// For odd `d` the flip count `a` toward `x_j` ranges over `a >= l`, so the
/// sum runs from `l' = -1`:
/// `sum_{l'=-1}^{min(m, l)} C(2l-1, l+l'+1) C(n-2l+1, m-l')`.
/// [`count_dominated_closed_form`] keeps the sum from `l' = 0`.
pub fn count_dominated(n: usize, d: usize, m: usize) -> Result<u128> {
    check_pair(n, d)?;
    let (l, m_max) = dominated_range(n, d);
    if m > m_max {
        return Err(Error::RangeError(format!("m = {m} exceeds {m_max} for n = {n}, d = {d}")));
    }
    dominated_at_distance(n, d, l + 1 + m)
}

/// The counting sums with `l'` starting at zero.
///
/// Exact for even `d`. For odd `d` it omits the outputs with
/// `d(x_i, y) - d(x_j, y) = 1`, undercounting by
/// `C(2l-1, l) C(n-2l+1, m+1)`; the `l' = 0` term still bounds `Omega`
/// from below.
pub fn count_dominated_closed_form(n: usize, d: usize, m: usize) -> Result<u128> {
    check_pair(n, d)?;
    let (l, m_max) = dominated_range(n, d);
    if m > m_max {
        return Err(Error::RangeError(format!("m = {m} exceeds {m_max} for n = {n}, d = {d}")));
    }
    let mut total = 0;
    if d.is_multiple_of(2) {
        for lp in 0..=m.min(l - 1) {
            total += binom(2 * l, l + lp + 1)? * binom(n - 2 * l, m - lp)?;
        }
    } else {
        for lp in 0..=m.min(l) {
            total += binom(2 * l - 1, l + lp + 1)? * binom_signed(n + 1 - 2 * l, m as i64 - lp as i64)?;
        }
    }
    Ok(total)
}

/// Exact `P(Y in Omega_ij | x_i) = P(d(x_i, Y) > d(x_j, Y) | x_i)` summed
/// over every distance class `k = d(x_i, y)`.
pub fn omega_exact_probability<T: Scalar>(n: usize, d: usize, params: &BscParams<T>) -> Result<Probability<T>> {
    check_pair(n, d)?;
    let weights = params.distance_weights(n);
    let mut terms = Vec::new();
    for (k, w) in weights.into_iter().enumerate() {
        let count = dominated_at_distance(n, d, k)?;
        if count > 0 {
            terms.push(T::from_count(count) * w);
        }
    }
    Ok(Probability::from_computed(sum(terms)))
}

/// Same probability computed only from the `d` disagreeing positions:
/// `sum_{2a > d} C(d, a) p^a (1-p)^(d-a)`.
pub fn omega_by_flips<T: Scalar>(d: usize, params: &BscParams<T>) -> Result<Probability<T>> {
    let weights = params.distance_weights(d);
    let mut total = T::zero();
    for (a, w) in weights.into_iter().enumerate().skip(d / 2 + 1) {
        total = total + T::from_count(binom(d, a)?) * w;
    }
    Ok(Probability::from_computed(total))
}

/// The single-layer lower bound on `P(Omega_ij | x_i)`:
/// `C(2l, l+1) p^(l+1) (1-p)^(l-1)` for `d = 2l` and
/// `C(2l-1, l+1) p^(l+1) (1-p)^(l-2)` for `d = 2l - 1`.
///
/// It is zero whenever the binomial vanishes (`d = 1`).
pub fn omega_lower_bound<T: Scalar>(d: usize, params: &BscParams<T>) -> Result<Probability<T>> {
    if d == 0 {
        return Err(Error::RangeError("pair distance must be positive".into()));
    }
    let (coeff, agree) = if d.is_multiple_of(2) {
        let l = d / 2;
        (binom(d, l + 1)?, l - 1)
    } else {
        let l = d.div_ceil(2);
        if l + 1 > d {
            return Ok(Probability::zero());
        }
        (binom(d, l + 1)?, l - 2)
    };
    let flips = d - agree;
    let value =
        T::from_count(coeff) * num_traits::pow(params.p().clone(), flips) * num_traits::pow(params.q(), agree);
    Ok(Probability::from_computed(value))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseBound<T> {
    pub n: usize,
    pub d: usize,
    pub p: Probability<T>,
    pub b_prob: Probability<T>,
    pub omega_exact: Probability<T>,
    pub omega_lower: Probability<T>,
}

impl<T: Scalar> PairwiseBound<T> {
    /// `omega_exact >= p / (2(1-p)) * b_prob`.
    pub fn ratio_check(&self, params: &BscParams<T>) -> bool {
        *self.omega_exact.value() >= params.tie_ratio() * self.b_prob.value().clone()
    }

    pub fn lower_bound_holds(&self) -> bool {
        self.omega_lower <= self.omega_exact
    }
}

pub fn pairwise_bound<T: Scalar>(n: usize, d: usize, params: &BscParams<T>) -> Result<PairwiseBound<T>> {
    check_pair(n, d)?;
    Ok(PairwiseBound {
        n,
        d,
        p: Probability::from_computed(params.p().clone()),
        b_prob: pair_tie_probability(d, params)?,
        omega_exact: omega_exact_probability(n, d, params)?,
        omega_lower: omega_lower_bound(d, params)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;

    fn params(n: i64, d: i64) -> BscParams<Rational> {
        BscParams::new(Probability::new(ratio(n, d)).unwrap()).unwrap()
    }

    fn p(n: i64, d: i64) -> Probability<Rational> {
        Probability::new(ratio(n, d)).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 3), Some(0));
        assert_eq!(binomial(24, 12), Some(2_704_156));
        assert_eq!(
            binomial(128, 64).unwrap(),
            binomial(127, 63).unwrap() + binomial(127, 64).unwrap()
        );
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn tie_probability_examples() {
        let q = params(1, 4);
        assert_eq!(pair_tie_probability(1, &q).unwrap(), p(0, 1));
        assert_eq!(pair_tie_probability(2, &q).unwrap(), p(3, 8));
        assert_eq!(pair_tie_probability(4, &q).unwrap(), p(27, 128));
        assert!(pair_tie_probability(0, &q).is_err());
    }

    #[test]
    fn equidistant_examples() {
        assert_eq!(count_equidistant(2, 1, 0).unwrap(), 2);
        assert_eq!(count_equidistant(4, 1, 1).unwrap(), 4);
        assert_eq!(count_equidistant(6, 2, 2).unwrap(), 6);
        assert!(count_equidistant(2, 2, 0).is_err());
        assert!(count_equidistant(4, 1, 3).is_err());
    }

    #[test]
    fn dominated_examples() {
        assert_eq!(count_dominated(2, 2, 0).unwrap(), 1);
        assert_eq!(count_dominated(3, 3, 0).unwrap(), 1);
        assert_eq!(count_dominated(4, 2, 1).unwrap(), 2);
        assert!(count_dominated(4, 2, 3).is_err());
        assert!(count_dominated(4, 5, 0).is_err());
    }

    #[test]
    fn closed_form_undercount_for_odd_distance() {
        // n = 5, d = 3 (l = 2), m = 0: a = 2 contributes C(3,2) C(2,1) = 6.
        assert_eq!(count_dominated_closed_form(5, 3, 0).unwrap(), 1);
        assert_eq!(count_dominated(5, 3, 0).unwrap(), 7);
        // Even distances agree.
        assert_eq!(count_dominated_closed_form(6, 4, 1).unwrap(), count_dominated(6, 4, 1).unwrap());
    }

    #[test]
    fn omega_examples() {
        let q = params(1, 4);
        assert_eq!(omega_exact_probability(2, 2, &q).unwrap(), p(1, 16));
        // 000 vs 111: two or three flips, 3 p^2 (1-p) + p^3.
        assert_eq!(omega_exact_probability(3, 3, &q).unwrap(), p(5, 32));
        assert_eq!(omega_lower_bound(2, &q).unwrap(), p(1, 16));
        assert_eq!(omega_lower_bound(1, &q).unwrap(), p(0, 1));
        assert_eq!(omega_lower_bound(3, &q).unwrap(), p(1, 64));
        for n in 3..10 {
            assert_eq!(omega_exact_probability(n, 3, &q).unwrap(), omega_by_flips(3, &q).unwrap());
        }
    }

    #[test]
    fn pairwise_record() {
        let q = params(1, 4);
        let b = pairwise_bound(2, 2, &q).unwrap();
        assert_eq!((b.b_prob.clone(), b.omega_exact.clone(), b.omega_lower.clone()), (p(3, 8), p(1, 16), p(1, 16)));
        assert!(b.ratio_check(&q));
        assert!(b.lower_bound_holds());
        assert!(pairwise_bound(3, 4, &q).is_err());
    }
}
