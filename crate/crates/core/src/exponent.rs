//! Blocklength sweeps over code families and error-exponent diagnostics.
//!
//! All rates use natural logarithms and are derived from exact values via
//! [`Scalar::ln`], which evaluates `ln(num) - ln(den)` for rationals and so
//! stays accurate for probabilities far below `f64` range.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bsc::{tie_report_with, BlockCode, BscParams, Limits, Word};
use crate::error::{Error, Result};
use crate::probability::Probability;
use crate::scalar::Scalar;

/// A sequence of codes indexed by blocklength.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// `{0^n, 1^n}`.
    Antipodal,
    /// `m` distinct uniform words, drawn from a stream keyed by `(seed, n)`.
    Random { m: usize, seed: u64 },
}

impl FamilySpec {
    pub fn codewords(&self) -> usize {
        match self {
            FamilySpec::Antipodal => 2,
            FamilySpec::Random { m, .. } => *m,
        }
    }
}

pub fn generate_family(spec: &FamilySpec, n: usize) -> Result<BlockCode> {
    if n == 0 {
        return Err(Error::RangeError("blocklength must be positive".into()));
    }
    match *spec {
        FamilySpec::Antipodal => BlockCode::new(vec![Word::zeros(n), Word::ones(n)]),
        FamilySpec::Random { m, seed } => {
            if m < 2 {
                return Err(Error::TooFewCodewords(m));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            BlockCode::random(n, m, &mut rng)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentRow<T> {
    pub n: usize,
    pub m: usize,
    pub a_n: Probability<T>,
    pub b_n: Probability<T>,
    pub delta_n: Probability<T>,
    pub rate_a: f64,
    pub rate_b: f64,
    /// `+inf` when `delta_n = 0`.
    pub rate_delta: f64,
    /// `(1/n) ln(a_n / b_n)`.
    pub gap: f64,
    /// `(1/n) ln M`.
    pub rate_cap: f64,
}

impl<T: Scalar> ExponentRow<T> {
    /// `a_n / b_n <= 1 + (2(1-p)/p)(M - 1)`, decided without logarithms.
    pub fn certificate_holds(&self, params: &BscParams<T>) -> bool {
        let two = T::one() + T::one();
        let factor = T::one() + two * params.q() / params.p().clone() * T::from_count(self.m as u128 - 1);
        *self.a_n.value() <= self.b_n.value().clone() * factor
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSeries<T> {
    pub params: BscParams<T>,
    /// Sorted by strictly increasing `n`.
    pub rows: Vec<ExponentRow<T>>,
}

pub const CSV_HEADER: &str = "n,M,a_n,b_n,delta_n,rate_a,rate_b,rate_delta,gap,rate_cap";

impl<T: Scalar> ExponentSeries<T> {
    /// One line per row under [`CSV_HEADER`]; probabilities in exact form,
    /// rates (nats per symbol) to 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.m,
                r.a_n.value(),
                r.b_n.value(),
                r.delta_n.value(),
                format_significant(r.rate_a),
                format_significant(r.rate_b),
                format_significant(r.rate_delta),
                format_significant(r.gap),
                format_significant(r.rate_cap),
            );
        }
        out
    }
}

/// Decimal rendering with 12 significant digits; infinities print as `inf`.
pub fn format_significant(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.11}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn rate(value: f64, n: usize) -> f64 {
    if value == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        -value / n as f64
    }
}

pub fn exponent_series<T: Scalar>(
    spec: &FamilySpec,
    params: &BscParams<T>,
    n_grid: &[usize],
) -> Result<ExponentSeries<T>> {
    exponent_series_with(spec, params, n_grid, &Limits::default())
}

pub fn exponent_series_with<T: Scalar>(
    spec: &FamilySpec,
    params: &BscParams<T>,
    n_grid: &[usize],
    limits: &Limits,
) -> Result<ExponentSeries<T>> {
    let mut grid = n_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() {
        return Err(Error::EmptySeries);
    }
    let rows = grid
        .par_iter()
        .map(|&n| {
            let code = generate_family(spec, n)?;
            let report = tie_report_with(&code, params, limits)?;
            let (ln_a, ln_b, ln_d) = (report.a_n.value().ln(), report.b_n.value().ln(), report.delta_n.value().ln());
            Ok(ExponentRow {
                n,
                m: code.m(),
                rate_a: rate(ln_a, n),
                rate_b: rate(ln_b, n),
                rate_delta: rate(ln_d, n),
                gap: (ln_a - ln_b) / n as f64,
                rate_cap: (code.m() as f64).ln() / n as f64,
                a_n: report.a_n,
                b_n: report.b_n,
                delta_n: report.delta_n,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentSeries { params: params.clone(), rows })
}

/// `E(0) = -(1/4) ln(4p(1-p))`, the BSC reliability function at rate zero.
pub fn zero_rate_exponent_reference<T: Scalar>(params: &BscParams<T>) -> f64 {
    let four = T::from_count(4);
    -0.25 * (four * params.p().clone() * params.q()).ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateGapSummary {
    pub max_gap: f64,
    pub max_rate_cap: f64,
    /// Smallest blocklength in the inspected window.
    pub window_n_min: usize,
    pub window_rows: usize,
    /// `max_gap <= max_rate_cap + ln(2(1-p)/p) / window_n_min`.
    pub theorem1_satisfied: bool,
}

/// Gap diagnostics over the largest-n half of the series.
pub fn rate_gap_series<T: Scalar>(series: &ExponentSeries<T>) -> Result<RateGapSummary> {
    rate_gap_series_from(series, series.rows.len() / 2)
}

/// Gap diagnostics over `series.rows[start..]`.
pub fn rate_gap_series_from<T: Scalar>(series: &ExponentSeries<T>, start: usize) -> Result<RateGapSummary> {
    if series.rows.is_empty() {
        return Err(Error::EmptySeries);
    }
    let window = &series.rows[start.min(series.rows.len() - 1)..];
    let max_gap = window.iter().map(|r| r.gap).fold(f64::NEG_INFINITY, f64::max);
    let max_rate_cap = window.iter().map(|r| r.rate_cap).fold(f64::NEG_INFINITY, f64::max);
    let n_min = window[0].n;
    let two = T::one() + T::one();
    let slack = (two * series.params.q() / series.params.p().clone()).ln() / n_min as f64;
    Ok(RateGapSummary {
        max_gap,
        max_rate_cap,
        window_n_min: n_min,
        window_rows: window.len(),
        theorem1_satisfied: max_gap <= max_rate_cap + slack,
    })
}
