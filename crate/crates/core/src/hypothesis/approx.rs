//! Log-domain evaluation of the tilted bound for real `theta >= 1`.
//!
//! Only meant for plotting smooth theta sweeps. Membership in the event set
//! is decided up to [`COMPARISON_TOLERANCE`] in log space, so atoms that sit
//! on the threshold may land on either side. Contract-bearing code uses the
//! exact integer-theta path in [`super::bounds`].

use crate::hypothesis::JointDistribution;
use crate::scalar::Scalar;

pub const COMPARISON_TOLERANCE: f64 = 1e-12;

/// `(1 - alpha) * P{ P^(theta)(x | y) <= alpha }` for real `theta`.
pub fn generalized_pv_bound_approx<T: Scalar>(joint: &JointDistribution<T>, theta: f64, alpha: f64) -> f64 {
    assert!(theta >= 1.0, "theta must be at least 1");
    let log_alpha = alpha.ln();
    let mut event = 0.0;
    for y in 0..joint.y_alphabet().len() {
        let col = joint.column(y);
        if col.is_empty() {
            continue;
        }
        let scaled: Vec<f64> = col.iter().map(|(_, m)| theta * m.ln()).collect();
        let peak = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let log_norm = peak + scaled.iter().map(|s| (s - peak).exp()).sum::<f64>().ln();
        for ((_, m), s) in col.iter().zip(&scaled) {
            if s - log_norm <= log_alpha + COMPARISON_TOLERANCE {
                event += m.approx();
            }
        }
    }
    (1.0 - alpha) * event
}
