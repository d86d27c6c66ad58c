//! Lower bounds on the minimum error probability of multihypothesis testing.
//!
//! Every routine reduces to sums of joint masses over atom sets defined by
//! comparisons of posteriors. Columns with zero output marginal hold no
//! atoms and never participate.

use crate::error::{Error, Result};
use crate::hypothesis::posterior::{column_max, tilted_weights};
use crate::hypothesis::JointDistribution;
use crate::probability::{sum, Probability};
use crate::scalar::Scalar;

/// Minimum (MAP) error probability, `1 - sum_y max_x P(x, y)`.
///
/// Written through the column maxima, so it does not depend on how ties
/// between MAP candidates are broken.
pub fn map_error_probability<T: Scalar>(joint: &JointDistribution<T>) -> Probability<T> {
    Probability::from_computed(T::one() - map_success_mass(joint))
}

fn map_success_mass<T: Scalar>(joint: &JointDistribution<T>) -> T {
    sum(joint.live_columns().map(|(_, col)| column_max(col)))
}

/// Atoms `(x, y)` whose posterior equals the column maximum: the pairs where
/// `x` is one of the MAP estimates for `y`. Ties put several x into one
/// column.
pub fn map_equality_set<T: Scalar>(joint: &JointDistribution<T>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (y, col) in joint.live_columns() {
        let max = column_max(col);
        out.extend(col.iter().filter(|(_, m)| *m == max).map(|(x, _)| (*x, y)));
    }
    out
}

/// `P{ (x, y) : P^(theta)(x | y) <= alpha }`, the event inside the tilted
/// Poor-Verdú bound.
pub fn pv_event_mass<T: Scalar>(joint: &JointDistribution<T>, theta: u32, alpha: &Probability<T>) -> Result<Probability<T>> {
    if theta == 0 {
        return Err(Error::InvalidTheta);
    }
    let alpha = alpha.value();
    let mut mass = T::zero();
    for (_, col) in joint.live_columns() {
        let weights = tilted_weights(col, theta);
        let threshold = alpha.clone() * sum(weights.iter().map(|(_, w)| w.clone()));
        for ((_, m), (_, w)) in col.iter().zip(&weights) {
            if *w <= threshold {
                mass = mass + m.clone();
            }
        }
    }
    Ok(Probability::from_computed(mass))
}

/// Tilted Poor-Verdú bound `(1 - alpha) * P{ P^(theta)(x | y) <= alpha }`.
///
/// The comparison is non-strict. `theta = 1` is the untilted bound.
pub fn generalized_pv_bound<T: Scalar>(
    joint: &JointDistribution<T>,
    theta: u32,
    alpha: &Probability<T>,
) -> Result<Probability<T>> {
    let event = pv_event_mass(joint, theta, alpha)?;
    Ok(Probability::from_computed(alpha.complement().into_inner() * event.into_inner()))
}

/// Limit of the tilted bound as `theta` grows: the mass of atoms whose
/// posterior is strictly below the column maximum.
///
/// Equals `map_error_probability` exactly when every column has a unique
/// maximizer, and is strictly smaller otherwise.
pub fn asymptotic_pv_bound<T: Scalar>(joint: &JointDistribution<T>) -> Probability<T> {
    let mut mass = T::zero();
    for (_, col) in joint.live_columns() {
        let max = column_max(col);
        for (_, m) in col {
            if *m < max {
                mass = mass + m.clone();
            }
        }
    }
    Probability::from_computed(mass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizationConfig {
    /// Extra thetas past the candidate over which the event set must stay put.
    pub window: u32,
    /// Largest theta accepted as the start of a stable run.
    pub theta_cap: u32,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        Self { window: 8, theta_cap: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stabilization<T> {
    pub theta0: u32,
    pub value: Probability<T>,
}

/// Sweeps `theta = 1, 2, ...` until the event `{P^(theta) <= alpha}` coincides
/// with the strict-dominance set of [`asymptotic_pv_bound`] and stays equal
/// over the probe window.
///
/// Requires `alpha < 1 / |support(P_X)|`; above that the maximizing atoms
/// can themselves fall under the threshold.
pub fn theta_stabilization<T: Scalar>(joint: &JointDistribution<T>, alpha: &Probability<T>) -> Result<Stabilization<T>> {
    theta_stabilization_with(joint, alpha, StabilizationConfig::default())
}

pub fn theta_stabilization_with<T: Scalar>(
    joint: &JointDistribution<T>,
    alpha: &Probability<T>,
    config: StabilizationConfig,
) -> Result<Stabilization<T>> {
    let support = joint.support_size();
    let a = alpha.value().clone();
    if a.clone() * T::from_count(support as u128) >= T::one() {
        return Err(Error::AlphaTooLarge { alpha: a.to_string(), support });
    }

    struct Column<T> {
        ratios: Vec<T>,
        powers: Vec<T>,
        dominated: Vec<bool>,
    }
    let mut columns: Vec<Column<T>> = joint
        .live_columns()
        .map(|(_, col)| {
            let max = column_max(col);
            let ratios: Vec<T> = col.iter().map(|(_, m)| m.clone() / max.clone()).collect();
            let dominated = col.iter().map(|(_, m)| *m < max).collect();
            Column { powers: vec![T::one(); ratios.len()], ratios, dominated }
        })
        .collect();

    let mut run_start: Option<u32> = None;
    let mut theta: u32 = 0;
    loop {
        theta += 1;
        if run_start.is_none() && theta > config.theta_cap {
            return Err(Error::NoStabilization(config.theta_cap));
        }
        let mut matches = true;
        for column in &mut columns {
            for (pw, r) in column.powers.iter_mut().zip(&column.ratios) {
                *pw = pw.clone() * r.clone();
            }
            let threshold = a.clone() * sum(column.powers.iter().cloned());
            matches &= column
                .powers
                .iter()
                .zip(&column.dominated)
                .all(|(pw, dom)| (*pw <= threshold) == *dom);
        }
        match (matches, run_start) {
            (true, None) => run_start = Some(theta),
            (true, Some(start)) if theta - start >= config.window => {
                return Ok(Stabilization { theta0: start, value: asymptotic_pv_bound(joint) });
            }
            (true, Some(_)) => {}
            (false, _) => run_start = None,
        }
        if config.window == 0 {
            if let Some(start) = run_start {
                return Ok(Stabilization { theta0: start, value: asymptotic_pv_bound(joint) });
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerduHan<T> {
    pub value: Probability<T>,
    pub gamma_star: Probability<T>,
}

/// `max_{gamma >= 0} P[P(X | Y) <= gamma] - gamma`.
///
/// The distribution function is a right-continuous step function, so the
/// objective falls with slope -1 between jumps and the maximum sits on
/// `{0}` or a posterior value. Ties go to the smallest gamma.
pub fn verdu_han_bound<T: Scalar>(joint: &JointDistribution<T>) -> VerduHan<T> {
    let mut atoms: Vec<(T, T)> = Vec::new();
    for (y, col) in joint.live_columns() {
        let py = joint.p_y(y);
        atoms.extend(col.iter().map(|(_, m)| (m.clone() / py.clone(), m.clone())));
    }
    atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("posteriors are comparable"));

    let mut best_value = T::zero();
    let mut best_gamma = T::zero();
    let mut cdf = T::zero();
    let mut i = 0;
    while i < atoms.len() {
        let gamma = atoms[i].0.clone();
        while i < atoms.len() && atoms[i].0 == gamma {
            cdf = cdf + atoms[i].1.clone();
            i += 1;
        }
        let objective = cdf.clone() - gamma.clone();
        if objective > best_value {
            best_value = objective;
            best_gamma = gamma;
        }
    }
    VerduHan {
        value: Probability::from_computed(best_value),
        gamma_star: Probability::from_computed(best_gamma),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedVerduHan<T> {
    pub value: Probability<T>,
    pub gamma_star: Probability<T>,
    /// Optimal output law, indexed by y.
    pub q_star: Vec<Probability<T>>,
}

/// Generalized Verdú-Han bound evaluated at its known maximizers
/// `gamma* = sum_y max_x P(x, y)` and `Q*(y) = max_x P(x, y) / gamma*`.
pub fn generalized_vh_at_optimum<T: Scalar>(joint: &JointDistribution<T>) -> Result<GeneralizedVerduHan<T>> {
    let gamma = map_success_mass(joint);
    if gamma <= T::zero() {
        return Err(Error::DegeneratePe1);
    }
    let mut q_star = vec![T::zero(); joint.y_alphabet().len()];
    for (y, col) in joint.live_columns() {
        q_star[y] = column_max(col) / gamma.clone();
    }
    let mut event = T::zero();
    for (y, col) in joint.live_columns() {
        for (_, m) in col {
            // For floats `m / (m / gamma)` can round just above gamma on
            // the maximizing atoms; those must stay inside the event.
            let ratio = m.clone() / q_star[y].clone();
            if ratio <= gamma || (!T::EXACT && ratio.approx_eq(&gamma)) {
                event = event + m.clone();
            }
        }
    }
    Ok(GeneralizedVerduHan {
        value: Probability::from_computed(event - gamma.clone()),
        gamma_star: Probability::from_computed(gamma),
        q_star: q_star.into_iter().map(Probability::from_computed).collect(),
    })
}

/// `P(y | x) / P_Y(y)` in the linear domain.
pub fn information_density<T: Scalar>(joint: &JointDistribution<T>, x: usize, y: usize) -> Result<T> {
    joint.check_x(x)?;
    joint.check_y(y)?;
    Ok(joint.mass(x, y) / (joint.p_x(x).clone() * joint.p_y(y).clone()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub p_e: Probability<T>,
    pub asymptotic_pv: Probability<T>,
    pub vh_value: Probability<T>,
    pub vh_gamma_star: Probability<T>,
    pub gvh_value: Probability<T>,
    pub gvh_gamma_star: Probability<T>,
    pub gvh_q_star: Vec<Probability<T>>,
}

pub fn bound_report<T: Scalar>(joint: &JointDistribution<T>) -> Result<BoundReport<T>> {
    let vh = verdu_han_bound(joint);
    let gvh = generalized_vh_at_optimum(joint)?;
    Ok(BoundReport {
        p_e: map_error_probability(joint),
        asymptotic_pv: asymptotic_pv_bound(joint),
        vh_value: vh.value,
        vh_gamma_star: vh.gamma_star,
        gvh_value: gvh.value,
        gvh_gamma_star: gvh.gamma_star,
        gvh_q_star: gvh.q_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::build_joint;
    use crate::scalar::ratio;
    use crate::Rational;

    fn p(n: i64, d: i64) -> Probability<Rational> {
        Probability::new(ratio(n, d)).unwrap()
    }

    fn noiseless() -> JointDistribution<Rational> {
        build_joint([("a", "a", p(1, 2)), ("b", "b", p(1, 2))]).unwrap()
    }

    fn independent() -> JointDistribution<Rational> {
        build_joint([
            ("a", "0", p(1, 4)),
            ("a", "1", p(1, 4)),
            ("b", "0", p(1, 4)),
            ("b", "1", p(1, 4)),
        ])
        .unwrap()
    }

    #[test]
    fn map_error_examples() {
        assert_eq!(map_error_probability(&noiseless()), p(0, 1));
        assert_eq!(map_error_probability(&independent()), p(1, 2));
    }

    #[test]
    fn alpha_extremes() {
        let j = independent();
        assert_eq!(generalized_pv_bound(&j, 3, &p(1, 1)).unwrap(), p(0, 1));
        assert_eq!(generalized_pv_bound(&j, 3, &p(0, 1)).unwrap(), p(0, 1));
        assert_eq!(generalized_pv_bound(&j, 0, &p(1, 2)).unwrap_err(), Error::InvalidTheta);
    }

    #[test]
    fn non_strict_threshold_at_boundary_atom() {
        // Uniform posteriors equal 1/2 everywhere: alpha = 1/2 sits on the boundary.
        let j = independent();
        assert_eq!(pv_event_mass(&j, 1, &p(1, 2)).unwrap(), p(1, 1));
        assert_eq!(generalized_pv_bound(&j, 1, &p(1, 2)).unwrap(), p(1, 2));
        assert_eq!(pv_event_mass(&j, 1, &p(49, 100)).unwrap(), p(0, 1));
        // ...while the asymptotic form is strict and counts none of them.
        assert_eq!(asymptotic_pv_bound(&j), p(0, 1));
    }

    #[test]
    fn stabilization_noiseless() {
        let s = theta_stabilization(&noiseless(), &p(1, 3)).unwrap();
        assert_eq!(s.theta0, 1);
        assert_eq!(s.value, p(0, 1));
        assert!(matches!(
            theta_stabilization(&noiseless(), &p(1, 2)),
            Err(Error::AlphaTooLarge { support: 2, .. })
        ));
    }

    #[test]
    fn stabilization_near_tie_needs_large_theta() {
        let eps = ratio(1, 1000);
        let hi = Probability::new(ratio(1, 2) + eps.clone()).unwrap();
        let lo = Probability::new(ratio(1, 2) - eps).unwrap();
        let j = build_joint([("a", "y", hi), ("b", "y", lo.clone())]).unwrap();
        let s = theta_stabilization(&j, &p(1, 3)).unwrap();
        // (499/501)^theta <= (1/3)/(2/3) first holds at theta = 174.
        assert_eq!(s.theta0, 174);
        assert_eq!(s.value, lo);

        let capped = StabilizationConfig { window: 8, theta_cap: 100 };
        assert_eq!(theta_stabilization_with(&j, &p(1, 3), capped).unwrap_err(), Error::NoStabilization(100));
    }

    #[test]
    fn verdu_han_examples() {
        let vh = verdu_han_bound(&noiseless());
        assert_eq!((vh.value, vh.gamma_star), (p(0, 1), p(0, 1)));
        let vh = verdu_han_bound(&independent());
        assert_eq!((vh.value, vh.gamma_star), (p(1, 2), p(1, 2)));
    }

    #[test]
    fn generalized_vh_examples() {
        let g = generalized_vh_at_optimum(&noiseless()).unwrap();
        assert_eq!(g.value, p(0, 1));
        assert_eq!(g.gamma_star, p(1, 1));
        assert_eq!(g.q_star, vec![p(1, 2), p(1, 2)]);
        let g = generalized_vh_at_optimum(&independent()).unwrap();
        assert_eq!((g.value, g.gamma_star), (p(1, 2), p(1, 2)));
        assert_eq!(g.q_star, vec![p(1, 2), p(1, 2)]);
    }

    #[test]
    fn information_density_examples() {
        let j = independent();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(information_density(&j, x, y).unwrap(), ratio(1, 1));
            }
        }
        let j = noiseless();
        assert_eq!(information_density(&j, 0, 0).unwrap(), ratio(2, 1));
        assert_eq!(information_density(&j, 0, 1).unwrap(), ratio(0, 1));
    }
}
