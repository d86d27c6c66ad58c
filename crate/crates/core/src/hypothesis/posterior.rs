use crate::error::{Error, Result};
use crate::hypothesis::JointDistribution;
use crate::probability::{sum, Probability};
use crate::scalar::Scalar;

/// The law of `X` given one observed output `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorColumn<T> {
    pub y: usize,
    /// `(x, P(x | y))` for every x with positive posterior, sorted by x.
    pub entries: Vec<(usize, Probability<T>)>,
    pub max_value: Probability<T>,
    /// All x attaining `max_value`; the MAP estimates for this output.
    pub argmax_set: Vec<usize>,
}

impl<T: Scalar> PosteriorColumn<T> {
    fn from_weights(y: usize, weights: Vec<(usize, T)>) -> Self {
        let total = sum(weights.iter().map(|(_, w)| w.clone()));
        let entries: Vec<(usize, Probability<T>)> = weights
            .into_iter()
            .map(|(x, w)| (x, Probability::from_computed(w / total.clone())))
            .collect();
        let max_value = entries
            .iter()
            .map(|(_, p)| p)
            .fold(None::<&Probability<T>>, |best, p| match best {
                Some(b) if b >= p => Some(b),
                _ => Some(p),
            })
            .cloned()
            .expect("posterior column has at least one entry");
        let argmax_set = entries.iter().filter(|(_, p)| *p == max_value).map(|(x, _)| *x).collect();
        Self { y, entries, max_value, argmax_set }
    }

    pub fn get(&self, x: usize) -> Probability<T> {
        self.entries
            .iter()
            .find(|(xi, _)| *xi == x)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Probability::zero)
    }

    /// Natural log of the posterior of `x`; display only.
    pub fn log_posterior(&self, x: usize) -> f64 {
        self.get(x).value().ln()
    }
}

/// `P(x | y) = P(x, y) / P_Y(y)` for one output with positive marginal.
pub fn posterior<T: Scalar>(joint: &JointDistribution<T>, y: usize) -> Result<PosteriorColumn<T>> {
    joint.check_y(y)?;
    Ok(PosteriorColumn::from_weights(y, joint.column(y).to_vec()))
}

/// Posterior raised to the power `theta` and renormalized.
///
/// Masses are divided by the column maximum before exponentiation, which
/// keeps floating-point evaluation away from underflow and leaves the exact
/// result unchanged.
pub fn tilted_posterior<T: Scalar>(joint: &JointDistribution<T>, theta: u32, y: usize) -> Result<PosteriorColumn<T>> {
    if theta == 0 {
        return Err(Error::InvalidTheta);
    }
    joint.check_y(y)?;
    Ok(PosteriorColumn::from_weights(y, tilted_weights(joint.column(y), theta)))
}

/// `(P(x, y) / max_u P(u, y))^theta` for each atom of a column.
pub(crate) fn tilted_weights<T: Scalar>(column: &[(usize, T)], theta: u32) -> Vec<(usize, T)> {
    let max = column_max(column);
    column
        .iter()
        .map(|(x, m)| (*x, num_traits::pow(m.clone() / max.clone(), theta as usize)))
        .collect()
}

pub(crate) fn column_max<T: Scalar>(column: &[(usize, T)]) -> T {
    column
        .iter()
        .map(|(_, m)| m)
        .fold(T::zero(), |acc, m| if *m > acc { m.clone() } else { acc })
}
