use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::probability::{is_one, sum, Probability};
use crate::scalar::Scalar;

/// Finite joint law of a hypothesis `X` and an observation `Y`.
///
/// Masses are stored column-wise: for each output `y` only the atoms with
/// positive mass are kept, sorted by x-index.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    x_alphabet: Vec<String>,
    y_alphabet: Vec<String>,
    columns: Vec<Vec<(usize, T)>>,
    p_x: Vec<T>,
    p_y: Vec<T>,
}

/// Builds a joint from `(x, y, mass)` triples, assigning indices in order of
/// first appearance.
pub fn build_joint<T, S>(entries: impl IntoIterator<Item = (S, S, Probability<T>)>) -> Result<JointDistribution<T>>
where
    T: Scalar,
    S: Into<String>,
{
    let mut x_alphabet = Vec::new();
    let mut y_alphabet = Vec::new();
    let mut x_index = HashMap::new();
    let mut y_index = HashMap::new();
    let mut indexed = Vec::new();
    for (x, y, mass) in entries {
        let (x, y) = (x.into(), y.into());
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptyLabel);
        }
        let xi = *x_index.entry(x.clone()).or_insert_with(|| {
            x_alphabet.push(x.clone());
            x_alphabet.len() - 1
        });
        let yi = *y_index.entry(y.clone()).or_insert_with(|| {
            y_alphabet.push(y.clone());
            y_alphabet.len() - 1
        });
        indexed.push((xi, yi, mass.into_inner()));
    }
    JointDistribution::from_indexed(x_alphabet, y_alphabet, indexed)
}

impl<T: Scalar> JointDistribution<T> {
    /// Builds a joint over declared alphabets. Every entry must reference a
    /// declared label; labels without entries carry zero mass.
    pub fn with_alphabets<S: AsRef<str>>(
        x_alphabet: Vec<String>,
        y_alphabet: Vec<String>,
        entries: impl IntoIterator<Item = (S, S, T)>,
    ) -> Result<Self> {
        let x_index = index_alphabet(&x_alphabet)?;
        let y_index = index_alphabet(&y_alphabet)?;
        let mut indexed = Vec::new();
        for (x, y, mass) in entries {
            let (x, y) = (x.as_ref(), y.as_ref());
            let xi = *x_index.get(x).ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
            let yi = *y_index.get(y).ok_or_else(|| Error::UnknownLabel(y.to_string()))?;
            indexed.push((xi, yi, mass));
        }
        Self::from_indexed(x_alphabet, y_alphabet, indexed)
    }

    pub(crate) fn from_indexed(
        x_alphabet: Vec<String>,
        y_alphabet: Vec<String>,
        entries: Vec<(usize, usize, T)>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); y_alphabet.len()];
        for (xi, yi, mass) in entries {
            if !seen.insert((xi, yi)) {
                return Err(Error::DuplicateEntry(x_alphabet[xi].clone(), y_alphabet[yi].clone()));
            }
            if mass < T::zero() {
                return Err(Error::NegativeMass(
                    x_alphabet[xi].clone(),
                    y_alphabet[yi].clone(),
                    mass.to_string(),
                ));
            }
            if mass > T::zero() {
                columns[yi].push((xi, mass));
            }
        }
        for column in &mut columns {
            column.sort_by_key(|(x, _)| *x);
        }
        Self::from_columns(x_alphabet, y_alphabet, columns)
    }

    /// `columns[y]` lists the positive atoms `(x, mass)` of output `y`,
    /// sorted by x with no repeats.
    pub(crate) fn from_columns(
        x_alphabet: Vec<String>,
        y_alphabet: Vec<String>,
        columns: Vec<Vec<(usize, T)>>,
    ) -> Result<Self> {
        debug_assert_eq!(columns.len(), y_alphabet.len());
        let mut p_x = vec![T::zero(); x_alphabet.len()];
        let mut p_y = Vec::with_capacity(columns.len());
        for column in &columns {
            let mut col_sum = T::zero();
            for (x, mass) in column {
                p_x[*x] = p_x[*x].clone() + mass.clone();
                col_sum = col_sum + mass.clone();
            }
            p_y.push(col_sum);
        }
        let total = sum(p_y.iter().cloned());
        if total.is_zero() {
            return Err(Error::EmptySupport);
        }
        if !is_one(&total) {
            return Err(Error::MassNotNormalized(total.to_string()));
        }
        Ok(Self { x_alphabet, y_alphabet, columns, p_x, p_y })
    }

    pub fn x_alphabet(&self) -> &[String] {
        &self.x_alphabet
    }

    pub fn y_alphabet(&self) -> &[String] {
        &self.y_alphabet
    }

    pub fn x_index(&self, label: &str) -> Option<usize> {
        self.x_alphabet.iter().position(|l| l == label)
    }

    pub fn y_index(&self, label: &str) -> Option<usize> {
        self.y_alphabet.iter().position(|l| l == label)
    }

    /// Positive atoms of column `y` as `(x, P(x, y))`.
    pub fn column(&self, y: usize) -> &[(usize, T)] {
        &self.columns[y]
    }

    pub fn mass(&self, x: usize, y: usize) -> T {
        self.columns[y]
            .binary_search_by_key(&x, |(xi, _)| *xi)
            .map(|i| self.columns[y][i].1.clone())
            .unwrap_or_else(|_| T::zero())
    }

    pub fn p_x(&self, x: usize) -> &T {
        &self.p_x[x]
    }

    pub fn p_y(&self, y: usize) -> &T {
        &self.p_y[y]
    }

    /// Indices of hypotheses with positive prior, i.e. the support of `P_X`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.x_alphabet.len()).filter(|&x| self.p_x[x] > T::zero()).collect()
    }

    pub fn support_size(&self) -> usize {
        self.p_x.iter().filter(|m| **m > T::zero()).count()
    }

    /// Every positive atom as `(x, y, mass)`.
    pub fn atoms(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(y, col)| col.iter().map(move |(x, m)| (*x, y, m)))
    }

    /// Outputs with positive marginal.
    pub(crate) fn live_columns(&self) -> impl Iterator<Item = (usize, &[(usize, T)])> + '_ {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, col)| !col.is_empty())
            .map(|(y, col)| (y, col.as_slice()))
    }

    pub(crate) fn check_y(&self, y: usize) -> Result<()> {
        if y >= self.y_alphabet.len() {
            return Err(Error::IndexOutOfRange { index: y, len: self.y_alphabet.len() });
        }
        if self.columns[y].is_empty() {
            return Err(Error::ZeroMarginal(self.y_alphabet[y].clone()));
        }
        Ok(())
    }

    pub(crate) fn check_x(&self, x: usize) -> Result<()> {
        if x >= self.x_alphabet.len() {
            return Err(Error::IndexOutOfRange { index: x, len: self.x_alphabet.len() });
        }
        if self.p_x[x] <= T::zero() {
            return Err(Error::ZeroMarginal(self.x_alphabet[x].clone()));
        }
        Ok(())
    }

    /// Converts every mass into another scalar type. The total is re-checked
    /// in the target type.
    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<JointDistribution<U>> {
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(x, m)| (*x, f(m))).collect())
            .collect();
        JointDistribution::from_columns(self.x_alphabet.clone(), self.y_alphabet.clone(), columns)
    }
}

fn index_alphabet(alphabet: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(alphabet.len());
    for (i, label) in alphabet.iter().enumerate() {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if index.insert(label.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(index)
}
