//! File formats and JSON renderings of the exact results.
//!
//! Probabilities are always written as exact strings (`num/den`, or a bare
//! integer), each paired with a `<name>_decimal` field holding an `f64`
//! approximation for display.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bsc::{BscParams, PairwiseBound, TieReport};
use crate::error::{Error, Result};
use crate::hypothesis::{BoundReport, JointDistribution};
use crate::probability::{parse_rational, Probability};
use crate::scalar::{format_rational, Scalar};
use crate::Rational;

/// On-disk form of a joint distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionFile {
    pub x_alphabet: Vec<String>,
    pub y_alphabet: Vec<String>,
    /// `[x, y, probability]` triples.
    pub mass: Vec<(String, String, String)>,
}

impl DistributionFile {
    pub fn from_joint(joint: &JointDistribution<Rational>) -> Self {
        let mass = joint
            .atoms()
            .map(|(x, y, m)| (joint.x_alphabet()[x].clone(), joint.y_alphabet()[y].clone(), format_rational(m)))
            .collect();
        Self { x_alphabet: joint.x_alphabet().to_vec(), y_alphabet: joint.y_alphabet().to_vec(), mass }
    }

    pub fn into_joint(self) -> Result<JointDistribution<Rational>> {
        let mut entries = Vec::with_capacity(self.mass.len());
        for (i, (x, y, prob)) in self.mass.into_iter().enumerate() {
            let value = parse_rational(&prob)
                .map_err(|e| Error::Format(format!("mass entry {i} ({x}, {y}): {e}")))?;
            entries.push((x, y, value));
        }
        JointDistribution::with_alphabets(self.x_alphabet, self.y_alphabet, entries)
    }
}

/// Parses a distribution document; JSON syntax errors carry line and column.
pub fn read_distribution(text: &str) -> Result<JointDistribution<Rational>> {
    let file: DistributionFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_joint()
}

pub fn write_distribution(joint: &JointDistribution<Rational>) -> String {
    serde_json::to_string_pretty(&DistributionFile::from_joint(joint)).expect("plain strings serialize")
}

/// Exact string form of any rational, including values outside `[0, 1]`.
pub fn exact(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

fn decimal(value: &Rational) -> Value {
    json!(value.approx())
}

/// Inserts `name` (exact) and `name_decimal` (display).
pub fn put_rational(map: &mut Map<String, Value>, name: &str, value: &Rational) {
    map.insert(name.to_string(), exact(value));
    map.insert(format!("{name}_decimal"), decimal(value));
}

pub fn put_probability(map: &mut Map<String, Value>, name: &str, value: &Probability<Rational>) {
    put_rational(map, name, value.value());
}

pub fn bound_report_json(joint: &JointDistribution<Rational>, report: &BoundReport<Rational>) -> Value {
    let mut map = Map::new();
    put_probability(&mut map, "p_e", &report.p_e);
    put_probability(&mut map, "asymptotic_pv", &report.asymptotic_pv);
    put_probability(&mut map, "vh_value", &report.vh_value);
    put_probability(&mut map, "vh_gamma_star", &report.vh_gamma_star);
    put_probability(&mut map, "gvh_value", &report.gvh_value);
    put_probability(&mut map, "gvh_gamma_star", &report.gvh_gamma_star);
    let q_star: Map<String, Value> = report
        .gvh_q_star
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.value().is_zero())
        .map(|(y, q)| (joint.y_alphabet()[y].clone(), exact(q.value())))
        .collect();
    map.insert("gvh_q_star".into(), Value::Object(q_star));
    Value::Object(map)
}

pub fn tie_report_json(report: &TieReport<Rational>, params: &BscParams<Rational>) -> Value {
    let mut map = Map::new();
    map.insert("n".into(), json!(report.n));
    map.insert("M".into(), json!(report.m));
    put_rational(&mut map, "p", params.p());
    put_probability(&mut map, "a_n", &report.a_n);
    put_probability(&mut map, "b_n", &report.b_n);
    put_probability(&mut map, "delta_n", &report.delta_n);
    let per: Vec<Value> = report
        .per_codeword
        .iter()
        .map(|c| {
            let mut m = Map::new();
            put_probability(&mut m, "tie", &c.tie);
            put_probability(&mut m, "notie", &c.notie);
            Value::Object(m)
        })
        .collect();
    map.insert("per_codeword".into(), Value::Array(per));
    Value::Object(map)
}

pub fn pairwise_json(bound: &PairwiseBound<Rational>, params: &BscParams<Rational>) -> Value {
    let mut map = Map::new();
    map.insert("n".into(), json!(bound.n));
    map.insert("d".into(), json!(bound.d));
    put_probability(&mut map, "p", &bound.p);
    put_probability(&mut map, "b_prob", &bound.b_prob);
    put_probability(&mut map, "omega_exact", &bound.omega_exact);
    put_probability(&mut map, "omega_lower", &bound.omega_lower);
    map.insert("omega_lower_le_exact".into(), json!(bound.lower_bound_holds()));
    map.insert("ratio_check".into(), json!(bound.ratio_check(params)));
    Value::Object(map)
}
