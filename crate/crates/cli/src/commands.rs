use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pvlab::bsc::{self, BlockCode, Limits};
use pvlab::exponent::{self, FamilySpec};
use pvlab::hypothesis::{self, JointDistribution};
use pvlab::io::{self, put_probability, put_rational};
use pvlab::{Error, ExactBscParams, ExactProbability, Rational};
use serde_json::{json, Map, Value};

use crate::output::{emit, flat_csv, json};
use crate::{Command, Family, Format, OutputArgs};

/// Runs one subcommand; `Ok(false)` means a checked inequality failed.
pub fn run(command: Command, out: &OutputArgs) -> Result<bool> {
    match command {
        Command::Bounds { dist, theta, alpha } => bounds(&dist, &theta, &alpha, out),
        Command::SweepTheta { dist, alpha, theta_max } => sweep_theta(&dist, &alpha, theta_max, out),
        Command::Bsc { code, p } => bsc_report(&code, &p, out),
        Command::Pairwise { n, d, p } => pairwise(n, d, &p, out),
        Command::Exponent { family, m, seed, p, n_min, n_max, n_step } => {
            let spec = match family {
                Family::Antipodal => FamilySpec::Antipodal,
                Family::Random => FamilySpec::Random { m, seed },
            };
            exponent_cmd(spec, &p, n_min, n_max, n_step, out)
        }
        Command::Verify { code, p } => verify(&code, &p, out),
        Command::Joint { code, p, epsilon } => joint(&code, p.as_deref(), epsilon.as_deref(), out),
    }
}

fn probability(flag: &str, text: &str) -> Result<ExactProbability> {
    ExactProbability::parse(text).with_context(|| format!("--{flag} {text:?}"))
}

fn crossover(text: &str) -> Result<ExactBscParams> {
    Ok(ExactBscParams::new(probability("p", text)?)?)
}

fn read_joint(path: &Path) -> Result<JointDistribution<Rational>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::read_distribution(&text).with_context(|| format!("in {}", path.display()))
}

fn read_code(path: &Path) -> Result<BlockCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    BlockCode::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn write_value(value: &Value, out: &OutputArgs) -> Result<()> {
    match out.format {
        Format::Json => emit(out, &json(value)),
        Format::Csv => emit(out, &flat_csv(value)),
    }
}

fn bounds(path: &Path, thetas: &[u32], alphas: &[String], out: &OutputArgs) -> Result<bool> {
    let joint = read_joint(path)?;
    let report = hypothesis::bound_report(&joint)?;
    let mut value = io::bound_report_json(&joint, &report);
    let pe = &report.p_e;
    let mut holds = report.asymptotic_pv <= *pe && report.vh_value <= *pe && report.gvh_value == *pe;

    if !thetas.is_empty() && alphas.is_empty() {
        bail!("--theta needs at least one --alpha");
    }
    let thetas = if thetas.is_empty() { vec![1] } else { thetas.to_vec() };
    let mut tilted = Vec::new();
    for a in alphas {
        let alpha = probability("alpha", a)?;
        for &theta in &thetas {
            let bound = hypothesis::generalized_pv_bound(&joint, theta, &alpha)?;
            holds &= bound <= *pe;
            let mut entry = Map::new();
            entry.insert("theta".into(), json!(theta));
            put_probability(&mut entry, "alpha", &alpha);
            put_probability(&mut entry, "value", &bound);
            tilted.push(Value::Object(entry));
        }
    }
    let map = value.as_object_mut().expect("report is an object");
    if !tilted.is_empty() {
        map.insert("generalized_pv".into(), Value::Array(tilted));
    }
    map.insert("all_bounds_below_p_e".into(), json!(holds));
    write_value(&value, out)?;
    Ok(holds)
}

fn sweep_theta(path: &Path, alpha: &str, theta_max: u32, out: &OutputArgs) -> Result<bool> {
    if theta_max == 0 {
        bail!("--theta-max must be at least 1");
    }
    let joint = read_joint(path)?;
    let alpha = probability("alpha", alpha)?;
    let support = joint.support_size();
    if alpha.value().clone() * Rational::from_integer(support.into()) >= Rational::from_integer(1.into()) {
        return Err(Error::AlphaTooLarge { alpha: alpha.to_string(), support }.into());
    }
    let pe = hypothesis::map_error_probability(&joint);
    let asymptotic = hypothesis::asymptotic_pv_bound(&joint);
    let mut rows = Vec::new();
    let mut holds = true;
    for theta in 1..=theta_max {
        let event = hypothesis::pv_event_mass(&joint, theta, &alpha)?;
        let bound = hypothesis::generalized_pv_bound(&joint, theta, &alpha)?;
        holds &= bound <= pe;
        rows.push((theta, event, bound));
    }
    match out.format {
        Format::Csv => {
            let mut text = String::from("theta,event_mass,bound\n");
            for (theta, event, bound) in &rows {
                text.push_str(&format!("{theta},{event},{bound}\n"));
            }
            text.push_str(&format!("asymptotic,{asymptotic},{asymptotic}\n"));
            emit(out, &text)?;
        }
        Format::Json => {
            let theta0 = match hypothesis::theta_stabilization(&joint, &alpha) {
                Ok(s) => json!(s.theta0),
                Err(Error::NoStabilization(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let rows: Vec<Value> = rows
                .iter()
                .map(|(theta, event, bound)| {
                    let mut m = Map::new();
                    m.insert("theta".into(), json!(theta));
                    put_probability(&mut m, "event_mass", event);
                    put_probability(&mut m, "bound", bound);
                    Value::Object(m)
                })
                .collect();
            let mut m = Map::new();
            put_probability(&mut m, "alpha", &alpha);
            m.insert("rows".into(), Value::Array(rows));
            put_probability(&mut m, "asymptotic", &asymptotic);
            put_probability(&mut m, "p_e", &pe);
            m.insert("theta0".into(), theta0);
            emit(out, &json(&Value::Object(m)))?;
        }
    }
    Ok(holds)
}

/// Tie report JSON with the sandwich and gap certificates attached.
fn certified_report(code: &BlockCode, params: &ExactBscParams, limits: &Limits) -> Result<(Value, bool)> {
    let report = bsc::tie_report_with(code, params, limits)?;
    let gap = report.gap_check(params);
    let sandwich = report.sandwich_holds();
    let mut value = io::tie_report_json(&report, params);
    let map = value.as_object_mut().expect("report is an object");
    let mut g = Map::new();
    put_probability(&mut g, "lhs", &gap.lhs);
    put_probability(&mut g, "rhs", &gap.rhs);
    put_rational(&mut g, "slack", &gap.slack);
    g.insert("holds".into(), json!(gap.holds));
    map.insert("sandwich_holds".into(), json!(sandwich));
    map.insert("gap_check".into(), Value::Object(g));
    Ok((value, sandwich && gap.holds))
}

fn bsc_report(path: &Path, p: &str, out: &OutputArgs) -> Result<bool> {
    let code = read_code(path)?;
    let params = crossover(p)?;
    let (value, holds) = certified_report(&code, &params, &Limits::from_env())?;
    write_value(&value, out)?;
    Ok(holds)
}

fn pairwise(n: usize, d: usize, p: &str, out: &OutputArgs) -> Result<bool> {
    let params = crossover(p)?;
    let bound = bsc::pairwise_bound(n, d, &params)?;
    write_value(&io::pairwise_json(&bound, &params), out)?;
    Ok(bound.lower_bound_holds() && bound.ratio_check(&params))
}

fn verify(path: &Path, p: &str, out: &OutputArgs) -> Result<bool> {
    let code = read_code(path)?;
    let params = crossover(p)?;
    let (mut value, mut holds) = certified_report(&code, &params, &Limits::from_env())?;
    let words = code.words();
    let mut pairs = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = words[i].distance(&words[j]);
            let bound = bsc::pairwise_bound(code.n(), d, &params)?;
            holds &= bound.lower_bound_holds() && bound.ratio_check(&params);
            let mut entry = io::pairwise_json(&bound, &params);
            let m = entry.as_object_mut().expect("pairwise is an object");
            m.insert("i".into(), json!(i));
            m.insert("j".into(), json!(j));
            pairs.push(entry);
        }
    }
    let map = value.as_object_mut().expect("report is an object");
    map.insert("pairs".into(), Value::Array(pairs));
    map.insert("all_hold".into(), json!(holds));
    write_value(&value, out)?;
    Ok(holds)
}

fn rate_value(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(exponent::format_significant(v))
    }
}

fn exponent_cmd(
    spec: FamilySpec,
    p: &str,
    n_min: usize,
    n_max: usize,
    n_step: usize,
    out: &OutputArgs,
) -> Result<bool> {
    if n_step == 0 {
        bail!("--n-step must be positive");
    }
    let params = crossover(p)?;
    let grid: Vec<usize> = (n_min..=n_max).step_by(n_step).collect();
    let series = exponent::exponent_series_with(&spec, &params, &grid, &Limits::from_env())?;
    let gap = exponent::rate_gap_series(&series)?;
    let certificates = series.rows.iter().all(|r| r.certificate_holds(&params));
    let holds = gap.theorem1_satisfied && certificates;

    let mut summary = Map::new();
    summary.insert(
        "family".into(),
        match spec {
            FamilySpec::Antipodal => json!({"kind": "antipodal"}),
            FamilySpec::Random { m, seed } => json!({"kind": "random", "M": m, "seed": seed}),
        },
    );
    put_rational(&mut summary, "p", params.p());
    summary.insert("max_gap".into(), json!(gap.max_gap));
    summary.insert("max_rate_cap".into(), json!(gap.max_rate_cap));
    summary.insert("window_n_min".into(), json!(gap.window_n_min));
    summary.insert("window_rows".into(), json!(gap.window_rows));
    summary.insert("theorem1_satisfied".into(), json!(gap.theorem1_satisfied));
    summary.insert("ratio_certificates_hold".into(), json!(certificates));
    summary.insert("e0_reference".into(), json!(exponent::zero_rate_exponent_reference(&params)));

    match out.format {
        Format::Csv => {
            emit(out, &series.to_csv())?;
            eprint!("{}", json(&Value::Object(summary)));
        }
        Format::Json => {
            let rows: Vec<Value> = series
                .rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    m.insert("n".into(), json!(r.n));
                    m.insert("M".into(), json!(r.m));
                    put_probability(&mut m, "a_n", &r.a_n);
                    put_probability(&mut m, "b_n", &r.b_n);
                    put_probability(&mut m, "delta_n", &r.delta_n);
                    m.insert("rate_a".into(), rate_value(r.rate_a));
                    m.insert("rate_b".into(), rate_value(r.rate_b));
                    m.insert("rate_delta".into(), rate_value(r.rate_delta));
                    m.insert("gap".into(), rate_value(r.gap));
                    m.insert("rate_cap".into(), rate_value(r.rate_cap));
                    Value::Object(m)
                })
                .collect();
            emit(out, &json(&json!({"rows": rows, "summary": summary})))?;
        }
    }
    Ok(holds)
}

fn joint(path: &Path, p: Option<&str>, epsilon: Option<&str>, out: &OutputArgs) -> Result<bool> {
    let code = read_code(path)?;
    let limits = Limits::from_env();
    let joint = match (p, epsilon) {
        (Some(p), None) => bsc::bsc_joint_with(&code, &crossover(p)?, &limits)?,
        (None, Some(e)) => bsc::bec_joint_with(&code, &probability("epsilon", e)?, &limits)?,
        _ => bail!("exactly one of --p and --epsilon is required"),
    };
    if out.format == Format::Csv {
        let mut text = String::from("x,y,mass\n");
        for (x, y, m) in joint.atoms() {
            text.push_str(&format!("{},{},{}\n", joint.x_alphabet()[x], joint.y_alphabet()[y], m));
        }
        emit(out, &text)?;
    } else {
        let mut text = io::write_distribution(&joint);
        text.push('\n');
        emit(out, &text)?;
    }
    Ok(true)
}
