use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::OutputArgs;

/// Writes `text` to `--out` or stdout.
pub fn emit(args: &OutputArgs, text: &str) -> Result<()> {
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

/// Flattens a JSON document into `key,value` lines with dotted paths.
pub fn flat_csv(value: &Value) -> String {
    let mut out = String::from("key,value\n");
    flatten("", value, &mut out);
    out
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}
