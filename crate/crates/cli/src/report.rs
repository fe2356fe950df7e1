//! Report rendering. JSON objects use sorted keys, so identical runs produce
//! identical bytes.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Output {
    Json,
    Table,
}

pub fn emit(report: &Value, mode: Output) -> String {
    match mode {
        Output::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Output::Table => table(report),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" ")
            }
        }
        other => other.to_string(),
    }
}

fn columns(rows: &[Vec<String>], out: &mut String) {
    let n = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if c + 1 == r.len() {
                    s.clone()
                } else {
                    format!("{s:<w$}", w = widths[c])
                }
            })
            .collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
}

/// Arrays of objects become aligned tables; everything else `key: value`.
fn table(report: &Value) -> String {
    let mut out = String::new();
    let Some(obj) = report.as_object() else {
        return scalar(report) + "\n";
    };
    let mut sections: Vec<(&String, &Vec<Value>)> = Vec::new();
    for (k, v) in obj {
        match v {
            Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
                sections.push((k, xs))
            }
            Value::Object(m) => {
                for (k2, v2) in m {
                    out.push_str(&format!("{k}.{k2}: {}\n", scalar(v2)));
                }
            }
            _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
        }
    }
    for (k, xs) in sections {
        out.push_str(&format!("\n{k}\n"));
        let keys: Vec<String> = match xs.first() {
            Some(Value::Object(m)) => m.keys().cloned().collect(),
            _ => vec![],
        };
        let mut rows = Vec::new();
        if !keys.is_empty() {
            rows.push(keys.clone());
        }
        for x in xs {
            rows.push(match x {
                Value::Object(m) => keys
                    .iter()
                    .map(|key| m.get(key).map(scalar).unwrap_or_default())
                    .collect(),
                other => vec![scalar(other)],
            });
        }
        columns(&rows, &mut out);
    }
    out
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<String, Value>>(),
    )
}
