use serde_json::Value;

use crate::commands::Report;
use crate::Format;

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => csv_table(r),
        Format::Pretty => pretty(r),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted key paths; objects carrying a `pretty` rendering collapse to it.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            if let Some(p) = m.get("pretty") {
                out.push((prefix.to_string(), scalar(p)));
                return;
            }
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), items.join(" ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn csv_table(r: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &r.rows {
        Some(rows) => {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|row| {
                    let mut f = Vec::new();
                    flatten("", row, &mut f);
                    f
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for f in &flat {
                for (k, _) in f {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            w.write_record(&header).expect("in-memory write");
            for f in &flat {
                let rec: Vec<&str> = header
                    .iter()
                    .map(|h| f.iter().find(|(k, _)| k == h).map(|(_, v)| v.as_str()).unwrap_or(""))
                    .collect();
                w.write_record(&rec).expect("in-memory write");
            }
        }
        None => {
            let mut f = Vec::new();
            flatten("", &r.value, &mut f);
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in f {
                w.write_record([k, v]).expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn pretty(r: &Report) -> String {
    let mut f = Vec::new();
    flatten("", &r.value, &mut f);
    let width = f.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in f {
        let pad = width - k.chars().count();
        s.push_str(&format!("{k}{}  {v}\n", " ".repeat(pad)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"a": 1, "b": {"pretty": "x", "coeffs": []}, "c": [1, 2], "d": [{"e": true}]});
        let mut f = Vec::new();
        flatten("", &v, &mut f);
        let keys: Vec<&str> = f.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["a", "b", "c", "d.0.e"]);
        assert_eq!(f[1].1, "x");
        assert_eq!(f[2].1, "1 2");
    }

    #[test]
    fn csv_rows() {
        let r = Report {
            value: json!({}),
            rows: Some(vec![json!({"ell": 3, "count": 8}), json!({"ell": 5, "count": 24})]),
        };
        assert_eq!(csv_table(&r), "ell,count\n3,8\n5,24\n");
    }
}
