//! Deterministic text output. Floats always carry 17 significant digits, so
//! a value read back parses to the same bits.

use serde::Serialize;
use serde_json::Value;

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn escape(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => out.push_str(&i.to_string()),
            (_, Some(u)) => out.push_str(&u.to_string()),
            _ => out.push_str(&float(n.as_f64().expect("number"))),
        },
        Value::String(s) => out.push_str(&escape(s)),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            // Short numeric rows stay on one line.
            if items.len() <= 4 && items.iter().all(|i| i.is_number() || i.is_string() || i.is_null()) {
                out.push('[');
                for (k, i) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(i, indent, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (k, i) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(i, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            // Sorted explicitly: the map's own order depends on serde_json features.
            let mut entries: Vec<_> = map.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            out.push_str("{\n");
            for (k, (key, val)) in entries.into_iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&escape(key));
                out.push_str(": ");
                write_value(val, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
    }
}

/// Integral values that are floats in the data model are written as floats:
/// the conversion goes through `Value`, which keeps them as `f64`.
pub fn json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("outputs are plain data");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 2.0, -1e-300, 6.02214076e23, std::f64::consts::PI] {
            let s = float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let digits: String = s.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
            assert_eq!(digits.len(), 17);
        }
    }

    #[test]
    fn json_is_valid_and_stable() {
        let v = serde_json::json!({"b": [1.0, 2.5], "a": {"n": 3, "s": "x\"y"}, "e": []});
        let text = json(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(text, json(&v));
        assert!(text.contains("2.5000000000000000e0"));
    }
}
