//! Reports are built once as a JSON tree; the text form is rendered from
//! the same tree, so both carry the same numbers.

use std::fmt::Write as _;

use fgap_core::algnum::{AlgebraicNumber, IntPoly, RatInterval, Surd};
use fgap_core::BigRational;
use serde_json::{json, Map, Value};

use crate::format::format_poly_coeffs;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub results: Map<String, Value>,
    pub certificates: Map<String, Value>,
    /// Exit status implied by the report content.
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            config: Map::new(),
            results: Map::new(),
            certificates: Map::new(),
            exit_code: 0,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "certificates": self.certificates,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        render_text(&self.to_json())
    }
}

/// Rounds to 12 significant digits; non-finite values become strings.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn poly(p: &IntPoly) -> Value {
    json!({ "poly": p.to_string(), "coeffs": format_poly_coeffs(p) })
}

pub fn algebraic(a: &AlgebraicNumber) -> Value {
    match a.as_integer() {
        Some(n) => json!({ "exact": n.to_string(), "approx": float(a.to_f64()) }),
        None => json!({ "minpoly": a.minpoly().to_string(), "approx": float(a.to_f64()) }),
    }
}

pub fn surd(s: &Surd) -> Value {
    json!({ "exact": s.describe(), "approx": float(s.to_f64()) })
}

pub fn interval(iv: &RatInterval) -> Value {
    let (lo, hi) = iv.to_f64();
    json!([float(lo), float(hi)])
}

/// YAML-like rendering: one `key: value` per line, nested maps indented,
/// scalar lists inline.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => render_map(&mut out, m, 0),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) if s.is_empty() => "\"\"".to_string(),
        Value::String(s) => s.clone(),
        _ => unreachable!("not a scalar"),
    }
}

fn render_map(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let pad = "  ".repeat(indent);
    for (k, v) in m {
        match v {
            Value::Object(inner) if inner.is_empty() => writeln!(out, "{pad}{k}: {{}}").unwrap(),
            Value::Object(inner) => {
                writeln!(out, "{pad}{k}:").unwrap();
                render_map(out, inner, indent + 1);
            }
            Value::Array(items) if items.iter().all(is_scalar) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                writeln!(out, "{pad}{k}: [{}]", parts.join(", ")).unwrap();
            }
            Value::Array(items) => {
                writeln!(out, "{pad}{k}:").unwrap();
                render_items(out, items, indent + 1);
            }
            Value::String(s) if s.contains('\n') => {
                writeln!(out, "{pad}{k}: |").unwrap();
                for line in s.lines() {
                    writeln!(out, "{pad}  {line}").unwrap();
                }
            }
            other => writeln!(out, "{pad}{k}: {}", scalar(other)).unwrap(),
        }
    }
}

fn render_items(out: &mut String, items: &[Value], indent: usize) {
    let pad = "  ".repeat(indent);
    for item in items {
        match item {
            Value::Object(inner) if !inner.is_empty() => {
                let mut body = String::new();
                render_map(&mut body, inner, indent + 1);
                let inner_pad = "  ".repeat(indent + 1);
                let body = body.replacen(&inner_pad, "", 1);
                write!(out, "{pad}- {body}").unwrap();
            }
            Value::Array(sub) if !sub.iter().all(is_scalar) => {
                writeln!(out, "{pad}-").unwrap();
                render_items(out, sub, indent + 1);
            }
            Value::Array(sub) => {
                let parts: Vec<String> = sub.iter().map(scalar).collect();
                writeln!(out, "{pad}- [{}]", parts.join(", ")).unwrap();
            }
            Value::Object(_) => writeln!(out, "{pad}- {{}}").unwrap(),
            other => writeln!(out, "{pad}- {}", scalar(other)).unwrap(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_twelve_digits() {
        assert_eq!(float((5.0 - 5f64.sqrt()) / 2.0).to_string(), "1.38196601125");
        assert_eq!(float(0.1 + 0.2).to_string(), "0.3");
        assert_eq!(float(-2.0).to_string(), "-2.0");
        assert_eq!(float(f64::NAN), Value::String("NaN".into()));
    }

    #[test]
    fn text_layout() {
        let v = json!({
            "a": 1,
            "b": {"c": [1, 2.5, "x"], "d": []},
            "e": [{"f": true, "g": {"h": null}}, {"f": false}],
        });
        let expected = "a: 1\nb:\n  c: [1, 2.5, x]\n  d: []\ne:\n  - f: true\n    g:\n      h: null\n  - f: false\n";
        assert_eq!(render_text(&v), expected);
    }
}
