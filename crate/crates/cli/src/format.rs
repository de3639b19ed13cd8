//! Fixed-format numbers and a flat TOML writer.
//!
//! `toml` would print the shortest round-trip representation of every float;
//! reports instead show a fixed number of significant digits.

use toml::{Table, Value};

pub const DEFAULT_DIGITS: usize = 12;
/// Enough significant digits for any `f64` to survive a text round trip.
pub const LOSSLESS_DIGITS: usize = 17;

/// `x` with `digits` significant digits, positional where that stays short
/// and in exponent notation otherwise. Always a valid TOML float.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.clamp(1, LOSSLESS_DIGITS);
    if x == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1).max(1), 0.0);
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..digits as i32 - 1).contains(&exp) {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    } else {
        sci
    }
}

fn scalar(v: &Value, digits: usize) -> String {
    match v {
        Value::Float(x) => sig(*x, digits),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|i| scalar(i, digits)).collect();
            format!("[{}]", inner.join(", "))
        }
        other => other.to_string(),
    }
}

/// Renders a table of scalars and (nested) float arrays, one key per line.
/// Arrays of arrays are written one row per line.
pub fn render(table: &Table, digits: usize) -> String {
    let mut out = String::new();
    for (key, v) in table {
        match v {
            Value::Array(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
                out.push_str(&format!("{key} = [\n"));
                for row in rows {
                    out.push_str(&format!("  {},\n", scalar(row, digits)));
                }
                out.push_str("]\n");
            }
            _ => out.push_str(&format!("{key} = {}\n", scalar(v, digits))),
        }
    }
    out
}

/// Serializes `value` through a TOML table and renders it with [`render`].
pub fn to_text<T: serde::Serialize>(value: &T, digits: usize) -> String {
    match Value::try_from(value) {
        Ok(Value::Table(t)) => render(&t, digits),
        Ok(other) => scalar(&other, digits),
        Err(e) => panic!("report types serialize to TOML: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig(0.136740123456789, 12), "0.136740123457");
        assert_eq!(sig(1.0, 12), "1.00000000000");
        assert_eq!(sig(-2.5e-9, 12), "-2.50000000000e-9");
        assert_eq!(sig(3.0e20, 4), "3.000e20");
        assert_eq!(sig(0.0, 12), "0.00000000000");
        assert_eq!(sig(f64::INFINITY, 12), "inf");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e7, 1.234e-300, -6.02214076e23, 0.5] {
            let s = sig(x, LOSSLESS_DIGITS);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn rendered_table_parses_back() {
        let mut t = Table::new();
        t.insert("label".into(), Value::String("a \"quoted\" name".into()));
        t.insert("x".into(), Value::Float(0.25));
        t.insert("flag".into(), Value::Boolean(true));
        t.insert(
            "matrix".into(),
            Value::Array(vec![
                Value::Array(vec![Value::Float(1.0), Value::Float(-0.5)]),
                Value::Array(vec![Value::Float(-0.5), Value::Float(2.0)]),
            ]),
        );
        let text = render(&t, 12);
        let back: Table = text.parse().unwrap();
        assert_eq!(back, t);
    }
}
