//! Number formatting and JSON emission. Every number is printed with at
//! most 12 significant digits, so reruns are byte-identical.

use serde_json::Value;

pub const SIG_DIGITS: usize = 12;

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        // normalizes -0.0
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{:.*e}", SIG_DIGITS - 1, v).parse().expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn fmt_num(v: f64) -> String {
    let r = round_sig(v);
    if r.is_nan() {
        "nan".into()
    } else if r == f64::INFINITY {
        "inf".into()
    } else if r == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{r}")
    }
}

/// Rounds every number in a JSON tree.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if !(n.is_i64() || n.is_u64()) => {
                serde_json::Number::from_f64(round_sig(f)).map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn to_json_string(v: Value) -> String {
    serde_json::to_string_pretty(&round_value(v)).expect("serializable")
}

pub fn point_value(coords: &[f64]) -> Value {
    Value::Array(
        coords
            .iter()
            .map(|&c| serde_json::Number::from_f64(round_sig(c)).map_or(Value::Null, Value::Number))
            .collect(),
    )
}
