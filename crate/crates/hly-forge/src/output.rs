//! JSON encodings of engine results. Object keys come out sorted, so equal
//! results print identically.

use hly_core::cohomology::CohomologyDims;
use hly_core::{IdentityReport, Matrix, Scalar};
use serde_json::{json, Value};

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

/// Nonzero entries as `[row, col, value]`.
pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        m.nonzero_entries()
            .map(|(i, j, s)| json!([i, j, s.to_string()]))
            .collect(),
    )
}

pub fn report(r: &IdentityReport) -> Value {
    let failures: Vec<Value> = r
        .failures()
        .iter()
        .map(|f| {
            json!({
                "identity": f.identity,
                "tuple": f.tuple,
                "residual": vector(&f.residual),
            })
        })
        .collect();
    json!({
        "ok": r.ok(),
        "failure_count": r.failure_count(),
        "failing_identities": r.failing_identities(),
        "failures": failures,
    })
}

pub fn dims(d: &CohomologyDims) -> Value {
    json!({
        "level": d.level,
        "dim_c": d.dim_c,
        "dim_z": d.dim_z,
        "dim_b": d.dim_b,
        "dim_h": d.dim_h,
        "delta_squared_zero": d.delta_squared_zero,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

pub fn render_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values are always serializable");
    s.push('\n');
    s
}
