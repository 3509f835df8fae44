//! JSON records for ring elements: `{"kind","p","degree","modulus",
//! "precision","coeffs"}`. Mixed-kind elements over a prime residue field
//! are written as plain integers.

use serde_json::{json, Value};

use super::matrix::Matrix;
use super::{Elem, Ring, RingKind};
use crate::error::{Error, Result};

pub fn element_to_json(ring: &Ring, a: &Elem) -> Value {
    if let Some(n) = ring.as_integer(a) {
        return json!(n);
    }
    json!({
        "kind": ring.kind(),
        "p": ring.characteristic_p(),
        "degree": ring.degree(),
        "modulus": ring.modulus(),
        "precision": crate::dvr::RingOps::precision(ring),
        "coeffs": a,
    })
}

fn poly_text(coeffs: &[u64], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| match j {
            0 => c.to_string(),
            1 => format!("{c}{var}"),
            _ => format!("{c}{var}^{j}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Compact text form: integers for the Witt vectors of `F_p`, polynomials
/// in the residue generator `t` and the uniformizer `x` otherwise.
pub fn element_to_string(ring: &Ring, a: &Elem) -> String {
    if let Some(n) = ring.as_integer(a) {
        return n.to_string();
    }
    match ring.kind() {
        RingKind::Mixed => poly_text(a, "t"),
        RingKind::Equal => {
            let d = ring.degree();
            let terms: Vec<String> = a
                .chunks(d)
                .enumerate()
                .filter(|(_, c)| c.iter().any(|&v| v != 0))
                .map(|(i, c)| {
                    let coeff = poly_text(c, "t");
                    let coeff = if c.iter().skip(1).any(|&v| v != 0) && i > 0 {
                        format!("({coeff})")
                    } else {
                        coeff
                    };
                    match i {
                        0 => coeff,
                        1 => format!("{coeff}*x"),
                        _ => format!("{coeff}*x^{i}"),
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        }
    }
}

pub fn matrix_to_string(ring: &Ring, m: &Matrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| element_to_string(ring, x)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn matrix_to_json(ring: &Ring, m: &Matrix) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|x| element_to_json(ring, x)).collect()))
            .collect(),
    )
}

fn bad(msg: &str) -> Error {
    Error::InvalidInput(msg.to_string())
}

/// Reads an element written by [`element_to_json`] (or a plain integer,
/// accepted for every ring) and checks that its record matches `ring`.
pub fn element_from_json(ring: &Ring, v: &Value) -> Result<Elem> {
    if let Some(n) = v.as_i64() {
        return Ok(crate::dvr::RingOps::from_int(ring, n));
    }
    let obj = v
        .as_object()
        .ok_or_else(|| bad("ring element must be an integer or a record"))?;
    let kind: RingKind = serde_json::from_value(obj.get("kind").cloned().unwrap_or(Value::Null))
        .map_err(|_| bad("missing or unknown ring kind"))?;
    let p = obj.get("p").and_then(Value::as_u64);
    let degree = obj.get("degree").and_then(Value::as_u64);
    let precision = obj.get("precision").and_then(Value::as_u64);
    let modulus: Option<Vec<u64>> = obj
        .get("modulus")
        .and_then(|m| serde_json::from_value(m.clone()).ok());
    let matches = kind == ring.kind()
        && p == Some(ring.characteristic_p())
        && degree == Some(ring.degree() as u64)
        && precision == Some(crate::dvr::RingOps::precision(ring) as u64)
        && modulus.as_deref() == Some(ring.modulus());
    if !matches {
        return Err(Error::InvalidRing(
            "element record does not match the ring".into(),
        ));
    }
    let coeffs: Vec<i64> = obj
        .get("coeffs")
        .and_then(|c| serde_json::from_value(c.clone()).ok())
        .ok_or_else(|| bad("coeffs must be an integer array"))?;
    ring.element(&coeffs)
}

pub fn matrix_from_json(ring: &Ring, v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("matrix must be an array of rows"))?;
    let n = rows.len();
    rows.iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| bad("matrix row must be an array"))?;
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            row.iter().map(|x| element_from_json(ring, x)).collect()
        })
        .collect()
}
