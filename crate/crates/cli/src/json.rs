//! JSON encodings of the core types.
//!
//! Field elements are arrays of base-p digits, least-significant basis
//! coefficient first; Witt vectors are pairs of field-element encodings;
//! representation matrices carry their basis names and entries row by row.

use serde::Serialize;
use serde_json::{json, Value};

use wittrep_core::rep::RepMatrix;
use wittrep_core::ring::FqElement;
use wittrep_core::witt::Witt2;

pub fn fe_json(e: &FqElement) -> Value {
    json!(e.digits())
}

pub fn witt_json(w: &Witt2<FqElement>) -> Value {
    json!([fe_json(&w.a0), fe_json(&w.a1)])
}

pub fn rep_matrix_json(m: &RepMatrix<FqElement>, p: u64, q: u64) -> Value {
    let rows: Vec<Vec<Value>> = (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| fe_json(m.at(i, j))).collect())
        .collect();
    json!({
        "p": p,
        "q": q,
        "dim": m.dim(),
        "basis": m.basis().names(),
        "matrix": rows,
    })
}

/// One verification result. `timing_ms` is carried separately from the
/// payload so golden comparisons can ignore it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub p: u64,
    pub q: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub timing_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}
