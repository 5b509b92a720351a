//! Parsing of vector/matrix/measure flags: a JSON literal, or `@path` to
//! read the JSON from a file. Matrices accept either nested rows
//! (row-major) or a flat array of `n*n` entries.

use std::fs;

use leibniz_core::linalg::{RealVector, SquareMatrix};
use leibniz_core::probability::DiscreteMeasure;

use crate::AnyError;

fn resolve(text: &str) -> Result<String, AnyError> {
    if let Some(path) = text.strip_prefix('@') {
        Ok(fs::read_to_string(path)?)
    } else {
        Ok(text.to_string())
    }
}

pub fn parse_vector(text: &str) -> Result<RealVector, AnyError> {
    let body = resolve(text)?;
    Ok(serde_json::from_str(&body)?)
}

pub fn parse_matrix(text: &str) -> Result<SquareMatrix, AnyError> {
    let body = resolve(text)?;
    let value: serde_json::Value = serde_json::from_str(&body)?;
    if let Some(rows) = value.as_array() {
        if rows.first().map(|r| r.is_array()) == Some(true) {
            return Ok(serde_json::from_value(value)?);
        }
        // Flat row-major array: the length must be a perfect square.
        let flat: Vec<f64> = serde_json::from_value(value)?;
        let n = (flat.len() as f64).sqrt().round() as usize;
        return Ok(SquareMatrix::new(n, flat)?);
    }
    Err("matrix must be a JSON array (nested rows or flat row-major)".into())
}

/// Measures are normalized when their sum is within 1e-9 of 1, and
/// rejected otherwise.
pub fn parse_measure(text: &str) -> Result<DiscreteMeasure, AnyError> {
    let body = resolve(text)?;
    let weights: Vec<f64> = serde_json::from_str(&body)?;
    Ok(DiscreteMeasure::normalized(weights)?)
}
