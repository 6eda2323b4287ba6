//! JSON forms of the library's inputs and outputs. Big integers and
//! rationals are always written as decimal strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::conventions::{G2_DEGREE, G3_DEGREE};
use crate::hilbert::HilbertSeries;
use crate::qseries::QSeries;
use crate::scalar::{Domain, Scalar};
use crate::weierstrass::SurfaceParams;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
}

/// `{"g2": [9 strings], "g3": [13 strings]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurfaceParamsJson {
    pub g2: Vec<String>,
    pub g3: Vec<String>,
}

impl From<&SurfaceParams> for SurfaceParamsJson {
    fn from(u: &SurfaceParams) -> Self {
        SurfaceParamsJson {
            g2: u.g2_coeffs().iter().map(ToString::to_string).collect(),
            g3: u.g3_coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field { field: field.into(), message: message.into() }
}

fn entries(obj: &serde_json::Map<String, Value>, name: &str, len: usize) -> Result<Vec<String>, InputError> {
    let value = obj.get(name).ok_or_else(|| field_error(name, "missing"))?;
    let arr = value.as_array().ok_or_else(|| field_error(name, "expected an array"))?;
    if arr.len() != len {
        return Err(field_error(name, format!("expected {len} entries, got {}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
            _ => Err(field_error(format!("{name}[{i}]"), "expected a decimal string")),
        })
        .collect()
}

/// Parses parameters; the domain is the integers when every entry is
/// integral and the rationals otherwise.
pub fn parse_surface_params(text: &str) -> Result<SurfaceParams, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| field_error("<root>", "expected an object"))?;
    let g2 = entries(obj, "g2", G2_DEGREE + 1)?;
    let g3 = entries(obj, "g3", G3_DEGREE + 1)?;
    let mut parsed = Vec::with_capacity(g2.len() + g3.len());
    for (name, list) in [("g2", &g2), ("g3", &g3)] {
        for (i, s) in list.iter().enumerate() {
            let q = Scalar::parse(s, Domain::Rational).map_err(|e| field_error(format!("{name}[{i}]"), e.to_string()))?;
            parsed.push(q);
        }
    }
    let integral = parsed.iter().all(|q| q.to_rational().is_some_and(|r| r.is_integer()));
    let parsed: Vec<Scalar> = if integral {
        parsed.iter().map(|q| Scalar::Int(q.to_rational().expect("rational").to_integer())).collect()
    } else {
        parsed
    };
    let (a, b) = parsed.split_at(G2_DEGREE + 1);
    SurfaceParams::new(a.to_vec(), b.to_vec()).map_err(|e| field_error("<root>", e.to_string()))
}

pub fn surface_params_to_json(u: &SurfaceParams) -> String {
    serde_json::to_string(&SurfaceParamsJson::from(u)).expect("strings serialize")
}

/// One row of a Hilbert series table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HilbertRow {
    pub degree: usize,
    pub dim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_with_characters: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

pub fn hilbert_rows(
    plain: &HilbertSeries,
    with_characters: Option<&HilbertSeries>,
    oracle: Option<&[usize]>,
) -> Vec<HilbertRow> {
    (0..plain.coefficients.len())
        .map(|k| HilbertRow {
            degree: k,
            dim: plain.get(k).to_string(),
            dim_with_characters: with_characters.map(|w| w.get(k).to_string()),
            oracle: oracle.and_then(|o| o.get(k)).map(ToString::to_string),
        })
        .collect()
}

/// One coefficient of a q-series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QRow {
    pub exponent: i64,
    pub coefficient: String,
}

/// Every coefficient from the valuation up to the precision, zeros included.
pub fn qseries_rows(f: &QSeries) -> Vec<QRow> {
    let start = f.valuation().unwrap_or(f.precision() + 1);
    (start..=f.precision())
        .map(|e| QRow { exponent: e, coefficient: f.coeff(e).expect("within precision").to_string() })
        .collect()
}
