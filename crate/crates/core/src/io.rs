//! JSON documents for mm-spaces.
//!
//! ```json
//! {"labels": ["a", "b"], "dist": [[0, 1], [1, 0]], "weights": [0.5, 0.5], "meta": {}}
//! ```
//!
//! `labels` defaults to `"0"`, `"1"`, ... and `meta` is an optional free-form
//! object. Numbers are written in shortest round-trip form, so writing and
//! reading a document reproduces the space bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::space::MmSpace;

/// The on-disk form of a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MmSpaceDocument {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

fn parse_err(source: &str, field: impl Into<String>, message: impl Into<String>) -> Error {
    let field = field.into();
    let location = if field.is_empty() {
        source.to_string()
    } else {
        format!("{source}, field `{field}`")
    };
    Error::Parse {
        location,
        message: message.into(),
    }
}

fn number(v: &Value, source: &str, field: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| parse_err(source, field, format!("expected a number, found {v}")))
}

fn array<'a>(v: &'a Value, source: &str, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(source, field, "expected an array"))
}

impl MmSpaceDocument {
    pub fn from_space(x: &MmSpace) -> Self {
        Self {
            labels: x.labels().to_vec(),
            dist: x.dist_rows(),
            weights: x.weights().to_vec(),
            meta: None,
        }
    }

    /// Parse JSON text; `source` names the input in error messages.
    ///
    /// Syntax errors carry line and column; structural and validation errors
    /// name the offending field, e.g. `dist[2][0]`.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text).map_err(|e| {
            parse_err(
                source,
                "",
                format!("line {}, column {}: {e}", e.line(), e.column()),
            )
        })?;
        let obj = root
            .as_object()
            .ok_or_else(|| parse_err(source, "", "expected a JSON object"))?;
        if let Some(k) = obj
            .keys()
            .find(|k| !["labels", "dist", "weights", "meta"].contains(&k.as_str()))
        {
            return Err(parse_err(source, k.as_str(), "unknown field"));
        }
        let rows = array(
            obj.get("dist")
                .ok_or_else(|| parse_err(source, "dist", "missing"))?,
            source,
            "dist",
        )?;
        let dist = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                array(row, source, &format!("dist[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, v)| number(v, source, &format!("dist[{i}][{j}]")))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let weights = array(
            obj.get("weights")
                .ok_or_else(|| parse_err(source, "weights", "missing"))?,
            source,
            "weights",
        )?
        .iter()
        .enumerate()
        .map(|(i, v)| number(v, source, &format!("weights[{i}]")))
        .collect::<Result<Vec<f64>>>()?;
        let labels = match obj.get("labels") {
            None => (0..dist.len()).map(|i| i.to_string()).collect(),
            Some(v) => array(v, source, "labels")?
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str().map(str::to_string).ok_or_else(|| {
                        parse_err(source, format!("labels[{i}]"), "expected a string")
                    })
                })
                .collect::<Result<Vec<String>>>()?,
        };
        let meta = obj.get("meta").cloned();
        if meta.as_ref().is_some_and(|m| !m.is_object()) {
            return Err(parse_err(source, "meta", "expected an object"));
        }
        Ok(Self {
            labels,
            dist,
            weights,
            meta,
        })
    }

    /// Validate into a space, naming the field of the first violation.
    pub fn to_space(&self, source: &str) -> Result<MmSpace> {
        MmSpace::new(self.labels.clone(), self.dist.clone(), self.weights.clone()).map_err(|e| {
            let field = match &e {
                Error::BadDistance(i, j) | Error::NonSymmetric(i, j) => format!("dist[{i}][{j}]"),
                Error::NonZeroDiagonal(i) => format!("dist[{i}][{i}]"),
                Error::TriangleViolation(i, _, k) => format!("dist[{i}][{k}]"),
                Error::BadWeights(_) => "weights".into(),
                Error::Empty | Error::DimensionMismatch(_) => "dist".into(),
                _ => String::new(),
            };
            parse_err(source, field, e.to_string())
        })
    }

    /// Pretty JSON with shortest round-trip numbers.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Parse and validate a space from JSON text.
pub fn space_from_json(text: &str, source: &str) -> Result<MmSpace> {
    MmSpaceDocument::parse(text, source)?.to_space(source)
}

/// Serialize a space, attaching `meta` if given.
pub fn space_to_json(x: &MmSpace, meta: Option<Value>) -> String {
    MmSpaceDocument {
        meta,
        ..MmSpaceDocument::from_space(x)
    }
    .to_json_string()
}

/// Read and validate a space from a file.
pub fn read_space(path: &Path) -> Result<MmSpace> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(&path.display().to_string(), "", e.to_string()))?;
    space_from_json(&text, &path.display().to_string())
}

/// Write a space to a file.
pub fn write_space(path: &Path, x: &MmSpace, meta: Option<Value>) -> Result<()> {
    std::fs::write(path, space_to_json(x, meta) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let s = 3f64.sqrt();
        let w = vec![(2.0 - s) / 6.0, 1.0 / 3.0, (2.0 + s) / 6.0];
        let d = vec![
            vec![0.0, 0.1, 0.7],
            vec![0.1, 0.0, 2.0 / 3.0],
            vec![0.7, 2.0 / 3.0, 0.0],
        ];
        let x = MmSpace::from_matrix(d, w).unwrap();
        let text = space_to_json(&x, Some(serde_json::json!({"origin": "test"})));
        let y = space_from_json(&text, "mem").unwrap();
        assert_eq!(x, y);
        assert_eq!(
            text,
            space_to_json(&y, Some(serde_json::json!({"origin": "test"})))
        );
    }

    #[test]
    fn errors_name_fields() {
        let cases = [
            (
                r#"{"dist": [[0, 1], [1, 0]], "weights": [0.5, "x"]}"#,
                "weights[1]",
            ),
            (
                r#"{"dist": [[0, 1], [2, 0]], "weights": [0.5, 0.5]}"#,
                "dist[0][1]",
            ),
            (
                r#"{"dist": [[0, 1], [1, 0]], "weights": [0.5, 0.6]}"#,
                "weights",
            ),
            (r#"{"dist": [[0, 1], [1, 0]]}"#, "weights"),
            (
                r#"{"dist": [[0, 1], [1, 0]], "weights": [0.5, 0.5], "extra": 1}"#,
                "extra",
            ),
            (
                r#"{"dist": [[0, 1, 5], [1, 0, 1], [5, 1, 0]], "weights": [0.2, 0.3, 0.5]}"#,
                "dist[0][2]",
            ),
        ];
        for (text, field) in cases {
            match space_from_json(text, "in.json") {
                Err(Error::Parse { location, .. }) => {
                    assert!(location.contains(field), "{location} vs {field}")
                }
                other => panic!("{other:?}"),
            }
        }
        match space_from_json("{\n  \"dist\": [[0]],\n  oops", "in.json") {
            Err(Error::Parse { message, .. }) => {
                assert!(message.starts_with("line 3"), "{message}")
            }
            other => panic!("{other:?}"),
        }
    }
}
