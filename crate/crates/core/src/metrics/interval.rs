use serde::Serialize;
use serde_json::json;

use super::coupling::Coupling;
use super::relation::Relation;

/// How one endpoint of a [`CertifiedInterval`] was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Exhaustive search or an exact solver.
    Exact { description: String },
    /// A coupling whose objective equals the bound.
    Coupling { coupling: Coupling, objective: f64 },
    /// A relation whose induced gluing attains the bound.
    Relation { relation: Relation, objective: f64 },
    /// A known inequality between metrics.
    Inequality { description: String },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Exact { .. } => "exact",
            Witness::Coupling { .. } => "coupling",
            Witness::Relation { .. } => "relation",
            Witness::Inequality { .. } => "inequality",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Witness::Exact { description } | Witness::Inequality { description } => {
                description.clone()
            }
            Witness::Coupling { objective, .. } => format!("coupling with objective {objective}"),
            Witness::Relation { objective, .. } => format!("relation with objective {objective}"),
        }
    }

    /// `{"kind", "matrix", "objective"}` for couplings and relations,
    /// `{"kind", "description"}` otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Witness::Coupling {
                coupling,
                objective,
            } => {
                json!({"kind": "coupling", "matrix": coupling.rows(), "objective": objective})
            }
            Witness::Relation {
                relation,
                objective,
            } => {
                let m: Vec<Vec<u8>> = relation
                    .rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(u8::from).collect())
                    .collect();
                json!({"kind": "relation", "matrix": m, "objective": objective})
            }
            other => json!({"kind": other.kind(), "description": other.describe()}),
        }
    }
}

/// A value known to lie in `[lower, upper]`, with the origin of each endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_witness: Witness,
    pub upper_witness: Witness,
}

#[derive(Serialize)]
struct IntervalJson {
    lower: f64,
    upper: f64,
    exact: bool,
    lower_witness: serde_json::Value,
    upper_witness: serde_json::Value,
}

impl CertifiedInterval {
    pub fn new(lower: f64, upper: f64, lower_witness: Witness, upper_witness: Witness) -> Self {
        debug_assert!(lower <= upper + 1e-9, "lower {lower} exceeds upper {upper}");
        Self {
            lower,
            upper,
            lower_witness,
            upper_witness,
        }
    }

    /// Both endpoints from one exact computation.
    pub fn exact(value: f64, upper_witness: Witness, description: &str) -> Self {
        Self::new(
            value,
            value,
            Witness::Exact {
                description: description.into(),
            },
            upper_witness,
        )
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.lower_witness, Witness::Exact { .. }) && self.lower == self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// `"exact"` or `"bounds"`.
    pub fn method(&self) -> &'static str {
        if self.is_exact() {
            "exact"
        } else {
            "bounds"
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IntervalJson {
            lower: self.lower,
            upper: self.upper,
            exact: self.is_exact(),
            lower_witness: self.lower_witness.to_json(),
            upper_witness: self.upper_witness.to_json(),
        })
        .expect("interval serializes")
    }
}
