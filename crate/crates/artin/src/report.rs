//! Serializable decomposition reports.
//!
//! Every rational is rendered as an exact `"p/q"` string (integers drop the
//! denominator), all indices are one-based, and no timing or environment
//! data is included, so a report is byte-identical across runs with the
//! same input and seed. Vectors are coordinate rows over the basis named in
//! the field's documentation: `radical` data lives over the input basis,
//! `center`, `split`, and component data over the semisimple quotient, and
//! the lifted basis back over the input basis.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{format_rational, parse_rational, Rational};

pub const REPORT_FORMAT: &str = "wedderburn-decomposition/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("malformed rational {value:?} in report field {field}")]
    BadRational { field: &'static str, value: String },
    #[error("report is not valid JSON: {0}")]
    Json(String),
    #[error("report format tag {0:?} is not recognized")]
    Format(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionReport {
    pub format: String,
    pub input: InputReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<RadicalReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InputReport {
    /// Human-readable origin, e.g. `pt(2) multiplication table`.
    pub description: String,
    /// Dimension of the algebra that was decomposed.
    pub dimension: usize,
    /// Dimension before an identity was adjoined (equal when none was).
    pub original_dimension: usize,
    pub identity_adjoined: bool,
    pub associativity_check: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RadicalReport {
    pub radical_dim: usize,
    pub quotient_dim: usize,
    /// Canonical nullspace basis of the trace matrix, over the input basis.
    pub radical_basis: Vec<Vec<String>>,
    /// Row canonical form of the same span; each row is a combination of
    /// input basis classes that vanishes in the quotient, and its leading
    /// coordinates mark the positions eliminated by the quotient.
    pub quotient_relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CenterReport {
    pub center_dim: usize,
    /// Canonical center basis, over the quotient basis.
    pub center_basis: Vec<Vec<String>>,
    /// Entries `[i, j, k, c]`, one-based: z_i z_j contains c z_k.
    pub center_structure: Vec<(usize, usize, usize, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SplitReport {
    /// Primitive central idempotents in discovery order, over the quotient
    /// basis.
    pub idempotents: Vec<Vec<String>>,
    pub components: Vec<SplitInfoReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SplitInfoReport {
    pub center_degree: usize,
    /// Ascending coefficients of the minimal polynomial of the component's
    /// center generator.
    pub center_min_poly: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComponentReport {
    pub dimension: usize,
    /// "split", "non-split-center", or "units-not-found".
    pub status: String,
    pub center_degree: usize,
    pub center_min_poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_size: Option<usize>,
    /// The component's central idempotent, over the quotient basis.
    pub idempotent: Vec<String>,
    /// Row canonical basis of the component, over the quotient basis.
    pub basis: Vec<Vec<String>>,
    /// Row-major matrix units E_11, E_12, ..., E_qq when the component
    /// splits, over the quotient basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_units: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_left_ideal: Option<Vec<Vec<String>>>,
    /// For split components: the irreducible representation matrix of every
    /// input basis element, row-major q x q.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LiftReport {
    pub stages: usize,
    pub params_free: usize,
    pub param_names: Vec<String>,
    /// `(name, value)` pairs the caller chose; empty for the canonical lift.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub applied_parameters: Vec<(String, String)>,
    /// The lifted basis over the input basis, ordered like the flattened
    /// component bases (matrix units first within split components).
    pub basis: Vec<Vec<String>>,
    /// (ambient dimension, correction-space dimension) per stage.
    pub stage_dims: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FailureReport {
    pub stage: String,
    pub message: String,
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn vectors_strings(vs: &[Vec<Rational>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| vector_strings(v)).collect()
}

pub fn parse_vector(field: &'static str, v: &[String]) -> Result<Vec<Rational>, ReportError> {
    v.iter()
        .map(|s| {
            parse_rational(s).map_err(|_| ReportError::BadRational {
                field,
                value: s.clone(),
            })
        })
        .collect()
}

pub fn parse_vectors(
    field: &'static str,
    vs: &[Vec<String>],
) -> Result<Vec<Vec<Rational>>, ReportError> {
    vs.iter().map(|v| parse_vector(field, v)).collect()
}

/// `x4_2` style one-based parameter names for the free lift coordinates.
pub fn param_name(i: usize, l: usize) -> String {
    format!("x{}_{}", i + 1, l + 1)
}

/// Inverse of `param_name`; returns zero-based indices.
pub fn parse_param_name(s: &str) -> Option<(usize, usize)> {
    let rest = s.strip_prefix('x')?;
    let (i, l) = rest.split_once('_')?;
    let i: usize = i.parse().ok()?;
    let l: usize = l.parse().ok()?;
    if i == 0 || l == 0 {
        None
    } else {
        Some((i - 1, l - 1))
    }
}

impl DecompositionReport {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<DecompositionReport, ReportError> {
        let report: DecompositionReport =
            serde_json::from_str(s).map_err(|e| ReportError::Json(e.to_string()))?;
        if report.format != REPORT_FORMAT {
            return Err(ReportError::Format(report.format));
        }
        Ok(report)
    }

    /// Multi-section plain-text rendering of the same data.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("input: {}", self.input.description));
        line(format!(
            "dimension: {}{}",
            self.input.dimension,
            if self.input.identity_adjoined {
                format!(" (identity adjoined to a {}-dimensional input)", self.input.original_dimension)
            } else {
                String::new()
            }
        ));
        line(format!("associativity check: {}", self.input.associativity_check));
        line(format!("seed: {}", self.input.seed));
        if let Some(summary) = &self.summary {
            line(format!("summary: {summary}"));
        }
        for n in &self.notes {
            line(format!("note: {n}"));
        }
        if let Some(r) = &self.radical {
            line(String::new());
            line(format!(
                "radical: dimension {} (quotient dimension {})",
                r.radical_dim, r.quotient_dim
            ));
            for v in &r.radical_basis {
                line(format!("  basis {}", row_text(v)));
            }
        }
        if let Some(c) = &self.center {
            line(String::new());
            line(format!("center of the quotient: dimension {}", c.center_dim));
            for (i, v) in c.center_basis.iter().enumerate() {
                line(format!("  z{} = {}", i + 1, row_text(v)));
            }
            for (i, j, k, coeff) in &c.center_structure {
                line(format!("  z{i} z{j} += {coeff} z{k}"));
            }
        }
        if let Some(s) = &self.split {
            line(String::new());
            line(format!("primitive idempotents: {}", s.idempotents.len()));
            for (i, v) in s.idempotents.iter().enumerate() {
                line(format!("  e{} = {}", i + 1, row_text(v)));
            }
        }
        if let Some(comps) = &self.components {
            line(String::new());
            line(format!("simple components: {}", comps.len()));
            for (i, c) in comps.iter().enumerate() {
                let size = match c.matrix_size {
                    Some(q) => format!("{q} x {q} matrices"),
                    None => format!("{} ({})", c.dimension, c.status),
                };
                line(format!(
                    "  component {}: dimension {}, {}",
                    i + 1,
                    c.dimension,
                    size
                ));
                if let Some(units) = &c.matrix_units {
                    for (u, row) in units.iter().enumerate() {
                        let q = c.matrix_size.unwrap_or(1);
                        line(format!(
                            "    E{}{} = {}",
                            u / q + 1,
                            u % q + 1,
                            row_text(row)
                        ));
                    }
                }
                if let Some(note) = &c.note {
                    line(format!("    note: {note}"));
                }
            }
        }
        if let Some(l) = &self.lift {
            line(String::new());
            line(format!(
                "lifted basis: {} stage(s), {} free parameter(s){}",
                l.stages,
                l.params_free,
                if l.param_names.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", l.param_names.join(", "))
                }
            ));
            for (name, value) in &l.applied_parameters {
                line(format!("  applied {name} = {value}"));
            }
            for (i, v) in l.basis.iter().enumerate() {
                line(format!("  lift {} = {}", i + 1, row_text(v)));
            }
        }
        if let Some(f) = &self.failure {
            line(String::new());
            line(format!("FAILED at stage {}: {}", f.stage, f.message));
        }
        out
    }
}

fn row_text(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_names_round_trip() {
        assert_eq!(param_name(3, 1), "x4_2");
        assert_eq!(parse_param_name("x4_2"), Some((3, 1)));
        assert_eq!(parse_param_name("x0_1"), None);
        assert_eq!(parse_param_name("y4_2"), None);
        assert_eq!(parse_param_name("x4"), None);
        assert_eq!(parse_param_name("x4_two"), None);
    }

    #[test]
    fn report_json_round_trip() {
        let report = DecompositionReport {
            format: REPORT_FORMAT.to_string(),
            input: InputReport {
                description: "test".into(),
                dimension: 2,
                original_dimension: 2,
                identity_adjoined: false,
                associativity_check: "exhaustive".into(),
                seed: 0,
            },
            summary: Some("2 / 0 / 2 / 1,1".into()),
            notes: vec![],
            radical: Some(RadicalReport {
                radical_dim: 0,
                quotient_dim: 2,
                radical_basis: vec![],
                quotient_relations: vec![],
            }),
            center: None,
            split: None,
            components: None,
            lift: None,
            failure: None,
        };
        let s = report.to_json_string();
        let back = DecompositionReport::from_json_str(&s).unwrap();
        assert_eq!(back, report);
        // Deterministic rendering.
        assert_eq!(s, back.to_json_string());
        assert!(DecompositionReport::from_json_str("{}").is_err());
    }

    #[test]
    fn rational_strings_round_trip() {
        use crate::exactla::rat;
        let v = vec![rat(-3, 2), rat(5, 1), rat(0, 7)];
        let s = vector_strings(&v);
        assert_eq!(s, vec!["-3/2", "5", "0"]);
        assert_eq!(parse_vector("t", &s).unwrap(), v);
        assert!(parse_vector("t", &["x".to_string()]).is_err());
    }
}
