//! Check reports and their text and machine renderings.

use serde_json::{json, Value as Json};

use crate::linalg::Vector;
use crate::scalar::{parse_scalar, FieldSpec};

use super::ast::Sort;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run because a precondition failed.
    Precondition,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Precondition => "precondition",
        }
    }
}

/// The verdict of one identity (or one named precondition).
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub identity: String,
    pub status: Status,
    /// 1-based basis indices of the first failing assignment.
    pub assignment: Option<Vec<usize>>,
    /// The nonzero residual at that assignment (tensors flattened row-major).
    pub residual: Option<Vector>,
    /// Basis assignments evaluated.
    pub assignments: usize,
    /// Variable sorts, used to label the assignment (`e` for `A`, `v` for `V`).
    pub variables: Vec<Sort>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(identity: &str, assignments: usize) -> Self {
        CheckReport {
            identity: identity.into(),
            status: Status::Pass,
            assignment: None,
            residual: None,
            assignments,
            variables: Vec::new(),
            note: None,
        }
    }

    pub fn precondition(identity: &str, note: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            status: Status::Precondition,
            assignment: None,
            residual: None,
            assignments: 0,
            variables: Vec::new(),
            note: Some(note.into()),
        }
    }

    /// A failed named check that is not an identity (e.g. a determinant test).
    pub fn failed(identity: &str, note: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            status: Status::Fail,
            assignment: None,
            residual: None,
            assignments: 0,
            variables: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn assignment_label(&self) -> Option<String> {
        let a = self.assignment.as_ref()?;
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .map(|(k, i)| match self.variables.get(k) {
                Some(Sort::V) => format!("v{i}"),
                _ => format!("e{i}"),
            })
            .collect();
        Some(format!("({})", parts.join(", ")))
    }

    pub fn render_text(&self, field: &FieldSpec) -> String {
        let n = |c: usize| if c == 1 { "1 assignment".to_string() } else { format!("{c} assignments") };
        let mut line = match self.status {
            Status::Pass => format!("PASS {} ({})", self.identity, n(self.assignments)),
            Status::Fail => match (&self.assignment_label(), &self.residual) {
                (Some(a), Some(r)) => format!("FAIL {} at {a} residual {} ({})", self.identity, r.render(field), n(self.assignments)),
                _ => format!("FAIL {}", self.identity),
            },
            Status::Precondition => format!("PRECONDITION {}", self.identity),
        };
        if let Some(note) = &self.note {
            line.push_str(": ");
            line.push_str(note);
        }
        line
    }

    fn to_json(&self, field: &FieldSpec) -> Json {
        let mut m = serde_json::Map::new();
        m.insert("identity".into(), json!(self.identity));
        m.insert("status".into(), json!(self.status.name()));
        m.insert("assignment".into(), self.assignment.as_ref().map_or(Json::Null, |a| json!(a)));
        m.insert(
            "residual".into(),
            self.residual.as_ref().map_or(Json::Null, |r| json!(r.0.iter().map(|s| s.render(field)).collect::<Vec<_>>())),
        );
        m.insert("assignments".into(), json!(self.assignments));
        if !self.variables.is_empty() {
            m.insert("sorts".into(), json!(self.variables.iter().map(|s| s.to_string()).collect::<Vec<_>>()));
        }
        if let Some(n) = &self.note {
            m.insert("note".into(), json!(n));
        }
        Json::Object(m)
    }
}

/// An ordered collection of verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub field: FieldSpec,
    pub entries: Vec<CheckReport>,
}

impl Report {
    pub fn new(field: FieldSpec) -> Self {
        Report { field, entries: Vec::new() }
    }

    pub fn push(&mut self, r: CheckReport) {
        self.entries.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(CheckReport::passed)
    }

    pub fn get(&self, identity: &str) -> Option<&CheckReport> {
        self.entries.iter().find(|e| e.identity == identity)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.entries.iter().find(|e| !e.passed())
    }

    /// One line per entry.
    pub fn render_text(&self) -> String {
        self.entries.iter().map(|e| e.render_text(&self.field) + "\n").collect()
    }

    /// A JSON array of records `{identity, status, assignment, residual, assignments, ...}`.
    pub fn render_machine(&self) -> String {
        if self.entries.is_empty() {
            return "[]\n".into();
        }
        let lines: Vec<String> = self.entries.iter().map(|e| format!("  {}", e.to_json(&self.field))).collect();
        format!("[\n{}\n]\n", lines.join(",\n"))
    }

    /// Parse a machine rendering back into a report over `field`.
    pub fn parse_machine(text: &str, field: &FieldSpec) -> Result<Report, String> {
        let doc: Json = serde_json::from_str(text).map_err(|e| format!("line {}, column {}: {e}", e.line(), e.column()))?;
        let arr = doc.as_array().ok_or("report must be an array")?;
        let mut out = Report::new(field.clone());
        for (k, rec) in arr.iter().enumerate() {
            let at = |f: &str| format!("record {}: field `{f}`", k + 1);
            let obj = rec.as_object().ok_or_else(|| format!("record {} is not an object", k + 1))?;
            let identity = obj.get("identity").and_then(Json::as_str).ok_or_else(|| at("identity"))?.to_string();
            let status = match obj.get("status").and_then(Json::as_str) {
                Some("pass") => Status::Pass,
                Some("fail") => Status::Fail,
                Some("precondition") => Status::Precondition,
                _ => return Err(at("status")),
            };
            let assignment = match obj.get("assignment") {
                None | Some(Json::Null) => None,
                Some(Json::Array(a)) => Some(
                    a.iter()
                        .map(|v| v.as_u64().map(|u| u as usize).ok_or_else(|| at("assignment")))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                _ => return Err(at("assignment")),
            };
            let residual = match obj.get("residual") {
                None | Some(Json::Null) => None,
                Some(Json::Array(a)) => Some(Vector(
                    a.iter()
                        .map(|v| {
                            let s = v.as_str().ok_or_else(|| at("residual"))?;
                            parse_scalar(s, field).map_err(|e| format!("{}: {e}", at("residual")))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                )),
                _ => return Err(at("residual")),
            };
            let assignments = obj.get("assignments").and_then(Json::as_u64).ok_or_else(|| at("assignments"))? as usize;
            let variables = match obj.get("sorts") {
                None => Vec::new(),
                Some(Json::Array(a)) => a
                    .iter()
                    .map(|v| match v.as_str() {
                        Some("A") => Ok(Sort::A),
                        Some("V") => Ok(Sort::V),
                        _ => Err(at("sorts")),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                _ => return Err(at("sorts")),
            };
            let note = obj.get("note").and_then(Json::as_str).map(str::to_string);
            out.push(CheckReport { identity, status, assignment, residual, assignments, variables, note });
        }
        Ok(out)
    }
}
