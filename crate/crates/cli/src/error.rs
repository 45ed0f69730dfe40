use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use twogroup_core::error::{CohomologyError, FusionError, TwoGroupError};

/// Where in the input an error was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    LineColumn { line: usize, column: usize },
    Field(String),
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::LineColumn { line, column } => write!(f, "line {line}, column {column}"),
            Position::Field(path) => write!(f, "field {path}"),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable input or a malformed file: exit status 2.
    Parse { position: Option<Position>, message: String },
    /// A well-formed input that fails a mathematical check or a bound: exit status 1.
    Domain { kind: &'static str, position: Option<Position>, message: String, witness: Option<Value> },
}

impl CliError {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse { position: Some(Position::LineColumn { line, column }), message: message.into() }
    }

    pub fn field(path: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Parse { position: Some(Position::Field(path.into())), message: message.into() }
    }

    pub fn io(path: &str, err: std::io::Error) -> CliError {
        CliError::Parse { position: None, message: format!("cannot read {path}: {err}") }
    }

    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::Parse { position: None, message: message.into() }
    }

    pub fn domain(kind: &'static str, field: Option<String>, message: impl Into<String>) -> CliError {
        CliError::Domain { kind, position: field.map(Position::Field), message: message.into(), witness: None }
    }

    pub fn size(field: String, size: usize, bound: usize) -> CliError {
        CliError::Domain {
            kind: "SizeBound",
            position: Some(Position::Field(field)),
            message: format!("size {size} exceeds the bound {bound}"),
            witness: None,
        }
    }

    pub fn with_witness(self, w: Value) -> CliError {
        match self {
            CliError::Domain { kind, position, message, .. } => CliError::Domain { kind, position, message, witness: Some(w) },
            other => other,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Domain { kind, .. } => kind,
        }
    }

    pub fn position(&self) -> Option<&Position> {
        match self {
            CliError::Parse { position, .. } | CliError::Domain { position, .. } => position.as_ref(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (message, witness) = match self {
            CliError::Parse { message, .. } => (message, None),
            CliError::Domain { message, witness, .. } => (message, witness.as_ref()),
        };
        let mut v = json!({ "kind": self.kind(), "message": message });
        if let Some(p) = self.position() {
            v["position"] = serde_json::to_value(p).expect("position serializes");
        }
        if let Some(w) = witness {
            v["witness"] = w.clone();
        }
        v
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = match self {
            CliError::Parse { message, .. } | CliError::Domain { message, .. } => message,
        };
        write!(f, "{}: {message}", self.kind())?;
        if let Some(p) = self.position() {
            write!(f, " (at {p})")?;
        }
        Ok(())
    }
}

impl From<TwoGroupError> for CliError {
    fn from(e: TwoGroupError) -> CliError {
        match e {
            TwoGroupError::PentagonViolation { g, h, k, l } => {
                CliError::domain("PentagonViolation", Some("alpha".into()), e.to_string()).with_witness(json!([g, h, k, l]))
            }
            TwoGroupError::Cohomology(c) => c.into(),
            other => CliError::domain("InvalidTwoGroup", None, other.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> CliError {
        match e {
            CohomologyError::NotSymmetric { a, b } => {
                CliError::domain("NotSymmetric", None, e.to_string()).with_witness(json!([a, b]))
            }
            CohomologyError::NotACocycle { ref tuple } => {
                let w = json!(tuple);
                CliError::domain("NotACocycle", None, e.to_string()).with_witness(w)
            }
            CohomologyError::SizeBound { .. } => CliError::domain("SizeBound", None, e.to_string()),
            CohomologyError::UnsupportedDegree { .. } => CliError::domain("UnsupportedDegree", None, e.to_string()),
            other => CliError::domain("CohomologyError", None, other.to_string()),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> CliError {
        match e {
            FusionError::UnknownSimple { g, rho } => {
                CliError::domain("UnknownSimple", None, e.to_string()).with_witness(json!({ "g": g, "rho": rho }))
            }
            FusionError::Group(twogroup_core::error::GroupError::SizeBound { .. }) => {
                CliError::domain("SizeBound", None, e.to_string())
            }
            FusionError::Cohomology(c) => c.into(),
            other => CliError::domain("FusionError", None, other.to_string()),
        }
    }
}
