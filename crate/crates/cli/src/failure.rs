//! Errors surfaced by the command line, with their exit codes and JSON form.

use std::fmt;

use serde_json::{json, Value};

#[derive(Debug)]
pub enum Failure {
    Lib(schurlab::Error),
    Usage(String),
    Io(String),
    /// A checked bound or invariant came out false. Output has already been written.
    Contradiction(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        use schurlab::Error as E;
        match self {
            Failure::Usage(_) | Failure::Lib(E::InvalidArgument(_) | E::ShapeMismatch(_)) => 2,
            Failure::Lib(E::CapExceeded { .. }) => 3,
            Failure::Lib(E::InvariantViolation(_)) | Failure::Contradiction(_) => 4,
            Failure::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        use schurlab::Error as E;
        match self {
            Failure::Usage(_) | Failure::Lib(E::InvalidArgument(_)) => "invalid_argument",
            Failure::Lib(E::ShapeMismatch(_)) => "shape_mismatch",
            Failure::Lib(E::CapExceeded { .. }) => "cap_exceeded",
            Failure::Lib(E::InvariantViolation(_)) => "invariant_violation",
            Failure::Contradiction(_) => "contradiction",
            Failure::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut error = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let Failure::Lib(schurlab::Error::CapExceeded { what, limit, got }) = self {
            error["what"] = json!(what);
            error["limit"] = json!(limit);
            error["got"] = json!(got);
        }
        json!({
            "schema": "schurlab.error",
            "schema_version": crate::output::SCHEMA_VERSION,
            "error": error,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Usage(m) | Failure::Io(m) | Failure::Contradiction(m) => f.write_str(m),
        }
    }
}

impl From<schurlab::Error> for Failure {
    fn from(e: schurlab::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;
