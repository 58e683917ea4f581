//! Batch evaluation of the `hyperend` library from JSON request documents.
//!
//! A request is one JSON object tagged by `command`, versioned `v1`. The
//! result is a JSON object `{version, command, result}` or, on failure,
//! `{version, command, error}`. Every number is rounded to 12 significant
//! digits.

pub mod export;
pub mod request;
pub mod response;
mod run;
pub mod schema;
pub mod wire;

use hyperend::GeomError;
use serde_json::Value;

pub use request::{Command, Options};
pub use response::{ErrorKind, Output, Success, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Failure {
        Failure {
            kind: ErrorKind::Validation,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Failure {
        Failure {
            kind: ErrorKind::Numeric,
            message: message.into(),
        }
    }

    /// An error raised while building inputs.
    pub fn invalid(e: GeomError) -> Failure {
        Failure::validation(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Validation => EXIT_VALIDATION,
            ErrorKind::Numeric => EXIT_NUMERIC,
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Failure {
        match e {
            GeomError::Parse(_) => Failure::validation(e.to_string()),
            _ => Failure::numeric(e.to_string()),
        }
    }
}

/// A parsed request.
#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub options: Options,
}

/// Validates a request document against the `v1` schema.
pub fn parse_request(doc: &str) -> Result<Request, Failure> {
    let mut value: Value =
        serde_json::from_str(doc).map_err(|e| Failure::validation(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Failure::validation("request must be a JSON object"))?;
    if let Some(v) = obj.remove("version") {
        if v != VERSION {
            return Err(Failure::validation(format!(
                "unsupported version {v}, expected \"{VERSION}\""
            )));
        }
    }
    let field = |obj: &mut serde_json::Map<String, Value>, key: &str| obj.remove(key);
    let tol = match field(obj, "tol") {
        None => None,
        Some(v) => Some(
            v.as_f64()
                .filter(|t| *t > 0.0)
                .ok_or_else(|| Failure::validation("tol must be a positive number"))?,
        ),
    };
    let seed = match field(obj, "seed") {
        None => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| Failure::validation("seed must be a non-negative integer"))?,
        ),
    };
    let samples = match field(obj, "samples") {
        None => None,
        Some(v) => Some(
            v.as_u64()
                .filter(|n| *n > 0)
                .ok_or_else(|| Failure::validation("samples must be a positive integer"))? as usize,
        ),
    };
    let command: Command = serde_json::from_value(value).map_err(|e| Failure::validation(e.to_string()))?;
    Ok(Request {
        command,
        options: Options { tol, seed, samples },
    })
}

/// The outcome of one request.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: Option<String>,
    pub result: Result<Output, Failure>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Ok(_) => EXIT_OK,
            Err(f) => f.exit_code(),
        }
    }

    /// The result document, pretty-printed, numbers at 12 significant digits.
    pub fn document(&self) -> String {
        let doc = match &self.result {
            Ok(out) => serde_json::to_string_pretty(&Success {
                version: VERSION.into(),
                output: out.clone(),
            }),
            Err(f) => serde_json::to_string_pretty(&response::ErrorDocument {
                version: VERSION.into(),
                command: self.command.clone(),
                error: response::ErrorBody {
                    kind: f.kind,
                    message: f.message.clone(),
                },
            }),
        };
        let mut s = doc.expect("result types serialize");
        s.push('\n');
        s
    }
}

/// Parses and evaluates a request document. `flags` override options given
/// in the document.
pub fn execute(doc: &str, flags: &Options) -> Outcome {
    let req = match parse_request(doc) {
        Ok(r) => r,
        Err(f) => {
            return Outcome {
                command: command_name(doc),
                result: Err(f),
            }
        }
    };
    let opts = req.options.merged(flags);
    Outcome {
        command: Some(req.command.name().into()),
        result: run::dispatch(&req.command, &opts).and_then(finish),
    }
}

fn command_name(doc: &str) -> Option<String> {
    let v: Value = serde_json::from_str(doc).ok()?;
    v.get("command")?.as_str().map(String::from)
}

/// Rounds every number and checks that the document re-parses.
fn finish(out: Output) -> Result<Output, Failure> {
    let mut value = serde_json::to_value(Success {
        version: VERSION.into(),
        output: out,
    })
    .map_err(|e| Failure::numeric(e.to_string()))?;
    round_numbers(&mut value);
    serde_json::from_value::<Success>(value)
        .map(|s| s.output)
        .map_err(|_| Failure::numeric("result contains a non-finite value"))
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round12(x))) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}
