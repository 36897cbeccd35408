//! Loading fans, divisors, decorations and sheaves from files or fixtures.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use toric_acyclic::cohomology::SheafSpec;
use toric_acyclic::decoration::DecorationSpec;
use toric_acyclic::fan::DiagnosticError;
use toric_acyclic::{fixtures, Fan, FanSpec, TDivisor, ToricSheaf, WeilDecoration};

const FIXTURE: &str = "fixture:";

/// An error destined for stderr as a machine-readable object.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        CliError { kind: kind.into(), message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::new("InvalidInput", message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<toric_acyclic::Error> for CliError {
    fn from(e: toric_acyclic::Error) -> Self {
        CliError::new(e.kind(), e.to_string())
    }
}

impl From<&DiagnosticError> for CliError {
    fn from(e: &DiagnosticError) -> Self {
        CliError::new(&e.kind, e.message.clone())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::new("Io", format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::new("SchemaViolation", format!("{path}: {e}")))
}

fn fixture_name(arg: &str) -> Option<&str> {
    arg.strip_prefix(FIXTURE)
}

fn unknown_fixture(name: &str) -> CliError {
    CliError::invalid(format!("unknown fixture '{name}'"))
}

pub fn fan_spec(arg: &str) -> CliResult<FanSpec> {
    match fixture_name(arg) {
        Some(name) => fixtures::fan_spec_by_name(name).ok_or_else(|| unknown_fixture(name)),
        None => read_json(arg),
    }
}

pub fn fan(arg: &str) -> CliResult<Fan> {
    Ok(Fan::from_spec(&fan_spec(arg)?)?)
}

pub fn decoration_spec(arg: &str) -> CliResult<DecorationSpec> {
    match fixture_name(arg) {
        Some(name) => Ok(fixture_decoration(name)?.1.to_spec()),
        None => read_json(arg),
    }
}

pub fn decoration(arg: &str) -> CliResult<WeilDecoration> {
    Ok(WeilDecoration::from_spec(&decoration_spec(arg)?)?)
}

pub fn sheaf(arg: &str) -> CliResult<ToricSheaf> {
    match fixture_name(arg) {
        Some(name) => Ok(ToricSheaf::from_decoration(&fixture_decoration(name)?.1)),
        None => Ok(ToricSheaf::from_spec(&read_json::<SheafSpec>(arg)?)?),
    }
}

fn fixture_decoration(name: &str) -> CliResult<(&'static str, WeilDecoration)> {
    fixtures::decoration_by_name(name).ok_or_else(|| unknown_fixture(name))
}

/// The fan named explicitly, or the fan a fixture decoration lives on.
pub fn fan_for(fan_arg: Option<&str>, object_arg: Option<&str>) -> CliResult<Fan> {
    if let Some(f) = fan_arg {
        return fan(f);
    }
    let name = object_arg.and_then(fixture_name).ok_or_else(|| CliError::invalid("--fan is required"))?;
    let (fan_name, _) = fixture_decoration(name)?;
    Ok(fixtures::fan_by_name(fan_name).unwrap())
}

/// Integers separated by commas, with optional surrounding brackets.
pub fn int_list(arg: &str) -> CliResult<Vec<i64>> {
    let body = arg.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| CliError::invalid(format!("'{s}' in '{arg}': {e}"))))
        .collect()
}

pub fn divisor(arg: &str, fan: &Fan) -> CliResult<TDivisor> {
    let d = TDivisor::new(int_list(arg)?);
    d.check_fan(fan)?;
    Ok(d)
}

pub fn degree(arg: &str, fan: &Fan) -> CliResult<Vec<i64>> {
    let m = int_list(arg)?;
    if m.len() != fan.dim() {
        return Err(CliError::invalid(format!("degree has {} entries, fan has dimension {}", m.len(), fan.dim())));
    }
    Ok(m)
}
