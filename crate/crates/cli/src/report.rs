use std::fs;
use std::io::{self, Write};

use bcring::approx::ApproxError;
use bcring::complexify::ComplexError;
use bcring::duality::DualityError;
use bcring::json::JsonError;
use bcring::spectra::SpectraError;
use serde_json::{json, Value};

use crate::{Cli, Verb};

pub const SCHEMA: &str = "bcring-report/1";

/// A completed command: the report and whether the property held.
pub struct Outcome {
    pub property: &'static str,
    pub holds: bool,
    pub result: Value,
}

pub enum Failure {
    /// The input does not parse or does not describe a valid object.
    Schema(String),
    /// A hypothesis of the property fails, e.g. a residue field is too large.
    Refusal { property: &'static str, kind: &'static str, message: String },
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::Schema(e.to_string())
    }
}

/// Sorts library errors into refusals and input errors.
pub trait Classify {
    fn refusal_kind(&self) -> Option<&'static str>;
}

impl Classify for SpectraError {
    fn refusal_kind(&self) -> Option<&'static str> {
        match self {
            SpectraError::NotKValued => Some("NotKValued"),
            SpectraError::DimensionCap { .. } => Some("DimensionCap"),
            SpectraError::Exact(bcring::exact::ExactError::NormCapExceeded { .. }) => Some("NormCapExceeded"),
            _ => None,
        }
    }
}

impl Classify for DualityError {
    fn refusal_kind(&self) -> Option<&'static str> {
        match self {
            DualityError::Spectra(e) => e.refusal_kind(),
            DualityError::NotBcRing => Some("NotBcRing"),
            _ => None,
        }
    }
}

impl Classify for ComplexError {
    fn refusal_kind(&self) -> Option<&'static str> {
        match self {
            ComplexError::Spectra(e) => e.refusal_kind(),
            ComplexError::Duality(e) => e.refusal_kind(),
            _ => None,
        }
    }
}

impl Classify for ApproxError {
    fn refusal_kind(&self) -> Option<&'static str> {
        match self {
            ApproxError::InsufficientDepth { .. } => Some("InsufficientDepth"),
            _ => None,
        }
    }
}

/// Maps a library error to a refusal when it is one, else to an input error.
pub fn classify<E: Classify + std::fmt::Display>(property: &'static str) -> impl Fn(E) -> Failure {
    move |e| match e.refusal_kind() {
        Some(kind) => Failure::Refusal { property, kind, message: e.to_string() },
        None => Failure::Schema(e.to_string()),
    }
}

pub fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::RingMspec => "ring-mspec",
        Verb::RingSplit => "ring-split",
        Verb::DualityRoundtrip => "duality-roundtrip",
        Verb::Scc => "scc",
        Verb::NormCheck => "norm-check",
        Verb::ProfiniteRefine => "profinite-refine",
        Verb::ApproxDensity => "approx-density",
        Verb::ComplexHermitian => "complex-hermitian",
        Verb::ComplexRoundtrip => "complex-roundtrip",
        Verb::DemoNonfunctorial => "demo-nonfunctorial",
        Verb::DemoNonhausdorff => "demo-nonhausdorff",
        Verb::Suite { .. } => "suite",
    }
}

fn render(cli: &Cli, outcome: Result<Outcome, Failure>) -> Value {
    let command = verb_name(&cli.verb);
    match outcome {
        Ok(o) => json!({"schema": SCHEMA, "command": command, "property": o.property, "holds": o.holds, "result": o.result}),
        Err(Failure::Schema(message)) => {
            json!({"schema": SCHEMA, "command": command, "error": "SchemaError", "message": message})
        }
        Err(Failure::Refusal { property, kind, message }) => {
            json!({"schema": SCHEMA, "command": command, "property": property, "error": kind, "message": message})
        }
    }
}

pub fn emit(cli: &Cli, outcome: Result<Outcome, Failure>) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(&render(cli, outcome)).expect("values serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
