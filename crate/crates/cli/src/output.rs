//! What a job produces, and its JSON and markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hhadic::{DimTable, Verdict, VerificationReport};
use serde::{Deserialize, Serialize};

/// Result of a plain computation: graded tables plus a command-specific payload.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Computation {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub tables: Vec<DimTable>,
    pub data: serde_json::Value,
    pub flags: Vec<String>,
    pub verdict: Verdict,
}

impl Computation {
    pub fn new(command: &str) -> Computation {
        Computation {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            tables: Vec::new(),
            data: serde_json::Value::Null,
            flags: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Computation {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## {}\n", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "- `{k}` = `{v}`");
        }
        if !self.inputs.is_empty() {
            out.push('\n');
        }
        for t in &self.tables {
            out.push_str(&t.to_markdown());
        }
        if !self.data.is_null() {
            let body = serde_json::to_string_pretty(&self.data).expect("json value serializes");
            let _ = writeln!(out, "```json\n{body}\n```\n");
        }
        for f in &self.flags {
            let _ = writeln!(out, "- flag: {f}");
        }
        if self.verdict != Verdict::Pass {
            let _ = writeln!(out, "\n| status | {} |\n|---|---|", self.verdict.symbol());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Output {
    Report(VerificationReport),
    Computation(Computation),
}

impl Output {
    pub fn verdict(&self) -> Verdict {
        match self {
            Output::Report(r) => r.verdict,
            Output::Computation(c) => c.verdict,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Output::Report(r) => &r.check,
            Output::Computation(c) => &c.command,
        }
    }

    pub fn to_markdown(&self) -> String {
        match self {
            Output::Report(r) => r.to_markdown(),
            Output::Computation(c) => c.to_markdown(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

/// One output renders as an object, several as an array.
pub fn emit(outputs: &[Output], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = if outputs.len() == 1 { serde_json::to_string_pretty(&outputs[0]) } else { serde_json::to_string_pretty(outputs) }
                .expect("outputs serialize");
            s.push('\n');
            s
        }
        Format::Markdown => outputs.iter().map(Output::to_markdown).collect::<Vec<_>>().join("\n"),
    }
}

/// Inverse of `emit` in JSON form.
pub fn parse_outputs(text: &str) -> serde_json::Result<Vec<Output>> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.is_array() {
        serde_json::from_value(v)
    } else {
        Ok(vec![serde_json::from_value(v)?])
    }
}
