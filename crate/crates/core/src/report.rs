//! Run reports: command echo, input digest, verdicts and artifact output.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One pass/fail verdict. Failures always carry a locator: an identity name,
/// a link index, a field path or a point witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locator: Option<String>,
    pub detail: String,
}

impl Verdict {
    pub fn pass(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            passed: true,
            locator: None,
            detail: detail.into(),
        }
    }

    pub fn fail(check: impl Into<String>, locator: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            passed: false,
            locator: Some(locator.into()),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub output: Value,
}

/// SHA-256 over the length-prefixed input texts, hex encoded.
pub fn inputs_digest<'a>(inputs: impl IntoIterator<Item = &'a str>) -> String {
    let mut h = Sha256::new();
    for text in inputs {
        h.update((text.len() as u64).to_le_bytes());
        h.update(text.as_bytes());
    }
    hex::encode(h.finalize())
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.passed)
    }

    pub fn to_json(&self) -> String {
        crate::io::to_json(self)
    }

    /// `check,passed,locator,detail` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,passed,locator,detail\n");
        for v in &self.verdicts {
            let row = [
                v.check.as_str(),
                if v.passed { "true" } else { "false" },
                v.locator.as_deref().unwrap_or(""),
                v.detail.as_str(),
            ];
            out.push_str(&csv_row(&row));
        }
        out
    }

    /// One `PASS`/`FAIL` line per verdict, then warnings.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let tag = if v.passed { "PASS" } else { "FAIL" };
            match &v.locator {
                Some(l) => writeln!(out, "{tag} {}: {} [at {l}]", v.check, v.detail),
                None => writeln!(out, "{tag} {}: {}", v.check, v.detail),
            }
            .expect("write to string");
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").expect("write to string");
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "time: {ms} ms").expect("write to string");
        }
        out
    }
}

/// One CSV record with RFC 4180 quoting.
pub fn csv_row(fields: &[&str]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.to_string()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}
