use std::collections::BTreeMap;
use std::fmt::Write;

use foliar_core::criterion::{Branch, Diagnostics, Status, Verdict};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    /// The primary route failed its hypotheses and the other route
    /// certified; allowed because both criteria are only sufficient.
    Consistent,
    Disagree,
    OutsideDomain,
}

impl Agreement {
    /// Equal statuses agree; a certified primary must be matched.
    pub fn compare(primary: Status, other: Status) -> Self {
        if primary == other {
            Agreement::Agree
        } else if primary == Status::Fail {
            Agreement::Consistent
        } else {
            Agreement::Disagree
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub route: &'static str,
    pub agreement: Agreement,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub oracles: Vec<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

impl RunReport {
    pub fn new(input: impl Into<String>, verdict: Verdict) -> Self {
        RunReport { input: input.into(), verdict, diagnostics: None, details: None, oracles: Vec::new(), timings_ms: None }
    }

    pub fn disagreement(&self) -> Option<String> {
        let bad: Vec<String> = self
            .oracles
            .iter()
            .filter(|o| o.agreement == Agreement::Disagree)
            .map(|o| format!("{} route says {}", o.route, o.status.map_or("nothing".into(), |s| s.to_string())))
            .collect();
        (!bad.is_empty()).then(|| format!("{}: verdict {} but {}", self.input, self.verdict.status, bad.join(", ")))
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return to_json(self);
        }
        let mut out = String::new();
        writeln!(out, "input: {}", self.input).unwrap();
        writeln!(out, "status: {}", self.verdict.status).unwrap();
        if !self.verdict.reasons.is_empty() {
            writeln!(out, "reasons: {}", join(&self.verdict.reasons)).unwrap();
        }
        writeln!(out, "twist regions: {}", self.verdict.twist_regions).unwrap();
        if !self.verdict.weights_g.is_empty() || !self.verdict.weights_r.is_empty() {
            writeln!(out, "weights: green {:?}, red {:?}", self.verdict.weights_g, self.verdict.weights_r).unwrap();
        }
        if let Some(d) = &self.diagnostics {
            let branch = match d.branch {
                Branch::Excluded => "excluded".to_string(),
                Branch::Main => "main".to_string(),
                Branch::TwoCircleFamily { m } => format!("two-circle family (m = {m})"),
                Branch::ConnectedSum => "connected sum".to_string(),
            };
            writeln!(out, "faces: {}, branch: {branch}", d.faces).unwrap();
            writeln!(out, "surgery: {}", d.augmentation.surgery).unwrap();
        }
        for o in &self.oracles {
            let agreement = serde_json::to_value(o.agreement).unwrap();
            write!(out, "{}: {}", o.route, agreement.as_str().unwrap()).unwrap();
            if let Some(s) = o.status {
                write!(out, " ({s})").unwrap();
            }
            out.push('\n');
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                writeln!(out, "time {k}: {v:.3} ms").unwrap();
            }
        }
        out
    }
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agreement_rules() {
        assert_eq!(Agreement::compare(Status::Certified, Status::Certified), Agreement::Agree);
        assert_eq!(Agreement::compare(Status::Fail, Status::Certified), Agreement::Consistent);
        assert_eq!(Agreement::compare(Status::Certified, Status::Fail), Agreement::Disagree);
        assert_eq!(Agreement::compare(Status::Excluded, Status::Fail), Agreement::Disagree);
    }
}
