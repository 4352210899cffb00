//! Machine-readable reports. The human tables are rendered from these values.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use surgcalc_core::constructions::{Claim, ClaimStatus, ConstructionDossier};

use crate::catalog_file::MinimalJson;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatusJson {
    Pass,
    Fail,
    Unchecked,
}

impl From<ClaimStatus> for StatusJson {
    fn from(s: ClaimStatus) -> Self {
        match s {
            ClaimStatus::Pass => StatusJson::Pass,
            ClaimStatus::Fail => StatusJson::Fail,
            ClaimStatus::Unchecked => StatusJson::Unchecked,
        }
    }
}

impl StatusJson {
    pub fn of(ok: bool) -> Self {
        if ok {
            StatusJson::Pass
        } else {
            StatusJson::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            StatusJson::Pass => "pass",
            StatusJson::Fail => "FAIL",
            StatusJson::Unchecked => "unchecked",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimJson {
    pub id: String,
    pub status: StatusJson,
    pub evidence: String,
}

impl ClaimJson {
    pub fn new(id: impl Into<String>, status: StatusJson, evidence: impl Into<String>) -> Self {
        ClaimJson {
            id: id.into(),
            status,
            evidence: evidence.into(),
        }
    }
}

impl From<&Claim> for ClaimJson {
    fn from(c: &Claim) -> Self {
        ClaimJson::new(c.id.clone(), c.status.into(), c.evidence.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DossierJson {
    pub name: String,
    pub label: String,
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub chi_h: Option<i64>,
    pub b1: i64,
    pub b_plus: Option<i64>,
    pub b_minus: Option<i64>,
    pub h1: String,
    pub pi1_order: Option<u64>,
    pub pi1: String,
    pub simplified: String,
    pub minimal: MinimalJson,
    pub kodaira: String,
    pub claims: Vec<ClaimJson>,
    pub notes: Vec<String>,
}

impl DossierJson {
    pub fn of(d: &ConstructionDossier) -> Self {
        let inv = d.invariants();
        let h1 = d.h1();
        DossierJson {
            name: d.name.clone(),
            label: d.block.label.clone(),
            e: d.block.e,
            sigma: d.block.sigma,
            c1sq: d.block.c1_squared(),
            chi_h: d.block.chi_h(),
            b1: h1.free_rank as i64,
            b_plus: inv.map(|i| i.b_plus),
            b_minus: inv.map(|i| i.b_minus),
            h1: h1.to_string(),
            pi1_order: d.pi1_order,
            pi1: d.block.pi1.to_string(),
            simplified: d.simplified.to_string(),
            minimal: MinimalJson::of(&d.block.minimal),
            kodaira: d.block.kodaira.to_string(),
            claims: d.claims.iter().map(ClaimJson::from).collect(),
            notes: d.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub summary: String,
    pub checks: Vec<ClaimJson>,
    pub budget_exceeded: bool,
    pub data: serde_json::Value,
    pub notes: Vec<String>,
}

impl OutcomeJson {
    pub fn new(summary: impl Into<String>, data: serde_json::Value) -> Self {
        OutcomeJson {
            summary: summary.into(),
            checks: Vec::new(),
            budget_exceeded: false,
            data,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Body {
    Dossier(DossierJson),
    Outcome(OutcomeJson),
    Error { message: String },
}

impl Body {
    pub fn claims(&self) -> &[ClaimJson] {
        match self {
            Body::Dossier(d) => &d.claims,
            Body::Outcome(o) => &o.checks,
            Body::Error { .. } => &[],
        }
    }

    /// 1 for errors, 2 if any claim failed, 3 if a budget ran out, else 0.
    pub fn exit_code(&self) -> i32 {
        match self {
            Body::Error { .. } => EXIT_USAGE,
            _ if self.claims().iter().any(|c| c.status == StatusJson::Fail) => EXIT_FAIL,
            Body::Outcome(o) if o.budget_exceeded => EXIT_BUDGET,
            _ => EXIT_OK,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub exit_code: i32,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn new(command: Vec<String>, body: Body) -> Self {
        Report {
            command,
            exit_code: body.exit_code(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Plain-text table of the report.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ surgcalc {}", self.command.join(" "));
        match &self.body {
            Body::Dossier(d) => render_dossier(&mut out, d),
            Body::Outcome(o) => render_outcome(&mut out, o),
            Body::Error { message } => {
                let _ = writeln!(out, "error: {message}");
            }
        }
        let _ = writeln!(out, "exit {}", self.exit_code);
        out
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "?".into(), T::to_string)
}

fn render_claims(out: &mut String, claims: &[ClaimJson]) {
    if claims.is_empty() {
        return;
    }
    let w = claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let _ = writeln!(out, "claims:");
    for c in claims {
        let _ = writeln!(out, "  {:<9} {:<w$}  {}", c.status.label(), c.id, c.evidence);
    }
}

fn render_notes(out: &mut String, notes: &[String]) {
    for n in notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn render_dossier(out: &mut String, d: &DossierJson) {
    let _ = writeln!(out, "{}: {}", d.name, d.label);
    let _ = writeln!(
        out,
        "  e = {}, sigma = {}, c1^2 = {}, chi_h = {}",
        d.e,
        d.sigma,
        d.c1sq,
        opt(&d.chi_h)
    );
    let _ = writeln!(out, "  b1 = {}, b+ = {}, b- = {}", d.b1, opt(&d.b_plus), opt(&d.b_minus));
    let _ = writeln!(out, "  H1 = {}, |pi1| = {}", d.h1, opt(&d.pi1_order));
    let _ = writeln!(out, "  pi1 ~ {}", d.simplified);
    let minimal = match &d.minimal {
        MinimalJson::Yes { reason } => format!("yes ({reason})"),
        MinimalJson::No => "no".into(),
        MinimalJson::Unknown => "unknown".into(),
    };
    let _ = writeln!(out, "  minimal: {minimal}, kodaira: {}", d.kodaira);
    render_claims(out, &d.claims);
    render_notes(out, &d.notes);
}

fn inline(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => "-".into(),
        serde_json::Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(", "),
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join("  "),
        other => other.to_string(),
    }
}

fn render_outcome(out: &mut String, o: &OutcomeJson) {
    let _ = writeln!(out, "{}", o.summary);
    if let serde_json::Value::Object(map) = &o.data {
        for (k, v) in map {
            match v {
                serde_json::Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                    let _ = writeln!(out, "  {k}:");
                    for i in items {
                        let _ = writeln!(out, "    - {}", inline(i));
                    }
                }
                other => {
                    let _ = writeln!(out, "  {k}: {}", inline(other));
                }
            }
        }
    }
    if o.budget_exceeded {
        let _ = writeln!(out, "budget exceeded");
    }
    render_claims(out, &o.checks);
    render_notes(out, &o.notes);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut o = OutcomeJson::new("x", serde_json::json!({}));
        assert_eq!(Body::Outcome(o.clone()).exit_code(), EXIT_OK);
        o.checks.push(ClaimJson::new("a", StatusJson::Unchecked, ""));
        assert_eq!(Body::Outcome(o.clone()).exit_code(), EXIT_OK);
        o.budget_exceeded = true;
        assert_eq!(Body::Outcome(o.clone()).exit_code(), EXIT_BUDGET);
        o.checks.push(ClaimJson::new("b", StatusJson::Fail, ""));
        assert_eq!(Body::Outcome(o).exit_code(), EXIT_FAIL);
        assert_eq!(Body::Error { message: "m".into() }.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn round_trip() {
        let mut o = OutcomeJson::new("order 5", serde_json::json!({"order": 5}));
        o.notes.push("n".into());
        let r = Report::new(vec!["enumerate".into()], Body::Outcome(o));
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "outcome");
        assert_eq!(v["data"]["order"], 5);
    }
}
