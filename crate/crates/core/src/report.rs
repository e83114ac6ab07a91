//! Rendering of jordan reports and ledger verification reports as JSON,
//! CSV, and Markdown. JSON comes from the typed structures, so two runs
//! with the same configuration are byte-identical once timing fields are
//! stripped.

use serde::Serialize;

use crate::error::Result;
use crate::jordan::{JordanReport, Value};
use crate::ledger::{CaseBound, CaseVerdict, TheoremResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "md" | "markdown" => Some(Format::Markdown),
            _ => None,
        }
    }
}

fn value_cells(v: &Value) -> (String, String, String) {
    match v {
        Value::Exact { exact } => (exact.to_string(), exact.to_string(), exact.to_string()),
        Value::Bounds { lower, upper } => {
            (String::new(), lower.to_string(), upper.to_string())
        }
    }
}

/// Fixed CSV column order for jordan reports:
/// `label,order,degree,nu,abar,j,j_lower,j_upper,jbar,jbar_lower,jbar_upper,method,timing_ms`
pub fn jordan_csv_header() -> &'static str {
    "label,order,degree,nu,abar,j,j_lower,j_upper,jbar,jbar_lower,jbar_upper,method,timing_ms"
}

pub fn jordan_csv_row(r: &JordanReport) -> String {
    let (j, j_lo, j_hi) = value_cells(&r.j);
    let (jb, jb_lo, jb_hi) = value_cells(&r.jbar);
    let abar = r.abar.map(|a| a.to_string()).unwrap_or_default();
    let timing = r.timing_ms.map(|t| t.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.label, r.order, r.degree, r.nu, abar, j, j_lo, j_hi, jb, jb_lo, jb_hi, r.method, timing
    )
}

pub fn render_jordan(r: &JordanReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(r)?,
        Format::Csv => format!("{}\n{}\n", jordan_csv_header(), jordan_csv_row(r)),
        Format::Markdown => {
            let (j, j_lo, j_hi) = value_cells(&r.j);
            let (jb, jb_lo, jb_hi) = value_cells(&r.jbar);
            let mut out = String::new();
            out.push_str(&format!("## {}\n\n", r.label));
            out.push_str("| quantity | value |\n|---|---|\n");
            out.push_str(&format!("| order | {} |\n", r.order));
            out.push_str(&format!("| degree | {} |\n", r.degree));
            out.push_str(&format!("| nu | {} |\n", r.nu));
            if let Some(abar) = r.abar {
                out.push_str(&format!("| abar | {abar} |\n"));
            }
            if j.is_empty() {
                out.push_str(&format!("| J | in [{j_lo}, {j_hi}] |\n"));
            } else {
                out.push_str(&format!("| J | {j} |\n"));
            }
            if jb.is_empty() {
                out.push_str(&format!("| Jbar | in [{jb_lo}, {jb_hi}] |\n"));
            } else {
                out.push_str(&format!("| Jbar | {jb} |\n"));
            }
            out.push_str(&format!("| method | {} |\n", r.method));
            if let Some(t) = r.timing_ms {
                out.push_str(&format!("| time (ms) | {t} |\n"));
            }
            out
        }
    })
}

/// Everything one `verify-paper` run produced.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifiedRow>,
    pub aggregates: Vec<TheoremResult>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifiedRow {
    pub id: String,
    pub field: String,
    pub kind: String,
    pub value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jbar: Option<u64>,
    pub quote: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub verdict: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

pub fn verified_rows(
    rows: &[CaseBound],
    verdicts: &[CaseVerdict],
    with_timing: bool,
) -> Vec<VerifiedRow> {
    rows.iter()
        .zip(verdicts)
        .map(|(row, verdict)| VerifiedRow {
            id: row.id.clone(),
            field: row.field.to_string(),
            kind: format!("{:?}", row.kind),
            value: row.value,
            jbar: row.jbar,
            quote: row.quote.clone(),
            witness: row.witness.clone(),
            verdict: verdict.verdict.to_string(),
            detail: verdict.detail.clone(),
            method: verdict.method.clone(),
            millis: if with_timing { verdict.millis } else { None },
        })
        .collect()
}

/// Fixed CSV column order for verification rows:
/// `case_id,field,kind,value,jbar,witness,verdict,method,millis,quote`
pub fn verification_csv(rows: &[VerifiedRow]) -> String {
    let mut out = String::from("case_id,field,kind,value,jbar,witness,verdict,method,millis,quote\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},\"{}\"\n",
            r.id,
            r.field,
            r.kind,
            r.value,
            r.jbar.map(|j| j.to_string()).unwrap_or_default(),
            r.witness.clone().unwrap_or_default(),
            r.verdict,
            r.method.clone().unwrap_or_default(),
            r.millis.map(|m| m.to_string()).unwrap_or_default(),
            r.quote.replace('"', "\"\""),
        ));
    }
    out
}

pub fn verification_markdown(report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str("| case | value | quote | witness | verdict | method | time (ms) |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for r in &report.rows {
        let value = match r.jbar {
            Some(jb) => format!("{} / {jb}", r.value),
            None => r.value.to_string(),
        };
        out.push_str(&format!(
            "| {} | {} | `{}` | {} | {} | {} | {} |\n",
            r.id,
            value,
            r.quote.replace('|', "\\|"),
            r.witness.clone().unwrap_or_else(|| "-".into()),
            r.verdict,
            r.method.clone().unwrap_or_else(|| "-".into()),
            r.millis.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
        ));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EngineConfig;
    use crate::construct;
    use crate::jordan;

    #[test]
    fn csv_has_the_documented_column_count() {
        let s3 = construct::symmetric(3).unwrap();
        let report = jordan::jordan_report(&s3, "S3", &EngineConfig::default()).unwrap();
        let header_cols = jordan_csv_header().split(',').count();
        let row_cols = jordan_csv_row(&report).split(',').count();
        assert_eq!(header_cols, 13);
        assert_eq!(row_cols, 13);
    }

    #[test]
    fn json_roundtrips_through_the_typed_report() {
        let s3 = construct::symmetric(3).unwrap();
        let report = jordan::jordan_report(&s3, "S3", &EngineConfig::default())
            .unwrap()
            .strip_timing();
        let json = render_jordan(&report, Format::Json).unwrap();
        let back: JordanReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.j, report.j);
        assert_eq!(back.jbar, report.jbar);
        assert_eq!(back.nu, report.nu);
        assert!(back.timing_ms.is_none());
    }

    #[test]
    fn stripped_reports_are_byte_identical_across_runs() {
        let cfg = EngineConfig::default();
        let g = construct::dihedral(6).unwrap();
        let a = render_jordan(
            &jordan::jordan_report(&g, "D6", &cfg).unwrap().strip_timing(),
            Format::Json,
        )
        .unwrap();
        let b = render_jordan(
            &jordan::jordan_report(&g, "D6", &cfg).unwrap().strip_timing(),
            Format::Json,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
