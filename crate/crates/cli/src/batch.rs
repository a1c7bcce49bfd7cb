//! Batch verification over a file of group specs, one per line.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::error::ExitCode;
use crate::groups::load_group;
use crate::report::{build_report, Format, ReportDocument, WeightRange, SCHEMA};
use crate::spec::parse_group_spec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Evaluated { report: Box<ReportDocument> },
    Error { message: String, exit_code: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub line: usize,
    pub spec: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl BatchRow {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Outcome::Evaluated { report } if report.verdict)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub groups: usize,
    pub passed: usize,
    pub failed: usize,
    pub refused: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchDocument {
    pub schema: String,
    pub rows: Vec<BatchRow>,
    pub summary: Summary,
}

/// Spec lines with their 1-based line numbers; blank lines and `#` comments
/// are skipped.
pub fn spec_lines(contents: &str) -> Vec<(usize, String)> {
    contents
        .lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then(|| (i + 1, l.to_string()))
        })
        .collect()
}

/// Evaluates every line independently (in parallel); rows keep input order.
pub fn run_batch(
    contents: &str,
    weights: WeightRange,
    cache: &Cache,
    timestamp: &str,
) -> BatchDocument {
    let rows: Vec<BatchRow> = spec_lines(contents)
        .into_par_iter()
        .map(|(line, spec)| {
            let outcome = parse_group_spec(&spec)
                .map_err(crate::error::CliError::from)
                .and_then(|gs| load_group(&gs, cache))
                .and_then(|g| build_report(&spec, &g, weights, timestamp));
            let outcome = match outcome {
                Ok(report) => Outcome::Evaluated {
                    report: Box::new(report),
                },
                Err(e) => Outcome::Error {
                    message: e.to_string(),
                    exit_code: e.exit_code() as i32,
                },
            };
            BatchRow {
                line,
                spec,
                outcome,
            }
        })
        .collect();

    let mut summary = Summary {
        groups: rows.len(),
        passed: 0,
        failed: 0,
        refused: 0,
        errors: 0,
    };
    for r in &rows {
        match &r.outcome {
            Outcome::Evaluated { report } if report.refused() => summary.refused += 1,
            Outcome::Evaluated { report } if report.verdict => summary.passed += 1,
            Outcome::Evaluated { .. } => summary.failed += 1,
            Outcome::Error { .. } => summary.errors += 1,
        }
    }
    BatchDocument {
        schema: SCHEMA.into(),
        rows,
        summary,
    }
}

/// 0 iff every group passed; 2 if any line was invalid (or refused under
/// `strict`); otherwise 1.
pub fn batch_exit_code(doc: &BatchDocument, strict: bool) -> ExitCode {
    let s = &doc.summary;
    if s.errors > 0 || (strict && s.refused > 0) {
        ExitCode::Invalid
    } else if s.passed == s.groups {
        ExitCode::Success
    } else {
        ExitCode::Failure
    }
}

const COLUMNS: [&str; 13] = [
    "line", "spec", "mu", "g", "eps3", "eps_reg", "eps_irr", "e", "chi", "p_g", "pieces",
    "verdict", "note",
];

fn row_cells(r: &BatchRow) -> Vec<String> {
    let mut cells = vec![r.line.to_string(), r.spec.clone()];
    match &r.outcome {
        Outcome::Evaluated { report } => match (&report.curve, &report.surface) {
            (Some(ci), Some(si)) => {
                let agree = report.theorem_table.iter().filter(|e| e.agree).count();
                cells.extend([
                    ci.mu.to_string(),
                    ci.g.to_string(),
                    ci.eps3.to_string(),
                    ci.eps_reg.to_string(),
                    ci.eps_irr.to_string(),
                    si.e.to_string(),
                    si.chi.to_string(),
                    si.p_g.to_string(),
                    format!("{agree}/{}", report.theorem_table.len()),
                    if report.verdict { "pass" } else { "fail" }.to_string(),
                    String::new(),
                ]);
            }
            _ => {
                cells.extend(std::iter::repeat_n(String::new(), 9));
                cells.push("refused".into());
                cells.push(report.refusal.clone().unwrap_or_default());
            }
        },
        Outcome::Error { message, .. } => {
            cells.extend(std::iter::repeat_n(String::new(), 9));
            cells.push("error".into());
            cells.push(message.clone());
        }
    }
    cells
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_batch(doc: &BatchDocument, format: Format) -> String {
    let s = &doc.summary;
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(doc).expect("batch serializes");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = COLUMNS.join(",");
            out.push('\n');
            for r in &doc.rows {
                let cells: Vec<String> = row_cells(r).iter().map(|c| csv_escape(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            let _ = writeln!(
                out,
                ",summary,,,,,,,,,{}/{} passed,,{} failed; {} refused; {} errors",
                s.passed, s.groups, s.failed, s.refused, s.errors
            );
            out
        }
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", COLUMNS.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(COLUMNS.len()));
            for r in &doc.rows {
                let cells: Vec<String> =
                    row_cells(r).iter().map(|c| c.replace('|', "\\|")).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
            let _ = writeln!(
                out,
                "\n**{} of {} groups passed** ({} failed, {} refused, {} errors)",
                s.passed, s.groups, s.failed, s.refused, s.errors
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(contents: &str) -> BatchDocument {
        run_batch(
            contents,
            WeightRange { from: 0, to: 4 },
            &Cache::disabled(),
            "T",
        )
    }

    #[test]
    fn comments_and_blank_lines() {
        let lines = spec_lines("# corpus\n\ngamma1:4  # comment\n  gamma:3\n");
        assert_eq!(lines, vec![(3, "gamma1:4".into()), (4, "gamma:3".into())]);
    }

    #[test]
    fn empty_file() {
        let doc = run("");
        assert!(doc.rows.is_empty());
        assert_eq!(batch_exit_code(&doc, false), ExitCode::Success);
    }

    #[test]
    fn bad_line_does_not_abort() {
        let doc = run("gamma1:4\ngamma:0\ngamma:3\n");
        assert_eq!(doc.rows.len(), 3);
        assert!(doc.rows[0].passed());
        assert!(matches!(doc.rows[1].outcome, Outcome::Error { .. }));
        assert!(doc.rows[2].passed());
        assert_eq!(doc.summary.errors, 1);
        assert_eq!(batch_exit_code(&doc, false), ExitCode::Invalid);
    }

    #[test]
    fn refused_groups() {
        let doc = run("gamma1:2\n");
        assert_eq!(doc.summary.refused, 1);
        assert_eq!(batch_exit_code(&doc, false), ExitCode::Failure);
        assert_eq!(batch_exit_code(&doc, true), ExitCode::Invalid);
    }

    #[test]
    fn order_is_preserved() {
        let specs: Vec<String> = (3..=10).rev().map(|n| format!("gamma1:{n}")).collect();
        let doc = run(&specs.join("\n"));
        let got: Vec<&str> = doc.rows.iter().map(|r| r.spec.as_str()).collect();
        assert_eq!(got, specs.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(batch_exit_code(&doc, false), ExitCode::Success);
    }

    #[test]
    fn renderings() {
        let doc = run("gamma1:4\ngamma:0\n");
        let csv = render_batch(&doc, Format::Csv);
        assert!(csv.starts_with("line,spec,mu"));
        assert!(csv.contains("1,gamma1:4,6,0,0,2,1,12,1,0,5/5,pass,"));
        let md = render_batch(&doc, Format::Md);
        assert!(md.contains("**1 of 2 groups passed**"));
        let json: serde_json::Value =
            serde_json::from_str(&render_batch(&doc, Format::Json)).unwrap();
        assert_eq!(json["summary"]["passed"], 1);
        assert_eq!(json["rows"][1]["status"], "error");
    }
}
