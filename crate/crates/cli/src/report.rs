//! The `emsurf/1` report document and its json / csv / markdown renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use emsurf_core::dimensions::{CanonicalEntry, Check, EvenWeightEntry};
use emsurf_core::surface::Fiber;
use emsurf_core::{verify_group_range, CurveInvariants, Subgroup, SurfaceInvariants, WeightEntry};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA: &str = "emsurf/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Inclusive range of grading indices `m`, written `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRange {
    pub from: i64,
    pub to: i64,
}

impl Default for WeightRange {
    fn default() -> Self {
        WeightRange { from: 0, to: 12 }
    }
}

impl FromStr for WeightRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Invalid(format!("bad weight range {s:?}, expected A..B"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let from: i64 = a.trim().parse().map_err(|_| bad())?;
        let to: i64 = b.trim().parse().map_err(|_| bad())?;
        if from < 0 || to < from {
            return Err(bad());
        }
        Ok(WeightRange { from, to })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(CliError::Invalid(format!(
                "unknown format {other:?} (expected json, csv or md)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub label: String,
    pub origin: String,
    pub level: Option<u32>,
    pub index: usize,
    pub minus_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub generated_at: String,
    pub spec: String,
    pub group: GroupInfo,
    pub weights: WeightRange,
    pub curve: Option<CurveInvariants>,
    pub fibers: Option<Vec<Fiber>>,
    pub surface: Option<SurfaceInvariants>,
    pub theorem_table: Vec<WeightEntry>,
    pub even_weight_table: Vec<EvenWeightEntry>,
    pub canonical_table: Vec<CanonicalEntry>,
    pub checks: Vec<Check>,
    pub verdict: bool,
    /// Set when the theorem tables were withheld.
    pub refusal: Option<String>,
}

impl ReportDocument {
    pub fn refused(&self) -> bool {
        self.refusal.is_some()
    }
}

pub fn now_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Builds the report. Groups containing `-1` get their base data and a
/// refusal notice in place of the theorem tables.
pub fn build_report(
    spec: &str,
    g: &Subgroup,
    weights: WeightRange,
    timestamp: &str,
) -> Result<ReportDocument> {
    let group = GroupInfo {
        label: g.label().to_string(),
        origin: match g.congruence_spec() {
            Some(_) => "congruence".into(),
            None => "permutation".into(),
        },
        level: g.congruence_spec().map(|c| c.level),
        index: g.index(),
        minus_one: g.minus_one,
    };
    let mut doc = ReportDocument {
        schema: SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        generated_at: timestamp.into(),
        spec: spec.into(),
        group,
        weights,
        curve: None,
        fibers: None,
        surface: None,
        theorem_table: Vec::new(),
        even_weight_table: Vec::new(),
        canonical_table: Vec::new(),
        checks: Vec::new(),
        verdict: false,
        refusal: None,
    };
    if g.minus_one {
        doc.refusal = Some(format!(
            "{} contains -1; the dimension identities are stated only for subgroups without -1",
            g.label()
        ));
        return Ok(doc);
    }
    let r = verify_group_range(g, weights.from..=weights.to)?;
    doc.curve = Some(r.curve);
    doc.fibers = Some(r.fibers.fibers);
    doc.surface = Some(r.surface);
    doc.theorem_table = r.entries;
    doc.even_weight_table = r.even_entries;
    doc.canonical_table = r.canonical_entries;
    doc.checks = r.checks;
    doc.verdict = r.verdict;
    Ok(doc)
}

pub fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => render_json(doc),
        Format::Csv => render_csv(doc),
        Format::Md => render_md(doc),
    }
}

pub fn render_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

pub const CSV_HEADER: &str = "group,table,m,weight,value_a,value_b,agree";

pub fn render_csv(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let label = &doc.group.label;
    if doc.refused() {
        let _ = writeln!(out, "{label},refused,,,,,false");
        return out;
    }
    for e in &doc.theorem_table {
        let _ = writeln!(
            out,
            "{label},theorem,{},{},{},{},{}",
            e.m, e.weight, e.side_a, e.side_b, e.agree
        );
    }
    for e in &doc.even_weight_table {
        let _ = writeln!(out, "{label},even_weight,{},{},{},,", e.m, e.weight, e.dim);
    }
    for e in &doc.canonical_table {
        let _ = writeln!(out, "{label},canonical,{},{},{},,", e.m, 3 * e.m, e.dim);
    }
    let _ = writeln!(out, "{label},verdict,,,,,{}", doc.verdict);
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_md(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let g = &doc.group;
    let _ = writeln!(out, "# emsurf report: {}\n", g.label);
    let _ = writeln!(out, "- spec: `{}`", doc.spec);
    let _ = writeln!(out, "- origin: {}", g.origin);
    if let Some(level) = g.level {
        let _ = writeln!(out, "- level: {level}");
    }
    let _ = writeln!(out, "- index in SL2(Z): {}", g.index);
    let _ = writeln!(out, "- contains -1: {}", yes_no(g.minus_one));
    let _ = writeln!(
        out,
        "- generated: {} (emsurf {})\n",
        doc.generated_at, doc.tool_version
    );

    if let Some(reason) = &doc.refusal {
        let _ = writeln!(out, "**Theorem tables withheld:** {reason}");
        return out;
    }

    if let Some(ci) = &doc.curve {
        let _ = writeln!(out, "## Modular curve\n");
        let _ = writeln!(out, "| mu | g | eps3 | eps_reg | eps_irr |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |\n",
            ci.mu, ci.g, ci.eps3, ci.eps_reg, ci.eps_irr
        );
        let _ = writeln!(out, "| cusp | width | SL width | regular |");
        let _ = writeln!(out, "|---|---|---|---|");
        for c in &ci.cusps {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                c.label,
                c.psl_width,
                c.sl_width,
                yes_no(c.regular)
            );
        }
        out.push('\n');
    }
    if let (Some(fibers), Some(si)) = (&doc.fibers, &doc.surface) {
        let _ = writeln!(out, "## Elliptic modular surface\n");
        let kinds: Vec<String> = fibers
            .iter()
            .map(|f| format!("{} over {}", f.kind, f.base))
            .collect();
        let _ = writeln!(out, "Singular fibres: {}\n", kinds.join(", "));
        let _ = writeln!(out, "| e | chi | q | p_g | deg L | class |");
        let _ = writeln!(out, "|---|---|---|---|---|---|");
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {:?} |\n",
            si.e, si.chi, si.q, si.p_g, si.deg_l, si.class
        );
    }

    let _ = writeln!(out, "## Weight 3m\n");
    let _ = writeln!(out, "| m | weight | dim M_3m | h0(K^m(mD)) | agree |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    for e in &doc.theorem_table {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            e.m,
            e.weight,
            e.side_a,
            e.side_b,
            yes_no(e.agree)
        );
    }
    let _ = writeln!(out, "\n## Weight 2m\n");
    let _ = writeln!(out, "| m | weight | dim M_2m |");
    let _ = writeln!(out, "|---|---|---|");
    for e in &doc.even_weight_table {
        let _ = writeln!(out, "| {} | {} | {} |", e.m, e.weight, e.dim);
    }
    let _ = writeln!(out, "\n## Canonical ring\n");
    let _ = writeln!(out, "| m | h0(K^m) |");
    let _ = writeln!(out, "|---|---|");
    for e in &doc.canonical_table {
        let _ = writeln!(out, "| {} | {} |", e.m, e.dim);
    }
    let _ = writeln!(out, "\n## Checks\n");
    for c in &doc.checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "- {mark} `{}`: {}", c.name, c.detail);
    }
    let _ = writeln!(
        out,
        "\n**Verdict: {}**",
        if doc.verdict { "PASS" } else { "FAIL" }
    );
    out
}
