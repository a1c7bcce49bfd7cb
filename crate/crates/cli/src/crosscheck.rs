//! External validation of the curve invariants (brute-force oracle) and of
//! the weight-3 dimensions (LMFDB tables for `Γ1(N)`).

use std::fmt::Write as _;

use emsurf_core::oracle::{crosscheck, oracle_invariants, OracleConfig};
use emsurf_core::{
    curve_invariants, dim_m3m_formula, fiber_configuration, surface_invariants, Subgroup,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cache::Cache;
use crate::error::{CliError, Result};
use crate::report::{Format, SCHEMA};
use crate::spec::GroupSpec;

pub const LMFDB_NAMESPACE: &str = "lmfdb";
pub const LMFDB_URL_ENV: &str = "EMSURF_LMFDB_URL";
const LMFDB_DEFAULT_BASE: &str = "https://www.lmfdb.org/api";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Oracle,
    Lmfdb,
}

impl std::str::FromStr for Source {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Source::Oracle),
            "lmfdb" => Ok(Source::Lmfdb),
            other => Err(CliError::Invalid(format!(
                "unknown source {other:?} (expected oracle or lmfdb)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub quantity: String,
    pub ours: String,
    pub reference: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub schema: String,
    pub spec: String,
    pub source: String,
    pub rows: Vec<ComparisonRow>,
    pub agree: bool,
}

fn row(quantity: &str, ours: impl ToString, reference: impl ToString) -> ComparisonRow {
    let (ours, reference) = (ours.to_string(), reference.to_string());
    ComparisonRow {
        quantity: quantity.into(),
        matches: ours == reference,
        ours,
        reference,
    }
}

pub fn oracle_comparison(spec: &str, g: &Subgroup) -> Result<Comparison> {
    let cspec = g
        .congruence_spec()
        .ok_or_else(|| emsurf_core::Error::NotCongruence(g.label().to_string()))?;
    let discrepancies = crosscheck(g)?;
    let oracle = oracle_invariants(cspec, &OracleConfig::default())?;
    let mut rows = Vec::new();
    match curve_invariants(g) {
        Ok(ci) => {
            rows.push(row("mu", ci.mu, oracle.mu));
            rows.push(row("eps3", ci.eps3, oracle.eps3));
            rows.push(row("g", ci.g, oracle.g));
            rows.push(row(
                "cusps",
                format!("{:?}", ci.cusp_signature()),
                format!("{:?}", oracle.cusps),
            ));
        }
        Err(e) => rows.push(row("curve_invariants", format!("error: {e}"), "ok")),
    }
    for d in discrepancies {
        if !rows.iter().any(|r| r.quantity == d.field) {
            rows.push(ComparisonRow {
                quantity: d.field,
                ours: d.main,
                reference: d.oracle,
                matches: false,
            });
        }
    }
    let agree = rows.iter().all(|r| r.matches);
    Ok(Comparison {
        schema: SCHEMA.into(),
        spec: spec.into(),
        source: "oracle".into(),
        rows,
        agree,
    })
}

pub fn lmfdb_query_url(level: u32) -> String {
    let base = std::env::var(LMFDB_URL_ENV).unwrap_or_else(|_| LMFDB_DEFAULT_BASE.to_string());
    format!("{base}/mf_gamma1/?level={level}&weight=3&_format=json")
}

/// Fetches (or reads from cache) the weight-3 `Γ1(N)` record.
pub fn fetch_lmfdb(level: u32, cache: &Cache, offline: bool) -> Result<Value> {
    let url = lmfdb_query_url(level);
    let body = match cache.get(LMFDB_NAMESPACE, &url) {
        Some(body) => body,
        None if offline => return Err(CliError::CacheMiss(url)),
        None => {
            let body = ureq::get(&url)
                .call()
                .map_err(|e| CliError::Network(format!("{url}: {e}")))?
                .body_mut()
                .read_to_string()
                .map_err(|e| CliError::Network(format!("{url}: {e}")))?;
            // only cache what parses
            serde_json::from_str::<Value>(&body)
                .map_err(|e| CliError::Network(format!("{url}: unparseable response: {e}")))?;
            cache.put(LMFDB_NAMESPACE, &url, &body);
            body
        }
    };
    serde_json::from_str(&body)
        .map_err(|e| CliError::Invalid(format!("cached response for {url} is not JSON: {e}")))
}

/// Pulls `(mf_dim, cusp_dim)` out of an `mf_gamma1` API response.
pub fn lmfdb_dims(response: &Value) -> Result<(Option<i64>, i64)> {
    let record = response
        .get("data")
        .and_then(|d| d.as_array())
        .and_then(|a| a.first())
        .ok_or_else(|| CliError::Invalid("LMFDB response has no data records".into()))?;
    let cusp = record
        .get("cusp_dim")
        .and_then(Value::as_i64)
        .ok_or_else(|| CliError::Invalid("LMFDB record lacks cusp_dim".into()))?;
    let mf = record.get("mf_dim").and_then(Value::as_i64);
    Ok((mf, cusp))
}

pub fn lmfdb_comparison(
    spec: &GroupSpec,
    g: &Subgroup,
    cache: &Cache,
    offline: bool,
) -> Result<Comparison> {
    let GroupSpec::Gamma1(level) = spec else {
        return Err(CliError::Invalid(format!(
            "LMFDB cross-check covers gamma1:N only, got {spec}"
        )));
    };
    let ci = curve_invariants(g)?;
    let si = surface_invariants(&ci, &fiber_configuration(&ci))?;
    let dim_m3 = dim_m3m_formula(&ci, 1)?;
    let response = fetch_lmfdb(*level, cache, offline)?;
    let (mf, cusp) = lmfdb_dims(&response)?;
    let mut rows = vec![row("dim S_3 (p_g)", si.p_g, cusp)];
    if let Some(mf) = mf {
        rows.push(row("dim M_3", dim_m3, mf));
    }
    let agree = rows.iter().all(|r| r.matches);
    Ok(Comparison {
        schema: SCHEMA.into(),
        spec: spec.to_string(),
        source: "lmfdb".into(),
        rows,
        agree,
    })
}

pub fn render_comparison(c: &Comparison, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(c).expect("comparison serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("quantity,ours,reference,matches\n");
            for r in &c.rows {
                let _ = writeln!(
                    out,
                    "\"{}\",\"{}\",\"{}\",{}",
                    r.quantity, r.ours, r.reference, r.matches
                );
            }
            out
        }
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "# crosscheck {} against {}\n", c.spec, c.source);
            let _ = writeln!(out, "| quantity | ours | {} | match |", c.source);
            let _ = writeln!(out, "|---|---|---|---|");
            for r in &c.rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    r.quantity,
                    r.ours,
                    r.reference,
                    if r.matches { "yes" } else { "NO" }
                );
            }
            let _ = writeln!(
                out,
                "\n**{}**",
                if c.agree {
                    "no discrepancies"
                } else {
                    "discrepancies found"
                }
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use emsurf_core::{build_congruence, builtin_spec};

    #[test]
    fn oracle_rows() {
        let g = build_congruence(&builtin_spec("gamma1", 7).unwrap()).unwrap();
        let c = oracle_comparison("gamma1:7", &g).unwrap();
        assert!(c.agree);
        assert_eq!(c.rows.len(), 4);
    }

    #[test]
    fn parses_api_shape() {
        let v: Value = serde_json::from_str(
            r#"{"data": [{"label": "7.3", "level": 7, "weight": 3, "cusp_dim": 1, "mf_dim": 7}]}"#,
        )
        .unwrap();
        assert_eq!(lmfdb_dims(&v).unwrap(), (Some(7), 1));
        let empty: Value = serde_json::from_str(r#"{"data": []}"#).unwrap();
        assert!(lmfdb_dims(&empty).is_err());
    }

    #[test]
    fn offline_miss_is_distinct() {
        let dir = tempfile::tempdir().unwrap();
        let err = fetch_lmfdb(7, &Cache::at(dir.path()), true).unwrap_err();
        assert!(matches!(err, CliError::CacheMiss(_)));
        assert_eq!(err.exit_code(), crate::error::ExitCode::Environment);
    }
}
