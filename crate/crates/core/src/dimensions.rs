//! Both sides of the graded dimension identities.
//!
//! Side A is the closed-form dimension of `M_{3m}(Γ)`:
//! `(3m−1)(g−1) + m·ε3 + (3m/2)·ε_reg + ⌊3m/2⌋·ε_irr`.
//!
//! Side B is `h^0(K_S^m(m·D_reg + ⌊m/2⌋·D_irr))`, obtained by pushing the
//! bundle down to `X_Γ` (canonical bundle formula `K_S = π^*(K_X ⊗ L)` with
//! `deg L = χ`) and applying Riemann–Roch there.
//!
//! Every quantity is an exact integer; non-integrality is an error.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::curve::{curve_invariants, CurveInvariants};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::surface::{
    fiber_configuration, surface_invariants, FiberConfiguration, SurfaceInvariants,
};

/// `h^0` of a line bundle of degree `deg` on a genus-`g` curve, when the
/// degree alone determines it.
pub fn rr_h0(g: i64, deg: i64) -> Result<i64> {
    if g < 0 {
        return Err(Error::Negative(format!("genus {g}")));
    }
    if deg < 0 {
        Ok(0)
    } else if deg > 2 * g - 2 {
        Ok(deg + 1 - g)
    } else {
        Err(Error::AmbiguousRange {
            genus: g,
            degree: deg,
        })
    }
}

/// Side A: `dim M_{3m}(Γ)` from the closed formula; `m = 0` gives 1.
pub fn dim_m3m_formula(ci: &CurveInvariants, m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::Negative(format!("grading index m = {m}")));
    }
    if m == 0 {
        return Ok(1);
    }
    let reg_term = 3 * m * ci.eps_reg;
    if reg_term % 2 != 0 {
        return Err(Error::NonIntegral(format!(
            "(3m/2)·eps_reg with m = {m}, eps_reg = {}",
            ci.eps_reg
        )));
    }
    let dim = (3 * m - 1) * (ci.g - 1) + m * ci.eps3 + reg_term / 2 + (3 * m / 2) * ci.eps_irr;
    if dim < 0 {
        return Err(Error::Negative(format!("dim M_{} = {dim}", 3 * m)));
    }
    Ok(dim)
}

/// Degree on `X_Γ` of the push-forward of `K_S^m(m·D_reg + ⌊m/2⌋·D_irr)`.
pub fn log_canonical_degree(ci: &CurveInvariants, si: &SurfaceInvariants, m: i64) -> i64 {
    m * (2 * ci.g - 2) + m * si.chi + m * ci.eps_reg + (m / 2) * ci.eps_irr
}

/// Side B: `h^0(K_S^m(mD))` via the canonical bundle formula and
/// Riemann–Roch on `X_Γ`; `m = 0` gives 1.
pub fn dim_geometric(ci: &CurveInvariants, si: &SurfaceInvariants, m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::Negative(format!("grading index m = {m}")));
    }
    if m == 0 {
        return Ok(1);
    }
    rr_h0(ci.g, log_canonical_degree(ci, si, m))
}

/// `dim M_{2m}(Γ) = h^0(K_X^m(m·Δ + ⌊2m/3⌋·B))`, `B` the order-3 elliptic
/// points.
pub fn dim_even_weight(ci: &CurveInvariants, m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::Negative(format!("grading index m = {m}")));
    }
    if m == 0 {
        return Ok(1);
    }
    let deg = m * (2 * ci.g - 2) + m * ci.eps_cusps() + (2 * m / 3) * ci.eps3;
    rr_h0(ci.g, deg)
}

/// `h^0(K_S^m) = h^0(K_X^m ⊗ L^m)`; equals `p_g` at `m = 1`.
pub fn dim_canonical_ring(ci: &CurveInvariants, si: &SurfaceInvariants, m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::Negative(format!("grading index m = {m}")));
    }
    if m == 0 {
        return Ok(1);
    }
    rr_h0(ci.g, m * (2 * ci.g - 2) + m * si.chi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub m: i64,
    pub weight: i64,
    pub side_a: i64,
    pub side_b: i64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenWeightEntry {
    pub m: i64,
    pub weight: i64,
    pub dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalEntry {
    pub m: i64,
    pub dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub label: String,
    pub curve: CurveInvariants,
    pub fibers: FiberConfiguration,
    pub surface: SurfaceInvariants,
    pub entries: Vec<WeightEntry>,
    pub even_entries: Vec<EvenWeightEntry>,
    pub canonical_entries: Vec<CanonicalEntry>,
    pub checks: Vec<Check>,
    pub verdict: bool,
}

impl DimensionReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs both pipelines for `m = 0..=m_max` and every consistency check.
pub fn verify_group(g: &Subgroup, m_max: i64) -> Result<DimensionReport> {
    verify_group_range(g, 0..=m_max)
}

/// As [`verify_group`] over an arbitrary range of grading indices.
pub fn verify_group_range(g: &Subgroup, ms: RangeInclusive<i64>) -> Result<DimensionReport> {
    g.require_no_minus_one()?;
    if *ms.start() < 0 {
        return Err(Error::Negative(format!("grading index m = {}", ms.start())));
    }
    let ci = curve_invariants(g)?;
    let fc = fiber_configuration(&ci);
    let si = surface_invariants(&ci, &fc)?;
    let m_max = *ms.end();

    let entries = ms
        .clone()
        .map(|m| {
            let side_a = dim_m3m_formula(&ci, m)?;
            let side_b = dim_geometric(&ci, &si, m)?;
            Ok(WeightEntry {
                m,
                weight: 3 * m,
                side_a,
                side_b,
                agree: side_a == side_b,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let even_entries = (1..=3 * m_max / 2)
        .map(|m| {
            Ok(EvenWeightEntry {
                m,
                weight: 2 * m,
                dim: dim_even_weight(&ci, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let canonical_entries = ms
        .clone()
        .map(|m| {
            Ok(CanonicalEntry {
                m,
                dim: dim_canonical_ring(&ci, &si, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();

    let disagreements: Vec<i64> = entries.iter().filter(|e| !e.agree).map(|e| e.m).collect();
    checks.push(Check::new(
        "side_a_equals_side_b",
        disagreements.is_empty(),
        if disagreements.is_empty() {
            format!("{} graded pieces agree", entries.len())
        } else {
            format!("disagreement at m = {disagreements:?}")
        },
    ));

    let mut sixfold_bad = Vec::new();
    let mut sixfold_count = 0;
    for m in (2..=m_max).step_by(2) {
        let a = dim_m3m_formula(&ci, m)?;
        let b = dim_even_weight(&ci, 3 * m / 2)?;
        sixfold_count += 1;
        if a != b {
            sixfold_bad.push(3 * m);
        }
    }
    checks.push(Check::new(
        "sixfold_consistency",
        sixfold_bad.is_empty(),
        if sixfold_bad.is_empty() {
            format!("{sixfold_count} weights divisible by 6 agree")
        } else {
            format!("weight-3m and weight-2m pipelines differ at weights {sixfold_bad:?}")
        },
    ));

    let eis = dim_m3m_formula(&ci, 1)? - si.p_g;
    checks.push(Check::new(
        "eisenstein_count",
        eis == ci.eps_reg,
        format!("dim M_3 - p_g = {eis}, eps_reg = {}", ci.eps_reg),
    ));

    let widths: i64 = ci.cusps.iter().map(|c| c.psl_width).sum();
    checks.push(Check::new(
        "cusp_widths_sum_to_mu",
        widths == ci.mu,
        format!("sum of widths {widths}, mu = {}", ci.mu),
    ));

    checks.push(Check::new(
        "euler_divisible_by_12",
        si.e % 12 == 0 && si.chi >= 1 && si.p_g >= 0,
        format!("e = {}, chi = {}, p_g = {}", si.e, si.chi, si.p_g),
    ));

    let canon1 = dim_canonical_ring(&ci, &si, 1)?;
    checks.push(Check::new(
        "canonical_ring_m1_equals_pg",
        canon1 == si.p_g,
        format!("h0(K_S) = {canon1}, p_g = {}", si.p_g),
    ));

    let verdict = checks.iter().all(|c| c.passed);
    Ok(DimensionReport {
        label: g.label().to_string(),
        curve: ci,
        fibers: fc,
        surface: si,
        entries,
        even_entries,
        canonical_entries,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{build_congruence, builtin_spec};

    fn data(name: &str, n: i64) -> (Subgroup, CurveInvariants, SurfaceInvariants) {
        let g = build_congruence(&builtin_spec(name, n).unwrap()).unwrap();
        let ci = curve_invariants(&g).unwrap();
        let si = surface_invariants(&ci, &fiber_configuration(&ci)).unwrap();
        (g, ci, si)
    }

    #[test]
    fn riemann_roch_ranges() {
        assert_eq!(rr_h0(0, -1).unwrap(), 0);
        assert_eq!(rr_h0(0, 5).unwrap(), 6);
        assert_eq!(
            rr_h0(1, 0),
            Err(Error::AmbiguousRange {
                genus: 1,
                degree: 0
            })
        );
        assert_eq!(rr_h0(3, 5).unwrap(), 3);
        assert!(rr_h0(3, 4).is_err());
    }

    #[test]
    fn side_a_examples() {
        let (_, ci, _) = data("gamma1", 4);
        assert_eq!(dim_m3m_formula(&ci, 1).unwrap(), 2);
        assert_eq!(dim_m3m_formula(&ci, 0).unwrap(), 1);
        let (_, ci, _) = data("gamma", 3);
        assert_eq!(dim_m3m_formula(&ci, 1).unwrap(), 4);
    }

    #[test]
    fn side_a_rejects_half_integers() {
        let (_, mut ci, _) = data("gamma1", 4);
        ci.eps_reg = 3;
        assert!(matches!(
            dim_m3m_formula(&ci, 1),
            Err(Error::NonIntegral(_))
        ));
        assert!(dim_m3m_formula(&ci, 2).is_ok());
    }

    #[test]
    fn side_b_examples() {
        let (_, ci, si) = data("gamma1", 4);
        assert_eq!(log_canonical_degree(&ci, &si, 1), 1);
        assert_eq!(dim_geometric(&ci, &si, 1).unwrap(), 2);
        assert_eq!(log_canonical_degree(&ci, &si, 2), 3);
        assert_eq!(dim_geometric(&ci, &si, 2).unwrap(), 4);
        let (_, ci, si) = data("gamma1", 11);
        assert_eq!(log_canonical_degree(&ci, &si, 1), 15);
        assert_eq!(dim_geometric(&ci, &si, 1).unwrap(), 15);
    }

    #[test]
    fn even_weight_examples() {
        let (_, ci, _) = data("gamma1", 4);
        assert_eq!(dim_even_weight(&ci, 1).unwrap(), 2);
        assert_eq!(dim_even_weight(&ci, 3).unwrap(), 4);
        let (_, ci, _) = data("gamma1", 3);
        assert_eq!(dim_even_weight(&ci, 3).unwrap(), 3);
    }

    #[test]
    fn canonical_ring_examples() {
        let (_, ci, si) = data("gamma1", 7);
        assert_eq!(dim_canonical_ring(&ci, &si, 1).unwrap(), 1);
        let (_, ci, si) = data("gamma1", 4);
        assert_eq!(dim_canonical_ring(&ci, &si, 1).unwrap(), 0);
        assert_eq!(dim_canonical_ring(&ci, &si, 2).unwrap(), 0);
    }

    #[test]
    fn verify_examples() {
        let (g, _, _) = data("gamma1", 4);
        let r = verify_group(&g, 12).unwrap();
        assert!(r.verdict);
        assert_eq!(r.entries.len(), 13);
        assert_eq!((r.entries[1].side_a, r.entries[1].side_b), (2, 2));
        assert_eq!((r.entries[2].side_a, r.entries[2].side_b), (4, 4));
        let (g, _, _) = data("gamma", 3);
        assert!(verify_group(&g, 12).unwrap().verdict);
    }

    #[test]
    fn verify_refuses_minus_one() {
        let g = build_congruence(&builtin_spec("gamma1", 2).unwrap()).unwrap();
        assert!(matches!(
            verify_group(&g, 4),
            Err(Error::ContainsMinusOne { .. })
        ));
    }
}
