//! Cusps, elliptic points and genus of the modular curve `X_Γ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sl2::MatZ;
use crate::subgroup::Subgroup;

/// A cusp `γ(i∞)` of `Γ`.
///
/// `sl_width` is the least `N > 0` with `γ T^N γ^-1 ∈ Γ`; it equals
/// `psl_width` at a regular cusp and `2 · psl_width` at an irregular one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cusp {
    pub id: usize,
    pub witness: MatZ,
    pub label: String,
    pub psl_width: i64,
    pub sl_width: i64,
    pub regular: bool,
    /// Cosets in the `T`-orbits consumed by this cusp.
    #[serde(skip)]
    pub cosets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    /// Index of the image of `Γ` in PSL2(Z).
    pub mu: i64,
    pub g: i64,
    pub eps2: i64,
    pub eps3: i64,
    pub eps_reg: i64,
    pub eps_irr: i64,
    pub cusps: Vec<Cusp>,
}

impl CurveInvariants {
    /// Total number of cusps.
    pub fn eps_cusps(&self) -> i64 {
        self.eps_reg + self.eps_irr
    }

    /// Multiset `{(psl_width, regular)}`, sorted.
    pub fn cusp_signature(&self) -> Vec<(i64, bool)> {
        let mut v: Vec<_> = self
            .cusps
            .iter()
            .map(|c| (c.psl_width, c.regular))
            .collect();
        v.sort_unstable();
        v
    }
}

/// `a/c` from the first column of `γ`, with `c ≥ 0`; `c = 0` is `inf`.
pub fn cusp_label(gamma: &MatZ) -> String {
    let (a, c) = if gamma.c < 0 {
        (-gamma.a, -gamma.c)
    } else {
        (gamma.a, gamma.c)
    };
    match c {
        0 => "inf".to_string(),
        1 => a.to_string(),
        _ => format!("{a}/{c}"),
    }
}

/// Cusps from the `ρ(T)`-orbits on cosets.
///
/// Orbits are visited by smallest coset id. For a representative `i`, the
/// coset `j = ρ(S^2)(i)` lies in the same orbit exactly when the cusp is
/// irregular; otherwise `j`'s orbit is the second half of a regular cusp.
pub fn cusps(g: &Subgroup) -> Result<Vec<Cusp>> {
    g.require_no_minus_one()?;
    let rep = &g.rep;
    let orbits = rep.sigma_t.cycles();
    let mut orbit_of = vec![0usize; rep.n];
    for (k, o) in orbits.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    let minus = rep.minus_one();
    let mut consumed = vec![false; orbits.len()];
    let mut out = Vec::new();

    for (k, orbit) in orbits.iter().enumerate() {
        if consumed[k] {
            continue;
        }
        consumed[k] = true;
        let i = orbit[0];
        let j = minus.apply(i);
        let size = orbit.len() as i64;
        let other = orbit_of[j];
        let (psl_width, sl_width, regular, cosets) = if other == k {
            if size % 2 != 0 {
                return Err(Error::BrokenRep(format!(
                    "irregular cusp at coset {i} has odd T-orbit length {size}"
                )));
            }
            (size / 2, size, false, orbit.clone())
        } else {
            if consumed[other] {
                return Err(Error::BrokenRep(format!(
                    "T-orbit of coset {j} already consumed"
                )));
            }
            if orbits[other].len() != orbit.len() {
                return Err(Error::BrokenRep(format!(
                    "T-orbits of cosets {i} and {j} differ in length"
                )));
            }
            consumed[other] = true;
            let mut cosets = orbit.clone();
            cosets.extend_from_slice(&orbits[other]);
            (size, size, true, cosets)
        };
        let witness = rep.witnesses[i];
        out.push(Cusp {
            id: out.len(),
            witness,
            label: cusp_label(&witness),
            psl_width,
            sl_width,
            regular,
            cosets,
        });
    }
    Ok(out)
}

/// `(ε2, ε3)`. `ε2` is always 0 here; a coset fixed by `ρ(S)` or by `ρ(S^2)`
/// would put `-1` in `Γ`, and is reported as a broken representation.
pub fn elliptic_count(g: &Subgroup) -> Result<(i64, i64)> {
    g.require_no_minus_one()?;
    let rep = &g.rep;
    if !rep.minus_one().is_fixed_point_free() {
        return Err(Error::BrokenRep(
            "S^2 has fixed cosets but is not the identity".into(),
        ));
    }
    if !rep.sigma_s.is_fixed_point_free() {
        return Err(Error::BrokenRep("S fixes a coset".into()));
    }
    let u = rep.sigma_u();
    let fixed = u.then(&u).fixed_points().len();
    if !fixed.is_multiple_of(2) {
        return Err(Error::BrokenRep(format!(
            "(ST)^2 has an odd number ({fixed}) of fixed cosets"
        )));
    }
    Ok((0, fixed as i64 / 2))
}

/// Riemann–Hurwitz for `X_Γ → X(1)` with no order-2 points:
/// `g = 1 + μ/12 − ε3/3 − ε∞/2`.
pub fn genus(mu: i64, eps3: i64, eps_cusps: i64) -> Result<i64> {
    let twelve_g = 12 + mu - 4 * eps3 - 6 * eps_cusps;
    if twelve_g % 12 != 0 {
        return Err(Error::NonIntegral(format!(
            "genus from mu={mu}, eps3={eps3}, cusps={eps_cusps} is {twelve_g}/12"
        )));
    }
    let g = twelve_g / 12;
    if g < 0 {
        return Err(Error::Negative(format!(
            "genus from mu={mu}, eps3={eps3}, cusps={eps_cusps} is {g}"
        )));
    }
    Ok(g)
}

pub fn curve_invariants(g: &Subgroup) -> Result<CurveInvariants> {
    g.require_no_minus_one()?;
    let n = g.rep.n as i64;
    if n % 2 != 0 {
        return Err(Error::BrokenRep(format!("odd index {n} without -1")));
    }
    let mu = n / 2;
    let cusps = cusps(g)?;
    let (eps2, eps3) = elliptic_count(g)?;
    let eps_reg = cusps.iter().filter(|c| c.regular).count() as i64;
    let eps_irr = cusps.len() as i64 - eps_reg;
    let width_sum: i64 = cusps.iter().map(|c| c.psl_width).sum();
    if width_sum != mu {
        return Err(Error::BrokenRep(format!(
            "cusp widths sum to {width_sum}, expected mu = {mu}"
        )));
    }
    let g = genus(mu, eps3, eps_reg + eps_irr)?;
    Ok(CurveInvariants {
        mu,
        g,
        eps2,
        eps3,
        eps_reg,
        eps_irr,
        cusps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{build_congruence, builtin_spec};

    fn group(name: &str, n: i64) -> Subgroup {
        build_congruence(&builtin_spec(name, n).unwrap()).unwrap()
    }

    #[test]
    fn gamma1_4_cusps() {
        let c = cusps(&group("gamma1", 4)).unwrap();
        let mut sig: Vec<_> = c
            .iter()
            .map(|c| (c.psl_width, c.sl_width, c.regular))
            .collect();
        sig.sort_unstable();
        assert_eq!(sig, vec![(1, 1, true), (1, 2, false), (4, 4, true)]);
        assert_eq!(c[0].label, "inf");
        let irregular = c.iter().find(|c| !c.regular).unwrap();
        // the irregular cusp of Γ1(4) is the class of 1/2
        assert_eq!(irregular.witness.c.rem_euclid(4), 2);
    }

    #[test]
    fn gamma_3_cusps() {
        let c = cusps(&group("gamma", 3)).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|c| c.regular && c.psl_width == 3));
    }

    #[test]
    fn gamma1_3_cusps() {
        let ci = curve_invariants(&group("gamma1", 3)).unwrap();
        assert_eq!(ci.cusp_signature(), vec![(1, true), (3, true)]);
        assert_eq!(ci.eps3, 1);
    }

    #[test]
    fn elliptic_counts() {
        assert_eq!(elliptic_count(&group("gamma1", 3)).unwrap(), (0, 1));
        assert_eq!(elliptic_count(&group("gamma1", 4)).unwrap(), (0, 0));
        assert_eq!(elliptic_count(&group("gamma", 3)).unwrap(), (0, 0));
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus(6, 0, 3).unwrap(), 0);
        assert_eq!(genus(60, 0, 10).unwrap(), 1);
        assert_eq!(genus(168, 0, 24).unwrap(), 3);
        assert!(matches!(genus(7, 0, 3), Err(Error::NonIntegral(_))));
        assert!(matches!(
            genus(1, 1, 2),
            Err(Error::Negative(_)) | Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn aggregate_examples() {
        let ci = curve_invariants(&group("gamma1", 4)).unwrap();
        assert_eq!(
            (ci.mu, ci.g, ci.eps3, ci.eps_reg, ci.eps_irr),
            (6, 0, 0, 2, 1)
        );
        let ci = curve_invariants(&group("gamma1", 7)).unwrap();
        assert_eq!(
            (ci.mu, ci.g, ci.eps3, ci.eps_reg, ci.eps_irr),
            (24, 0, 0, 6, 0)
        );
        let ci = curve_invariants(&group("gamma1", 11)).unwrap();
        assert_eq!(
            (ci.mu, ci.g, ci.eps3, ci.eps_reg, ci.eps_irr),
            (60, 1, 0, 10, 0)
        );
        let ci = curve_invariants(&group("gamma", 7)).unwrap();
        assert_eq!((ci.mu, ci.g, ci.eps_cusps()), (168, 3, 24));
    }

    #[test]
    fn labels() {
        assert_eq!(cusp_label(&MatZ::IDENTITY), "inf");
        assert_eq!(cusp_label(&MatZ::S), "0");
        assert_eq!(cusp_label(&MatZ::new(-1, 0, -2, -1)), "1/2");
    }

    #[test]
    fn refuses_minus_one() {
        assert!(matches!(
            curve_invariants(&group("gamma1", 2)),
            Err(Error::ContainsMinusOne { .. })
        ));
    }
}
