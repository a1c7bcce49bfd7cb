//! Brute-force recomputation of the curve invariants of a congruence subgroup
//! directly inside the finite group `SL2(Z/N)`.
//!
//! Nothing here goes through permutations, words or BFS: the group is
//! enumerated from all `N^4` quadruples, cosets are formed by explicit
//! `H`-orbits, and cusps are `±H`-orbits of primitive vectors in `(Z/N)^2`.
//! Only the matrix types of [`crate::sl2`] are shared with the main path.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::curve::curve_invariants;
use crate::error::{Error, Result};
use crate::sl2::{MatModN, MatZ};
use crate::subgroup::{CongruenceSpec, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_level: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_level: 30 }
    }
}

/// All of `SL2(Z/N)` together with the subgroup `H`.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    pub level: u32,
    pub elements: Vec<MatModN>,
    pub h: HashSet<MatModN>,
}

impl FiniteGroupTable {
    pub fn new(spec: &CongruenceSpec, config: &OracleConfig) -> Result<Self> {
        let n = spec.level;
        if n == 0 {
            return Err(Error::BadLevel(0));
        }
        if n > config.max_level {
            return Err(Error::OracleBound {
                level: n,
                max: config.max_level,
            });
        }
        let mut elements = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let det = (u64::from(a) * u64::from(d) + u64::from(n) * u64::from(n)
                            - u64::from(b) * u64::from(c))
                            % u64::from(n);
                        if det == u64::from(1 % n) {
                            elements.push(MatModN {
                                a,
                                b,
                                c,
                                d,
                                modulus: n,
                            });
                        }
                    }
                }
            }
        }
        // close H under products of its generators (and their products)
        let mut h: HashSet<MatModN> = HashSet::from([MatModN::identity(n)]);
        loop {
            let current: Vec<MatModN> = h.iter().copied().collect();
            let before = h.len();
            for x in &current {
                for g in &spec.generators {
                    h.insert(x.mul(g));
                    h.insert(x.mul(&g.inverse()));
                }
            }
            if h.len() == before {
                break;
            }
        }
        Ok(FiniteGroupTable {
            level: n,
            elements,
            h,
        })
    }

    fn lift(&self, m: &MatZ) -> MatModN {
        let n = i64::from(self.level);
        let r = |x: i64| x.rem_euclid(n) as u32;
        MatModN {
            a: r(m.a),
            b: r(m.b),
            c: r(m.c),
            d: r(m.d),
            modulus: self.level,
        }
    }

    /// Coset id of every element of `SL2(Z/N)` for right cosets `H·x`.
    fn coset_ids(&self) -> (HashMap<MatModN, usize>, usize) {
        let mut id: HashMap<MatModN, usize> = HashMap::with_capacity(self.elements.len());
        let mut count = 0;
        for x in &self.elements {
            if id.contains_key(x) {
                continue;
            }
            for h in &self.h {
                id.insert(h.mul(x), count);
            }
            count += 1;
        }
        (id, count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCosetSpace {
    pub group_order: usize,
    pub h_order: usize,
    pub cosets: usize,
    pub minus_one: bool,
    pub eps3: i64,
}

/// Counts right cosets `H\SL2(Z/N)` and the cosets fixed by right
/// multiplication with `(ST)^2`.
pub fn brute_coset_space(spec: &CongruenceSpec, config: &OracleConfig) -> Result<OracleCosetSpace> {
    let table = FiniteGroupTable::new(spec, config)?;
    let (ids, cosets) = table.coset_ids();
    let u2 = table.lift(&MatZ::new(-1, -1, 1, 0));
    let mut fixed = HashSet::new();
    for x in &table.elements {
        if ids[x] == ids[&x.mul(&u2)] {
            fixed.insert(ids[x]);
        }
    }
    let minus = table.lift(&MatZ::MINUS_IDENTITY);
    Ok(OracleCosetSpace {
        group_order: table.elements.len(),
        h_order: table.h.len(),
        cosets,
        minus_one: table.h.contains(&minus),
        eps3: fixed.len() as i64 / 2,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(x, y)` with `a·x + b·y = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-x0, -y0)
    } else {
        (x0, y0)
    }
}

/// A matrix in SL2(Z) whose first column reduces to `(a, c)` mod `N`.
fn lift_column(a: u32, c: u32, n: u32) -> MatZ {
    if n == 1 {
        return MatZ::IDENTITY;
    }
    let n = i64::from(n);
    let c = if c == 0 { n } else { i64::from(c) };
    let mut a = i64::from(a);
    while gcd(a, c) != 1 {
        a += n;
    }
    let (x, y) = ext_gcd(a, c);
    MatZ::new(a, -y, c, x)
}

/// Cusp multiset `{(psl_width, regular)}`, sorted.
pub fn brute_cusps(spec: &CongruenceSpec, config: &OracleConfig) -> Result<Vec<(i64, bool)>> {
    let table = FiniteGroupTable::new(spec, config)?;
    let n = table.level;
    let minus = table.lift(&MatZ::MINUS_IDENTITY);
    if table.h.contains(&minus) {
        return Err(Error::ContainsMinusOne {
            label: spec.label.clone(),
        });
    }
    let plus_minus_h: Vec<MatModN> = table.h.iter().flat_map(|h| [*h, h.neg()]).collect();

    let nn = i64::from(n);
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if gcd(gcd(i64::from(a), i64::from(c)), nn) != 1 || seen.contains(&(a, c)) {
                continue;
            }
            for h in &plus_minus_h {
                let a2 = ((u64::from(h.a) * u64::from(a) + u64::from(h.b) * u64::from(c))
                    % u64::from(n)) as u32;
                let c2 = ((u64::from(h.c) * u64::from(a) + u64::from(h.d) * u64::from(c))
                    % u64::from(n)) as u32;
                seen.insert((a2, c2));
            }
            let gamma = lift_column(a, c, n);
            let gamma_inv = gamma.inverse()?;
            let mut found = None;
            for width in 1..=nn {
                let conj = gamma.mul(&MatZ::translation(width))?.mul(&gamma_inv)?;
                let conj = table.lift(&conj);
                if table.h.contains(&conj) {
                    found = Some((width, true));
                    break;
                }
                if table.h.contains(&conj.neg()) {
                    found = Some((width, false));
                    break;
                }
            }
            match found {
                Some(w) => out.push(w),
                None => {
                    return Err(Error::BrokenRep(format!(
                        "no cusp width found within {n} for column ({a}, {c})"
                    )))
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Everything the oracle knows about `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInvariants {
    pub mu: i64,
    pub eps3: i64,
    pub g: i64,
    pub cusps: Vec<(i64, bool)>,
}

pub fn oracle_invariants(spec: &CongruenceSpec, config: &OracleConfig) -> Result<OracleInvariants> {
    let space = brute_coset_space(spec, config)?;
    if space.minus_one {
        return Err(Error::ContainsMinusOne {
            label: spec.label.clone(),
        });
    }
    let cusps = brute_cusps(spec, config)?;
    let mu = space.cosets as i64 / 2;
    let twelve_g = 12 + mu - 4 * space.eps3 - 6 * cusps.len() as i64;
    if twelve_g % 12 != 0 {
        return Err(Error::NonIntegral(format!("oracle genus {twelve_g}/12")));
    }
    Ok(OracleInvariants {
        mu,
        eps3: space.eps3,
        g: twelve_g / 12,
        cusps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub field: String,
    pub main: String,
    pub oracle: String,
}

/// Field-by-field comparison of the main pipeline against the oracle. An
/// empty list means agreement; a failure of the main path is itself reported
/// as a discrepancy.
pub fn crosscheck(g: &Subgroup) -> Result<Vec<Discrepancy>> {
    crosscheck_with(g, &OracleConfig::default())
}

pub fn crosscheck_with(g: &Subgroup, config: &OracleConfig) -> Result<Vec<Discrepancy>> {
    let spec = g
        .congruence_spec()
        .ok_or_else(|| Error::NotCongruence(g.label().to_string()))?;
    g.require_no_minus_one()?;
    let oracle = oracle_invariants(spec, config)?;
    let mut out = Vec::new();

    let space = brute_coset_space(spec, config)?;
    if space.cosets != g.index() {
        out.push(Discrepancy {
            field: "index".into(),
            main: g.index().to_string(),
            oracle: space.cosets.to_string(),
        });
    }

    let main = match curve_invariants(g) {
        Ok(ci) => ci,
        Err(e) => {
            out.push(Discrepancy {
                field: "curve_invariants".into(),
                main: format!("error: {e}"),
                oracle: format!("{oracle:?}"),
            });
            return Ok(out);
        }
    };
    let mut diff = |field: &str, a: String, b: String| {
        if a != b {
            out.push(Discrepancy {
                field: field.into(),
                main: a,
                oracle: b,
            });
        }
    };
    diff("mu", main.mu.to_string(), oracle.mu.to_string());
    diff("eps3", main.eps3.to_string(), oracle.eps3.to_string());
    diff("g", main.g.to_string(), oracle.g.to_string());
    diff(
        "cusps",
        format!("{:?}", main.cusp_signature()),
        format!("{:?}", oracle.cusps),
    );
    Ok(out)
}
