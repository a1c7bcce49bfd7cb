//! Singular fibres and numerical invariants of the elliptic modular surface
//! `S_Γ → X_Γ`.
//!
//! A regular cusp of width `h` carries an `I_h` fibre, an irregular cusp of
//! width `h` an `I_h*` fibre, and every elliptic point of order 3 a `IV*`
//! fibre. The Euler number is the sum of the local contributions and must be
//! divisible by 12; any other fibre convention trips that check.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::CurveInvariants;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "n")]
pub enum FiberType {
    I(u32),
    #[serde(rename = "I*")]
    IStar(u32),
    #[serde(rename = "IV*")]
    IVStar,
}

impl FiberType {
    /// Local topological Euler number.
    pub fn euler(&self) -> i64 {
        match *self {
            FiberType::I(n) => i64::from(n),
            FiberType::IStar(n) => i64::from(n) + 6,
            FiberType::IVStar => 8,
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            FiberType::IVStar => write!(f, "IV*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    /// Cusp label, or `e3:<k>` for the k-th elliptic point.
    pub base: String,
    pub kind: FiberType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberConfiguration {
    pub fibers: Vec<Fiber>,
}

impl FiberConfiguration {
    pub fn kinds(&self) -> Vec<FiberType> {
        let mut v: Vec<_> = self.fibers.iter().map(|f| f.kind).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KodairaClass {
    Rational,
    K3,
    ProperlyElliptic,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub e: i64,
    pub chi: i64,
    pub q: i64,
    pub p_g: i64,
    pub deg_l: i64,
    /// Informative only.
    pub class: KodairaClass,
}

pub fn fiber_configuration(ci: &CurveInvariants) -> FiberConfiguration {
    let mut fibers: Vec<Fiber> = ci
        .cusps
        .iter()
        .map(|c| {
            let h = c.psl_width as u32;
            Fiber {
                base: c.label.clone(),
                kind: if c.regular {
                    FiberType::I(h)
                } else {
                    FiberType::IStar(h)
                },
            }
        })
        .collect();
    fibers.extend((0..ci.eps3).map(|k| Fiber {
        base: format!("e3:{k}"),
        kind: FiberType::IVStar,
    }));
    FiberConfiguration { fibers }
}

pub fn euler_number(fc: &FiberConfiguration) -> i64 {
    fc.fibers.iter().map(|f| f.kind.euler()).sum()
}

pub fn surface_invariants(
    ci: &CurveInvariants,
    fc: &FiberConfiguration,
) -> Result<SurfaceInvariants> {
    let e = euler_number(fc);
    if e % 12 != 0 {
        return Err(Error::NonIntegral(format!(
            "Euler number {e} is not divisible by 12"
        )));
    }
    let chi = e / 12;
    if chi < 1 {
        return Err(Error::Negative(format!("chi = {chi} < 1")));
    }
    let q = ci.g;
    let p_g = chi - 1 + q;
    let class = match (chi, q) {
        (1, 0) => KodairaClass::Rational,
        (2, 0) => KodairaClass::K3,
        (c, _) if c >= 3 || q >= 1 => KodairaClass::ProperlyElliptic,
        _ => KodairaClass::Other,
    };
    Ok(SurfaceInvariants {
        e,
        chi,
        q,
        p_g,
        deg_l: chi,
        class,
    })
}
