//! Exact 2x2 integer matrices, their reductions modulo `N`, and words in the
//! standard generators `S = [[0,-1],[1,0]]`, `T = [[1,1],[0,1]]` of SL2(Z).
//!
//! Integer matrices use checked `i64` arithmetic: an overflow is reported as
//! [`Sl2Error::Overflow`], never wrapped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("integer overflow in 2x2 matrix arithmetic")]
    Overflow,
    #[error("modulus must be at least 1, got {0}")]
    BadModulus(i64),
    #[error("determinant is {det}, expected 1")]
    NotUnimodular { det: i64 },
    #[error("determinant is {det} mod {modulus}, expected 1")]
    NotUnimodularMod { det: i64, modulus: u32 },
    #[error("unknown generator token {0:?} (expected S, S^-1, T or T^-1)")]
    BadToken(String),
}

/// Integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatZ {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl MatZ {
    pub const IDENTITY: MatZ = MatZ::new(1, 0, 0, 1);
    pub const MINUS_IDENTITY: MatZ = MatZ::new(-1, 0, 0, -1);
    pub const S: MatZ = MatZ::new(0, -1, 1, 0);
    pub const S_INV: MatZ = MatZ::new(0, 1, -1, 0);
    pub const T: MatZ = MatZ::new(1, 1, 0, 1);
    pub const T_INV: MatZ = MatZ::new(1, -1, 0, 1);
    /// `U = ST`, of order 6 with `U^3 = -I`.
    pub const U: MatZ = MatZ::new(0, -1, 1, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        MatZ { a, b, c, d }
    }

    /// Builds a matrix and rejects anything whose determinant is not 1.
    pub fn unimodular(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Sl2Error> {
        let m = MatZ::new(a, b, c, d);
        let det = m.det()?;
        if det != 1 {
            return Err(Sl2Error::NotUnimodular { det });
        }
        Ok(m)
    }

    pub fn det(&self) -> Result<i64, Sl2Error> {
        let ad = self.a.checked_mul(self.d).ok_or(Sl2Error::Overflow)?;
        let bc = self.b.checked_mul(self.c).ok_or(Sl2Error::Overflow)?;
        ad.checked_sub(bc).ok_or(Sl2Error::Overflow)
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &MatZ) -> Result<MatZ, Sl2Error> {
        fn dot(x: i64, y: i64, z: i64, w: i64) -> Result<i64, Sl2Error> {
            let p = x.checked_mul(y).ok_or(Sl2Error::Overflow)?;
            let q = z.checked_mul(w).ok_or(Sl2Error::Overflow)?;
            p.checked_add(q).ok_or(Sl2Error::Overflow)
        }
        Ok(MatZ {
            a: dot(self.a, rhs.a, self.b, rhs.c)?,
            b: dot(self.a, rhs.b, self.b, rhs.d)?,
            c: dot(self.c, rhs.a, self.d, rhs.c)?,
            d: dot(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Result<MatZ, Sl2Error> {
        let neg = |x: i64| x.checked_neg().ok_or(Sl2Error::Overflow);
        Ok(MatZ::new(self.d, neg(self.b)?, neg(self.c)?, self.a))
    }

    pub fn neg(&self) -> Result<MatZ, Sl2Error> {
        let neg = |x: i64| x.checked_neg().ok_or(Sl2Error::Overflow);
        Ok(MatZ::new(
            neg(self.a)?,
            neg(self.b)?,
            neg(self.c)?,
            neg(self.d)?,
        ))
    }

    pub fn pow(&self, exp: u32) -> Result<MatZ, Sl2Error> {
        let mut acc = MatZ::IDENTITY;
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `T^n` for any integer `n`.
    pub fn translation(n: i64) -> MatZ {
        MatZ::new(1, n, 0, 1)
    }

    pub fn reduce_mod(&self, modulus: i64) -> Result<MatModN, Sl2Error> {
        reduce_mod(self, modulus)
    }
}

impl fmt::Display for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Exact product of two integer matrices.
pub fn multiply(x: &MatZ, y: &MatZ) -> Result<MatZ, Sl2Error> {
    x.mul(y)
}

/// A matrix over `Z/N` with entries in `[0, N)`.
///
/// Field order `(a, b, c, d)` is also the lexicographic order used for
/// canonical coset keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatModN {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub modulus: u32,
}

impl MatModN {
    /// Reduces arbitrary integers modulo `modulus` and checks `det = 1 mod N`.
    pub fn new(a: i64, b: i64, c: i64, d: i64, modulus: u32) -> Result<Self, Sl2Error> {
        if modulus == 0 {
            return Err(Sl2Error::BadModulus(0));
        }
        let n = i64::from(modulus);
        let r = |x: i64| x.rem_euclid(n) as u32;
        let m = MatModN {
            a: r(a),
            b: r(b),
            c: r(c),
            d: r(d),
            modulus,
        };
        let det = m.det();
        if det != 1 % modulus {
            return Err(Sl2Error::NotUnimodularMod {
                det: i64::from(det),
                modulus,
            });
        }
        Ok(m)
    }

    pub fn identity(modulus: u32) -> Self {
        let one = 1 % modulus;
        MatModN {
            a: one,
            b: 0,
            c: 0,
            d: one,
            modulus,
        }
    }

    /// Determinant as a residue in `[0, N)`.
    pub fn det(&self) -> u32 {
        let n = u64::from(self.modulus);
        let ad = u64::from(self.a) * u64::from(self.d) % n;
        let bc = u64::from(self.b) * u64::from(self.c) % n;
        ((ad + n - bc) % n) as u32
    }

    pub fn mul(&self, rhs: &MatModN) -> MatModN {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let n = u64::from(self.modulus);
        let dot = |x: u32, y: u32, z: u32, w: u32| {
            ((u64::from(x) * u64::from(y) + u64::from(z) * u64::from(w)) % n) as u32
        };
        MatModN {
            a: dot(self.a, rhs.a, self.b, rhs.c),
            b: dot(self.a, rhs.b, self.b, rhs.d),
            c: dot(self.c, rhs.a, self.d, rhs.c),
            d: dot(self.c, rhs.b, self.d, rhs.d),
            modulus: self.modulus,
        }
    }

    /// Inverse, valid because the determinant is 1.
    pub fn inverse(&self) -> MatModN {
        let n = self.modulus;
        let neg = |x: u32| (n - x) % n;
        MatModN {
            a: self.d,
            b: neg(self.b),
            c: neg(self.c),
            d: self.a,
            modulus: n,
        }
    }

    pub fn neg(&self) -> MatModN {
        let n = self.modulus;
        let neg = |x: u32| (n - x) % n;
        MatModN {
            a: neg(self.a),
            b: neg(self.b),
            c: neg(self.c),
            d: neg(self.d),
            modulus: n,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == MatModN::identity(self.modulus)
    }

    pub fn entries(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for MatModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]] mod {}",
            self.a, self.b, self.c, self.d, self.modulus
        )
    }
}

/// Reduces an integer matrix modulo `modulus`.
pub fn reduce_mod(x: &MatZ, modulus: i64) -> Result<MatModN, Sl2Error> {
    if modulus < 1 {
        return Err(Sl2Error::BadModulus(modulus));
    }
    let modulus = u32::try_from(modulus).map_err(|_| Sl2Error::BadModulus(modulus))?;
    MatModN::new(x.a, x.b, x.c, x.d, modulus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    S,
    SInv,
    T,
    TInv,
}

impl Generator {
    /// BFS order used everywhere a shortest word is searched for.
    pub const ALL: [Generator; 4] = [Generator::S, Generator::SInv, Generator::T, Generator::TInv];

    pub fn matrix(self) -> MatZ {
        match self {
            Generator::S => MatZ::S,
            Generator::SInv => MatZ::S_INV,
            Generator::T => MatZ::T,
            Generator::TInv => MatZ::T_INV,
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::S => Generator::SInv,
            Generator::SInv => Generator::S,
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::S => "S",
            Generator::SInv => "S^-1",
            Generator::T => "T",
            Generator::TInv => "T^-1",
        })
    }
}

impl FromStr for Generator {
    type Err = Sl2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" => Ok(Generator::S),
            "S^-1" | "S-1" | "s" => Ok(Generator::SInv),
            "T" => Ok(Generator::T),
            "T^-1" | "T-1" | "t" => Ok(Generator::TInv),
            other => Err(Sl2Error::BadToken(other.to_string())),
        }
    }
}

/// A word over `{S, S^-1, T, T^-1}`, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn to_matrix(&self) -> Result<MatZ, Sl2Error> {
        word_to_matrix(self)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Sl2Error;

    /// Whitespace-separated tokens, e.g. `"S T T^-1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(GeneratorWord)
    }
}

/// Left-to-right product of the generator matrices; the empty word is `I`.
pub fn word_to_matrix(w: &GeneratorWord) -> Result<MatZ, Sl2Error> {
    w.0.iter()
        .try_fold(MatZ::IDENTITY, |acc, g| acc.mul(&g.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_examples() {
        assert_eq!(
            multiply(&MatZ::IDENTITY, &MatZ::IDENTITY).unwrap(),
            MatZ::IDENTITY
        );
        assert_eq!(
            multiply(&MatZ::S, &MatZ::T).unwrap(),
            MatZ::new(0, -1, 1, 1)
        );
        let s4 = MatZ::S.pow(4).unwrap();
        assert_eq!(s4, MatZ::IDENTITY);
    }

    #[test]
    fn generator_relations() {
        assert_eq!(MatZ::S.pow(4).unwrap(), MatZ::IDENTITY);
        assert_eq!(MatZ::U.pow(6).unwrap(), MatZ::IDENTITY);
        assert_eq!(MatZ::S.pow(2).unwrap(), MatZ::MINUS_IDENTITY);
        assert_eq!(MatZ::U.pow(3).unwrap(), MatZ::MINUS_IDENTITY);
        assert_eq!(MatZ::S.mul(&MatZ::T).unwrap(), MatZ::U);
        for g in Generator::ALL {
            assert_eq!(
                g.matrix().mul(&g.inverse().matrix()).unwrap(),
                MatZ::IDENTITY
            );
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = MatZ::new(i64::MAX, 0, 0, 1);
        assert_eq!(big.mul(&MatZ::new(2, 0, 0, 1)), Err(Sl2Error::Overflow));
        assert_eq!(
            MatZ::translation(i64::MAX).mul(&MatZ::T),
            Err(Sl2Error::Overflow)
        );
        assert_eq!(MatZ::new(i64::MIN, 0, 0, 1).neg(), Err(Sl2Error::Overflow));
    }

    #[test]
    fn unimodular_rejects_bad_det() {
        assert!(MatZ::unimodular(2, 0, 0, 1).is_err());
        assert!(MatZ::unimodular(2, 1, 1, 1).is_ok());
    }

    #[test]
    fn reduce_mod_examples() {
        let t = reduce_mod(&MatZ::T, 4).unwrap();
        assert_eq!(t.entries(), [1, 1, 0, 1]);
        let m = reduce_mod(&MatZ::MINUS_IDENTITY, 2).unwrap();
        assert_eq!(m.entries(), [1, 0, 0, 1]);
        let s = reduce_mod(&MatZ::S, 3).unwrap();
        assert_eq!(s.entries(), [0, 2, 1, 0]);
        assert_eq!(reduce_mod(&MatZ::S, 0), Err(Sl2Error::BadModulus(0)));
        assert_eq!(reduce_mod(&MatZ::S, -3), Err(Sl2Error::BadModulus(-3)));
    }

    #[test]
    fn modulus_one_is_trivial() {
        let s = reduce_mod(&MatZ::S, 1).unwrap();
        assert_eq!(s.entries(), [0, 0, 0, 0]);
        assert!(s.is_identity());
        assert_eq!(s.det(), 0);
    }

    #[test]
    fn mod_n_rejects_non_unimodular() {
        assert!(MatModN::new(2, 0, 0, 1, 5).is_err());
        assert!(MatModN::new(2, 0, 0, 3, 5).is_ok());
    }

    #[test]
    fn word_examples() {
        assert_eq!(
            word_to_matrix(&"".parse().unwrap()).unwrap(),
            MatZ::IDENTITY
        );
        assert_eq!(
            word_to_matrix(&"S T".parse().unwrap()).unwrap(),
            MatZ::new(0, -1, 1, 1)
        );
        assert_eq!(
            word_to_matrix(&"T T T".parse().unwrap()).unwrap(),
            MatZ::new(1, 3, 0, 1)
        );
        assert!("S X".parse::<GeneratorWord>().is_err());
        let w: GeneratorWord = "S^-1 T^-1 S".parse().unwrap();
        assert_eq!(w.to_string(), "S^-1 T^-1 S");
    }

    #[test]
    fn mod_inverse_and_neg() {
        let x = MatModN::new(2, 3, 1, 2, 7).unwrap();
        assert!(x.mul(&x.inverse()).is_identity());
        assert_eq!(x.neg().neg(), x);
    }
}
