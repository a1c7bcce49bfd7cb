//! Congruence subgroups: full preimages of `H ≤ SL2(Z/N)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Origin, PermutationRep, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::sl2::{Generator, GeneratorWord, MatModN, MatZ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Principal congruence subgroup `Γ(N)`.
    Gamma,
    /// `Γ1(N)`.
    Gamma1,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Family::Gamma),
            "gamma1" => Ok(Family::Gamma1),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gamma => "gamma",
            Family::Gamma1 => "gamma1",
        })
    }
}

/// Level `N` and generators of `H ≤ SL2(Z/N)`; `Γ` is the preimage of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSpec {
    pub level: u32,
    pub generators: Vec<MatModN>,
    pub label: String,
}

impl CongruenceSpec {
    pub fn new(level: u32, generators: Vec<MatModN>, label: impl Into<String>) -> Result<Self> {
        if level == 0 {
            return Err(Error::BadLevel(0));
        }
        let spec = CongruenceSpec {
            level,
            generators,
            label: label.into(),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        if self.level == 0 {
            return Err(Error::BadLevel(0));
        }
        for g in &self.generators {
            if g.modulus != self.level {
                return Err(Error::Document(format!(
                    "generator {g} has modulus {} but the level is {}",
                    g.modulus, self.level
                )));
            }
            if g.det() != 1 % self.level {
                return Err(crate::sl2::Sl2Error::NotUnimodularMod {
                    det: i64::from(g.det()),
                    modulus: self.level,
                }
                .into());
            }
        }
        Ok(())
    }
}

/// Canned families: `gamma:N` has trivial `H`, `gamma1:N` has `H = <T mod N>`.
pub fn builtin_spec(name: &str, level: i64) -> Result<CongruenceSpec> {
    let family: Family = name.parse()?;
    let n = u32::try_from(level)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or(Error::BadLevel(level))?;
    let generators = match family {
        Family::Gamma => Vec::new(),
        Family::Gamma1 => vec![MatModN::new(1, 1, 0, 1, n)?],
    };
    CongruenceSpec::new(n, generators, format!("{family}:{n}"))
}

/// `|SL2(Z/N)| = N^3 · Π_{p | N} (1 - 1/p^2)`.
pub fn sl2_mod_order(level: u32) -> usize {
    let mut order = u64::from(level).pow(3);
    let mut m = level;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            let p = u64::from(p);
            order = order / (p * p) * (p * p - 1);
        }
        p += 1;
    }
    if m > 1 {
        let p = u64::from(m);
        order = order / (p * p) * (p * p - 1);
    }
    order as usize
}

/// Closes the generators of `H` under multiplication inside `SL2(Z/N)`.
///
/// The result is sorted in `(a, b, c, d)` order.
pub fn subgroup_closure(spec: &CongruenceSpec) -> Vec<MatModN> {
    let id = MatModN::identity(spec.level);
    let mut seen: HashSet<MatModN> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &spec.generators {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<_> = seen.into_iter().collect();
    elements.sort();
    elements
}

/// Lexicographically least element of `H·x`.
fn coset_key(h: &[MatModN], x: &MatModN) -> MatModN {
    h.iter()
        .map(|e| e.mul(x))
        .min()
        .expect("H contains the identity")
}

/// Enumerates right cosets `H·x` by BFS from the identity over
/// `S, S^-1, T, T^-1` and returns the resulting permutation representation.
pub fn build_congruence(spec: &CongruenceSpec) -> Result<Subgroup> {
    spec.check()?;
    let level = spec.level;
    let h = subgroup_closure(spec);
    let total = sl2_mod_order(level);
    if !total.is_multiple_of(h.len()) {
        return Err(Error::IndexMismatch {
            found: h.len(),
            expected: total,
        });
    }
    let expected = total / h.len();

    let gen_mod: Vec<(Generator, MatModN)> = Generator::ALL
        .iter()
        .map(|&g| {
            let m = g.matrix();
            Ok((g, MatModN::new(m.a, m.b, m.c, m.d, level)?))
        })
        .collect::<Result<_>>()?;

    let mut index: HashMap<MatModN, usize> = HashMap::new();
    let mut reps = vec![MatModN::identity(level)];
    let mut words = vec![GeneratorWord::empty()];
    let mut witnesses = vec![MatZ::IDENTITY];
    // images[g][i] for g in Generator::ALL order
    let mut images: [Vec<usize>; 4] = Default::default();
    index.insert(coset_key(&h, &reps[0]), 0);

    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (k, (g, gm)) in gen_mod.iter().enumerate() {
            let y = reps[i].mul(gm);
            let key = coset_key(&h, &y);
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    let j = reps.len();
                    if j >= expected {
                        return Err(Error::IndexMismatch {
                            found: j + 1,
                            expected,
                        });
                    }
                    index.insert(key, j);
                    reps.push(y);
                    let mut w = words[i].clone();
                    w.push(*g);
                    words.push(w);
                    witnesses.push(witnesses[i].mul(&g.matrix())?);
                    queue.push_back(j);
                    j
                }
            };
            let slot = &mut images[k];
            if slot.len() <= i {
                slot.resize(i + 1, usize::MAX);
            }
            slot[i] = j;
        }
    }
    let n = reps.len();
    if n != expected {
        return Err(Error::IndexMismatch { found: n, expected });
    }

    let [sigma_s, _, sigma_t, _] = images;
    let rep = PermutationRep {
        n,
        sigma_s: Perm(sigma_s),
        sigma_t: Perm(sigma_t),
        words,
        witnesses,
    };
    Ok(Subgroup::new(rep, Origin::Congruence(spec.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::reduce_mod;
    use crate::subgroup::{contains_minus_one, validate};

    /// Brute-force count of `SL2(Z/N)` over all `N^4` quadruples.
    fn brute_order(n: u32) -> usize {
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if (a * d + n * n - b * c) % n == 1 % n {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn order_formula_matches_enumeration() {
        for n in 1..=12 {
            assert_eq!(sl2_mod_order(n), brute_order(n), "N = {n}");
        }
        assert_eq!(sl2_mod_order(4), 48);
        assert_eq!(sl2_mod_order(3), 24);
    }

    #[test]
    fn builtin_specs() {
        let g1 = builtin_spec("gamma1", 4).unwrap();
        assert_eq!(subgroup_closure(&g1).len(), 4);
        assert_eq!(g1.label, "gamma1:4");
        let g = builtin_spec("gamma", 3).unwrap();
        assert_eq!(subgroup_closure(&g), vec![MatModN::identity(3)]);
        let one = builtin_spec("gamma1", 1).unwrap();
        assert_eq!(subgroup_closure(&one).len(), 1);
        assert!(matches!(
            builtin_spec("gamma0", 5),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(builtin_spec("gamma", 0), Err(Error::BadLevel(0))));
    }

    #[test]
    fn coset_counts() {
        let idx = |name, n| {
            build_congruence(&builtin_spec(name, n).unwrap())
                .unwrap()
                .index()
        };
        assert_eq!(idx("gamma1", 4), 12);
        assert_eq!(idx("gamma", 3), 24);
        assert_eq!(idx("gamma1", 3), 8);
        assert_eq!(idx("gamma1", 1), 1);
        assert_eq!(idx("gamma", 1), 1);
    }

    #[test]
    fn minus_one_detection() {
        let b = |name, n| build_congruence(&builtin_spec(name, n).unwrap()).unwrap();
        assert!(!contains_minus_one(&b("gamma1", 4)));
        assert!(contains_minus_one(&b("gamma1", 2)));
        assert!(!contains_minus_one(&b("gamma", 3)));
        assert!(contains_minus_one(&b("gamma", 2)));
        assert!(contains_minus_one(&b("gamma", 1)));
    }

    #[test]
    fn built_reps_are_valid_and_witnesses_consistent() {
        for (name, n) in [
            ("gamma1", 4),
            ("gamma1", 5),
            ("gamma", 3),
            ("gamma", 4),
            ("gamma1", 2),
        ] {
            let spec = builtin_spec(name, n).unwrap();
            let g = build_congruence(&spec).unwrap();
            assert!(validate(&g.rep).is_empty(), "{name}:{n}");
            let h = subgroup_closure(&spec);
            let level = i64::from(spec.level);
            for i in 0..g.rep.n {
                for gen in Generator::ALL {
                    let j = g.rep.rho(gen).apply(i);
                    let lhs =
                        reduce_mod(&g.rep.witnesses[i].mul(&gen.matrix()).unwrap(), level).unwrap();
                    let rhs = reduce_mod(&g.rep.witnesses[j], level).unwrap();
                    assert!(h.iter().any(|e| e.mul(&rhs) == lhs));
                }
            }
        }
    }

    #[test]
    fn rejects_inconsistent_generators() {
        let bad = CongruenceSpec {
            level: 5,
            generators: vec![MatModN {
                a: 2,
                b: 0,
                c: 0,
                d: 1,
                modulus: 5,
            }],
            label: "bad".into(),
        };
        assert!(build_congruence(&bad).is_err());
    }
}
