use std::fmt;

use serde::{Deserialize, Serialize};

use super::PermutationRep;
use crate::perm::orbit_labels;

/// One broken invariant of a permutation representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    LengthMismatch {
        which: String,
        len: usize,
        n: usize,
    },
    NotAPermutation {
        which: String,
    },
    /// `ρ(S)^4 ≠ id`
    RelationS4,
    /// `ρ(ST)^6 ≠ id`
    RelationU6,
    /// `ρ(S^2)` does not commute with `ρ(T)`
    MinusOneNotCentral,
    /// `ρ(S^2) ≠ ρ(ST)^3`
    RelationS2U3,
    Intransitive {
        orbits: usize,
    },
    /// `ρ(S^2)` neither the identity nor fixed-point-free
    MixedMinusOne {
        fixed: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty coset set"),
            Violation::LengthMismatch { which, len, n } => {
                write!(f, "{which} has length {len}, expected {n}")
            }
            Violation::NotAPermutation { which } => write!(f, "{which} is not a permutation"),
            Violation::RelationS4 => write!(f, "relation violation S^4 = 1"),
            Violation::RelationU6 => write!(f, "relation violation (ST)^6 = 1"),
            Violation::MinusOneNotCentral => write!(f, "S^2 does not commute with T"),
            Violation::RelationS2U3 => write!(f, "relation violation S^2 = (ST)^3"),
            Violation::Intransitive { orbits } => {
                write!(f, "transitivity violation: {orbits} orbits")
            }
            Violation::MixedMinusOne { fixed } => {
                write!(f, "S^2 fixes {fixed} cosets but is not the identity")
            }
        }
    }
}

/// Checks every invariant of a permutation representation. An empty result
/// means the pair `(σ_S, σ_T)` defines a transitive action of SL2(Z).
pub fn validate(rep: &PermutationRep) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = rep.n;
    if n == 0 {
        out.push(Violation::Empty);
        return out;
    }
    let mut shape_ok = true;
    for (which, p) in [("sigma_s", &rep.sigma_s), ("sigma_t", &rep.sigma_t)] {
        if p.len() != n {
            out.push(Violation::LengthMismatch {
                which: which.into(),
                len: p.len(),
                n,
            });
            shape_ok = false;
        } else if !p.is_valid() {
            out.push(Violation::NotAPermutation {
                which: which.into(),
            });
            shape_ok = false;
        }
    }
    if !shape_ok {
        return out;
    }

    let s = &rep.sigma_s;
    let t = &rep.sigma_t;
    let s2 = s.then(s);
    let u = s.then(t);
    let u3 = u.pow(3);

    if !s.pow(4).is_identity() {
        out.push(Violation::RelationS4);
    }
    if !u.pow(6).is_identity() {
        out.push(Violation::RelationU6);
    }
    if s2.then(t) != t.then(&s2) {
        out.push(Violation::MinusOneNotCentral);
    }
    if s2 != u3 {
        out.push(Violation::RelationS2U3);
    }
    let (_, orbits) = orbit_labels(n, &[s, t]);
    if orbits != 1 {
        out.push(Violation::Intransitive { orbits });
    }
    let fixed = s2.fixed_points().len();
    if fixed != 0 && fixed != n {
        out.push(Violation::MixedMinusOne { fixed });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::subgroup::{build_congruence, builtin_spec};

    fn rep_from(s: Vec<usize>, t: Vec<usize>) -> PermutationRep {
        PermutationRep {
            n: s.len(),
            sigma_s: Perm(s),
            sigma_t: Perm(t),
            words: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    #[test]
    fn valid_rep_has_no_violations() {
        let g = build_congruence(&builtin_spec("gamma1", 4).unwrap()).unwrap();
        assert_eq!(validate(&g.rep), vec![]);
    }

    #[test]
    fn s4_violation() {
        let v = validate(&rep_from(vec![1, 2, 0], vec![0, 1, 2]));
        assert!(v.contains(&Violation::RelationS4), "{v:?}");
    }

    #[test]
    fn u6_violation() {
        let seven: Vec<usize> = (0..7).map(|i| (i + 1) % 7).collect();
        let v = validate(&rep_from((0..7).collect(), seven));
        assert!(v.contains(&Violation::RelationU6), "{v:?}");
    }

    #[test]
    fn intransitive_identity_pair() {
        let v = validate(&rep_from(vec![0, 1], vec![0, 1]));
        assert_eq!(v, vec![Violation::Intransitive { orbits: 2 }]);
    }

    #[test]
    fn mixed_minus_one() {
        // S = (0 1 2 3), fixing 4
        let v = validate(&rep_from(vec![1, 2, 3, 0, 4], vec![4, 1, 2, 3, 0]));
        assert!(v.contains(&Violation::MixedMinusOne { fixed: 1 }), "{v:?}");
    }

    #[test]
    fn s2_not_central() {
        // S^2 = (0 2)(1 3), T = (0 1)
        let v = validate(&rep_from(vec![1, 2, 3, 0], vec![1, 0, 2, 3]));
        assert!(v.contains(&Violation::MinusOneNotCentral), "{v:?}");
    }

    #[test]
    fn shape_errors() {
        let v = validate(&rep_from(vec![0, 1], vec![0]));
        assert!(matches!(v[0], Violation::LengthMismatch { .. }));
        let v = validate(&rep_from(vec![0, 0], vec![0, 1]));
        assert!(matches!(v[0], Violation::NotAPermutation { .. }));
        assert_eq!(validate(&rep_from(vec![], vec![])), vec![Violation::Empty]);
    }
}
