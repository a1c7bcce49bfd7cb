//! Permutations of `{0, ..., n-1}` in one-line notation.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One-line permutation: `self.0[i]` is the image of `i`.
///
/// Composition follows the right-action convention of the coset space:
/// `p.then(&q)` maps `i` to `q(p(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// True when the array is a bijection of `0..len`.
    pub fn is_valid(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        for &x in &self.0 {
            if x >= n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// `i -> other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, exp: u32) -> Perm {
        let mut acc = Perm::identity(self.len());
        for _ in 0..exp {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i != x)
    }

    /// Cycles ordered by their smallest element, each starting there.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Orbits of the group generated by `gens` on `0..n`, as a component id per
/// point plus the number of components.
pub fn orbit_labels(n: usize, gens: &[&Perm]) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for g in gens {
                let j = g.apply(i);
                if label[j] == usize::MAX {
                    label[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    (label, count)
}
