//! Finite-index subgroups of SL2(Z) as transitive permutation representations
//! on right cosets.
//!
//! Coset `i` is `Γ·γ_i` and a word `g` sends it to the coset of `Γ·γ_i·g`, so
//! `ρ(gh) = ρ(g)` followed by `ρ(h)`. Coset 0 is `Γ` itself.

mod congruence;
mod document;
mod validate;

use std::collections::VecDeque;

pub use congruence::{
    build_congruence, builtin_spec, sl2_mod_order, subgroup_closure, CongruenceSpec, Family,
};
pub use document::{export_permutation, load_permutation, PermutationDocument};
pub use validate::{validate, Violation};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::sl2::{Generator, GeneratorWord, MatZ};

/// The action of SL2(Z) on the right cosets of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRep {
    pub n: usize,
    pub sigma_s: Perm,
    pub sigma_t: Perm,
    /// `words[i]` is a shortest word with `Γ·word = coset i`.
    pub words: Vec<GeneratorWord>,
    /// `witnesses[i] = word_to_matrix(words[i])`.
    pub witnesses: Vec<MatZ>,
}

impl PermutationRep {
    /// Builds a representation from bare permutations; witnesses come from a
    /// breadth-first search out of coset 0.
    pub fn from_permutations(sigma_s: Perm, sigma_t: Perm) -> Result<Self> {
        let mut rep = PermutationRep {
            n: sigma_s.len(),
            sigma_s,
            sigma_t,
            words: Vec::new(),
            witnesses: Vec::new(),
        };
        let violations = validate(&rep);
        if !violations.is_empty() {
            return Err(Error::InvalidRep(violations));
        }
        rep.rebuild_witnesses()?;
        Ok(rep)
    }

    pub fn rho(&self, g: Generator) -> Perm {
        match g {
            Generator::S => self.sigma_s.clone(),
            Generator::SInv => self.sigma_s.inverse(),
            Generator::T => self.sigma_t.clone(),
            Generator::TInv => self.sigma_t.inverse(),
        }
    }

    /// `ρ(w)` for a word read left to right.
    pub fn action(&self, w: &GeneratorWord) -> Perm {
        w.0.iter()
            .fold(Perm::identity(self.n), |acc, &g| acc.then(&self.rho(g)))
    }

    /// `ρ(S^2)`, right multiplication by `-I`.
    pub fn minus_one(&self) -> Perm {
        self.sigma_s.then(&self.sigma_s)
    }

    /// `ρ(ST)`.
    pub fn sigma_u(&self) -> Perm {
        self.sigma_s.then(&self.sigma_t)
    }

    fn rebuild_witnesses(&mut self) -> Result<()> {
        let gens: Vec<(Generator, Perm)> =
            Generator::ALL.iter().map(|&g| (g, self.rho(g))).collect();
        let mut words: Vec<Option<GeneratorWord>> = vec![None; self.n];
        let mut witnesses = vec![MatZ::IDENTITY; self.n];
        words[0] = Some(GeneratorWord::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, p) in &gens {
                let j = p.apply(i);
                if words[j].is_none() {
                    let mut w = words[i].clone().unwrap_or_default();
                    w.push(*g);
                    witnesses[j] = witnesses[i].mul(&g.matrix())?;
                    words[j] = Some(w);
                    queue.push_back(j);
                }
            }
        }
        self.words = words
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::BrokenRep("coset unreachable from coset 0".into())))
            .collect::<Result<_>>()?;
        self.witnesses = witnesses;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Congruence(CongruenceSpec),
    Permutation { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub rep: PermutationRep,
    pub origin: Origin,
    pub minus_one: bool,
}

impl Subgroup {
    pub fn new(rep: PermutationRep, origin: Origin) -> Self {
        let minus_one = rep.minus_one().is_identity();
        Subgroup {
            rep,
            origin,
            minus_one,
        }
    }

    pub fn label(&self) -> &str {
        match &self.origin {
            Origin::Congruence(spec) => &spec.label,
            Origin::Permutation { label } => label,
        }
    }

    /// `[SL2(Z) : Γ]`.
    pub fn index(&self) -> usize {
        self.rep.n
    }

    pub fn congruence_spec(&self) -> Option<&CongruenceSpec> {
        match &self.origin {
            Origin::Congruence(spec) => Some(spec),
            Origin::Permutation { .. } => None,
        }
    }

    /// Gate for every operation that needs `-1 ∉ Γ`.
    pub fn require_no_minus_one(&self) -> Result<()> {
        if self.minus_one {
            Err(Error::ContainsMinusOne {
                label: self.label().to_string(),
            })
        } else {
            Ok(())
        }
    }
}

/// True iff `-I ∈ Γ`, i.e. `ρ(S^2)` is the identity.
pub fn contains_minus_one(g: &Subgroup) -> bool {
    g.rep.minus_one().is_identity()
}
