//! JSON interchange format for permutation representations:
//! `{"n": 12, "sigma_s": [...], "sigma_t": [...], "label": "gamma1:4"}`,
//! zero-based, one-line notation.

use serde::{Deserialize, Serialize};

use super::{Origin, PermutationRep, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Perm;

fn default_label() -> String {
    "permutation-input".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationDocument {
    pub n: usize,
    pub sigma_s: Vec<usize>,
    pub sigma_t: Vec<usize>,
    #[serde(default = "default_label")]
    pub label: String,
}

impl PermutationDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PermutationDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        for (which, arr) in [("sigma_s", &doc.sigma_s), ("sigma_t", &doc.sigma_t)] {
            if arr.len() != doc.n {
                return Err(Error::Document(format!(
                    "{which} has {} entries but n = {}",
                    arr.len(),
                    doc.n
                )));
            }
        }
        Ok(doc)
    }

    /// Compact single-line JSON with a trailing newline. Field order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn into_subgroup(self) -> Result<Subgroup> {
        let rep = PermutationRep::from_permutations(Perm(self.sigma_s), Perm(self.sigma_t))?;
        Ok(Subgroup::new(
            rep,
            Origin::Permutation { label: self.label },
        ))
    }
}

/// Parses and validates a permutation document. All violations are reported
/// together in [`Error::InvalidRep`].
pub fn load_permutation(text: &str) -> Result<Subgroup> {
    PermutationDocument::from_json(text)?.into_subgroup()
}

pub fn export_permutation(g: &Subgroup) -> PermutationDocument {
    PermutationDocument {
        n: g.rep.n,
        sigma_s: g.rep.sigma_s.0.clone(),
        sigma_t: g.rep.sigma_t.0.clone(),
        label: g.label().to_string(),
    }
}
