use emsurf_core::subgroup::{sl2_mod_order, subgroup_closure, Origin};
use emsurf_core::{
    build_congruence, export_permutation, load_permutation, CongruenceSpec, PermutationDocument,
    PermutationRep, Subgroup,
};

use crate::cache::Cache;
use crate::error::{CliError, Result};
use crate::spec::{canonical_key, GroupSpec, Resolved};

const PERM_NAMESPACE: &str = "perm";

/// Builds the subgroup for a spec, going through the permutation cache for
/// congruence input.
pub fn load_group(spec: &GroupSpec, cache: &Cache) -> Result<Subgroup> {
    match spec.resolve()? {
        Resolved::Congruence(c) => load_congruence(&c, cache),
        Resolved::Permutation(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            Ok(load_permutation(&text)?)
        }
    }
}

fn load_congruence(spec: &CongruenceSpec, cache: &Cache) -> Result<Subgroup> {
    let key = canonical_key(spec);
    if let Some(text) = cache.get(PERM_NAMESPACE, &key) {
        if let Some(g) = from_cached(spec, &text) {
            return Ok(g);
        }
        eprintln!("warning: ignoring stale cache entry for {}", spec.label);
    }
    let g = build_congruence(spec)?;
    cache.put(PERM_NAMESPACE, &key, &export_permutation(&g).to_json());
    Ok(g)
}

fn from_cached(spec: &CongruenceSpec, text: &str) -> Option<Subgroup> {
    let doc = PermutationDocument::from_json(text).ok()?;
    let expected = sl2_mod_order(spec.level) / subgroup_closure(spec).len();
    if doc.n != expected {
        return None;
    }
    let rep = PermutationRep::from_permutations(
        emsurf_core::perm::Perm(doc.sigma_s),
        emsurf_core::perm::Perm(doc.sigma_t),
    )
    .ok()?;
    Some(Subgroup::new(rep, Origin::Congruence(spec.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_hit_matches_fresh_build() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let spec = GroupSpec::Gamma1(6);
        let first = load_group(&spec, &cache).unwrap();
        let second = load_group(&spec, &cache).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn stale_entry_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let c = emsurf_core::builtin_spec("gamma", 3).unwrap();
        cache.put(PERM_NAMESPACE, &canonical_key(&c), "{\"n\":1}");
        let g = load_group(&GroupSpec::Gamma(3), &cache).unwrap();
        assert_eq!(g.index(), 24);
    }
}
