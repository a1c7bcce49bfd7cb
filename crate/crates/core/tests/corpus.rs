//! Corpus-wide invariants of the main pipeline, checked against the
//! brute-force oracle where one exists.

use emsurf_core::dimensions::{dim_canonical_ring, dim_geometric};
use emsurf_core::oracle::{crosscheck, oracle_invariants, OracleConfig};
use emsurf_core::subgroup::subgroup_closure;
use emsurf_core::{
    build_congruence, builtin_spec, contains_minus_one, curve_invariants, export_permutation,
    fiber_configuration, load_permutation, reduce_mod, surface_invariants, verify_group, Generator,
    Subgroup,
};

fn corpus() -> Vec<Subgroup> {
    let mut v = Vec::new();
    for n in 3..=12 {
        v.push(build_congruence(&builtin_spec("gamma1", n).unwrap()).unwrap());
    }
    for n in 3..=8 {
        v.push(build_congruence(&builtin_spec("gamma", n).unwrap()).unwrap());
    }
    v
}

#[test]
fn oracle_agrees_on_corpus() {
    for g in corpus() {
        assert_eq!(crosscheck(&g).unwrap(), vec![], "{}", g.label());
    }
}

#[test]
fn frozen_oracle_values() {
    // values computed by the oracle and frozen here
    let cfg = OracleConfig::default();
    let o = oracle_invariants(&builtin_spec("gamma1", 4).unwrap(), &cfg).unwrap();
    assert_eq!((o.mu, o.eps3, o.g), (6, 0, 0));
    assert_eq!(o.cusps, vec![(1, false), (1, true), (4, true)]);
    let o = oracle_invariants(&builtin_spec("gamma1", 11).unwrap(), &cfg).unwrap();
    assert_eq!((o.mu, o.eps3, o.g, o.cusps.len()), (60, 0, 1, 10));
    let o = oracle_invariants(&builtin_spec("gamma", 7).unwrap(), &cfg).unwrap();
    assert_eq!((o.mu, o.eps3, o.g, o.cusps.len()), (168, 0, 3, 24));
    let o = oracle_invariants(&builtin_spec("gamma1", 3).unwrap(), &cfg).unwrap();
    assert_eq!((o.mu, o.eps3, o.g), (4, 1, 0));
    assert_eq!(o.cusps, vec![(1, true), (3, true)]);
}

#[test]
fn cosets_and_cusps_bookkeeping() {
    for g in corpus() {
        let n = g.index();
        assert_eq!(n % 2, 0, "{}", g.label());
        let spec = g.congruence_spec().unwrap();
        assert_eq!(
            n * subgroup_closure(spec).len(),
            emsurf_core::subgroup::sl2_mod_order(spec.level)
        );
        let ci = curve_invariants(&g).unwrap();
        assert_eq!(ci.cusps.iter().map(|c| c.psl_width).sum::<i64>(), ci.mu);
        let mut all: Vec<usize> = ci.cusps.iter().flat_map(|c| c.cosets.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..n).collect::<Vec<_>>(), "{}", g.label());
        for c in &ci.cusps {
            let expect = if c.regular {
                2 * c.sl_width
            } else {
                c.sl_width
            };
            assert_eq!(c.cosets.len() as i64, expect);
            assert_eq!(
                c.sl_width,
                if c.regular {
                    c.psl_width
                } else {
                    2 * c.psl_width
                }
            );
        }
        assert_eq!(ci.eps2, 0);
        assert!(g.rep.sigma_s.is_fixed_point_free());
    }
}

#[test]
fn witnesses_are_consistent() {
    for g in corpus() {
        let spec = g.congruence_spec().unwrap();
        let h = subgroup_closure(spec);
        let level = i64::from(spec.level);
        for i in 0..g.index() {
            for gen in Generator::ALL {
                let j = g.rep.rho(gen).apply(i);
                let lhs =
                    reduce_mod(&g.rep.witnesses[i].mul(&gen.matrix()).unwrap(), level).unwrap();
                let rhs = reduce_mod(&g.rep.witnesses[j], level).unwrap();
                assert!(
                    h.iter().any(|e| e.mul(&rhs) == lhs),
                    "{} coset {i}",
                    g.label()
                );
            }
        }
    }
}

#[test]
fn minus_one_dichotomy() {
    for name in ["gamma", "gamma1"] {
        for n in 1..=12 {
            let g = build_congruence(&builtin_spec(name, n).unwrap()).unwrap();
            let s2 = g.rep.minus_one();
            assert!(s2.is_identity() || s2.is_fixed_point_free());
            assert_eq!(contains_minus_one(&g), n <= 2, "{name}:{n}");
        }
    }
}

#[test]
fn surface_tripwires_and_identities() {
    for g in corpus() {
        let ci = curve_invariants(&g).unwrap();
        let fc = fiber_configuration(&ci);
        let si = surface_invariants(&ci, &fc).unwrap();
        assert_eq!(si.e % 12, 0);
        assert!(si.chi >= 1 && si.p_g >= 0);
        assert_eq!(dim_canonical_ring(&ci, &si, 1).unwrap(), si.p_g);
        // side B is non-decreasing for m >= 1
        let dims: Vec<i64> = (1..=12)
            .map(|m| dim_geometric(&ci, &si, m).unwrap())
            .collect();
        assert!(
            dims.windows(2).all(|w| w[0] <= w[1]),
            "{}: {dims:?}",
            g.label()
        );
    }
}

#[test]
fn theorem_identity_on_corpus() {
    for g in corpus() {
        let r = verify_group(&g, 12).unwrap();
        assert!(
            r.verdict,
            "{}: {:?}",
            g.label(),
            r.failed_checks().collect::<Vec<_>>()
        );
        assert!(r.entries.iter().all(|e| e.side_a == e.side_b));
        assert_eq!(r.entries[0].side_a, 1);
    }
}

#[test]
fn export_then_load_reproduces_report() {
    for g in corpus() {
        let doc = export_permutation(&g);
        let back = load_permutation(&doc.to_json()).unwrap();
        assert_eq!(export_permutation(&back), doc);
        let a = verify_group(&g, 6).unwrap();
        let b = verify_group(&back, 6).unwrap();
        assert_eq!(a.entries, b.entries);
        assert_eq!(a.curve, b.curve);
    }
}
