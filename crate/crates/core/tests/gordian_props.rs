use std::collections::{BTreeMap, BTreeSet};

use gordian_core::gordian::{
    avoid_finite_set, basic_lemma_certificate, distance_lower_bound, q_chain, shift_path,
    witness_edge, CertifiedPath, MovePattern, Summand, SymbolicKnot,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn mv(s: &str) -> MovePattern {
    s.parse().unwrap()
}

fn multiset(k: &SymbolicKnot) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for (s, m) in k.summands() {
        *out.entry(s.to_string()).or_default() += m;
    }
    out
}

fn summand_pool() -> Vec<&'static str> {
    vec!["3/1", "3/2", "5/2", "5/1", "7/3", "9/2", "K1", "K2"]
}

fn knot_strategy(max: usize) -> impl Strategy<Value = SymbolicKnot> {
    prop::collection::vec(prop::sample::select(summand_pool()), 0..=max).prop_map(|toks| {
        toks.iter().fold(SymbolicKnot::unknot(), |acc, t| {
            acc.connected_sum(&t.parse().unwrap())
        })
    })
}

fn path_strategy() -> impl Strategy<Value = (MovePattern, CertifiedPath)> {
    let moves = prop::sample::select(vec!["X", "Delta", "H2", "H3", "r(3/1)", "C1", "5-move"]);
    (moves, 1usize..=6, knot_strategy(2), any::<bool>()).prop_map(|(m, len, w, rev)| {
        let m = mv(m);
        let chain = shift_path(&q_chain(m, len).unwrap(), &w);
        (m, if rev { chain.reversed() } else { chain })
    })
}

proptest! {
    #[test]
    fn shift_is_vertexwise_sum((_, path) in path_strategy(), w in knot_strategy(3)) {
        let shifted = shift_path(&path, &w);
        prop_assert_eq!(shifted.len(), path.len());
        for (v, s) in path.vertices().iter().zip(shifted.vertices()) {
            let mut expected = multiset(v);
            for (k, m) in multiset(&w) {
                *expected.entry(k).or_default() += m;
            }
            prop_assert_eq!(multiset(s), expected);
            prop_assert_eq!(s, &v.connected_sum(&w));
        }
        prop_assert!(shifted.verify().is_ok());
    }

    #[test]
    fn reversal_keeps_certification((_, path) in path_strategy()) {
        let back = path.reversed();
        prop_assert!(back.verify().is_ok());
        prop_assert_eq!(back.reversed(), path);
    }

    #[test]
    fn bound_never_exceeds_path_length((m, path) in path_strategy()) {
        let bound = distance_lower_bound(path.start(), path.end(), m).unwrap();
        prop_assert!(bound <= Ratio::from_integer(path.len() as u64));
    }

    #[test]
    fn connected_sum_is_commutative_monoid(a in knot_strategy(3), b in knot_strategy(3), c in knot_strategy(3)) {
        prop_assert_eq!(a.connected_sum(&b), b.connected_sum(&a));
        prop_assert_eq!(a.connected_sum(&b).connected_sum(&c), a.connected_sum(&b.connected_sum(&c)));
        prop_assert_eq!(a.connected_sum(&SymbolicKnot::unknot()), a.clone());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<SymbolicKnot>().unwrap(), a);
    }
}

#[test]
fn chain_generator_counts() {
    for m in ["X", "Delta", "H2", "H3", "r(3/1)", "C1", "C3", "r(7/2)"] {
        let m = mv(m);
        let chain = q_chain(m, 6).unwrap();
        let q = witness_edge(m).unwrap().endpoints().1.clone();
        let cyclic_prime = match q.summands().next() {
            Some((Summand::Rational(c), _)) => (2..c.p()).all(|d| c.p() % d != 0),
            _ => false,
        };
        for (i, v) in chain.vertices().iter().enumerate() {
            let b = v.e2_bounds().unwrap();
            assert!(b.lower >= i, "{m}: vertex {i} has e₂ ≥ {}", b.lower);
            if cyclic_prime {
                assert_eq!(b.exact(), Some(i), "{m}: vertex {i}");
            }
        }
    }
}

#[test]
fn certificate_soundness_sweep() {
    for m in ["X", "Delta", "H2", "H3", "r(3/1)"] {
        let m = mv(m);
        let to_unknot = CertifiedPath::from_edge(witness_edge(m).unwrap()).reversed();
        let longer = q_chain(m, 3).unwrap().reversed();
        for zeta in [&to_unknot, &longer] {
            for r in 1..=6 {
                let (path, report) = basic_lemma_certificate(m, zeta, r).unwrap();
                assert!(report.pass);
                path.verify().unwrap();
                for v in path.vertices() {
                    let b = distance_lower_bound(v, zeta.end(), m).unwrap();
                    assert!(b >= Ratio::from_integer(r), "{m} r={r}: {v} has {b}");
                }
                assert_eq!(
                    report.chain_length,
                    (m.string_count() as usize - 1) * r as usize + zeta.end().e2().unwrap()
                );
            }
        }
    }
}

#[test]
fn avoidance_over_prefixes() {
    for m in ["X", "H2", "r(3/1)", "r(5/3)"] {
        let m = mv(m);
        let registry = m.sphere1_registry().unwrap();
        let gamma = q_chain(m, 2).unwrap();
        for size in 0..=20 {
            let forbidden: BTreeSet<_> = registry.iter().take(size).collect();
            let out = avoid_finite_set(&gamma, &forbidden, m).unwrap();
            out.path.verify().unwrap();
            assert_eq!(out.witness_index, size, "{m}");
            assert!(out.path.vertices().iter().all(|v| !forbidden.contains(v)));
            assert_eq!(out.path.start(), gamma.start());
            assert_eq!(out.path.end(), gamma.end());
        }
    }
}
