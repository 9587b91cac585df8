use gordian_core::homology::{
    brute_force_min_generators_of, determinant, direct_sum, lens_h1, min_generators, FinAbGroup,
};
use gordian_core::tangle::Fraction;
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|first| {
            partitions(n - first, first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Every abelian group of order `n`, as prime-power cyclic orders, with
/// the generator count read off the partitions (largest part count).
fn groups_of_order(n: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = vec![(vec![], 0usize)];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for (orders, rank) in &out {
            for part in partitions(e, e) {
                let mut o = orders.clone();
                o.extend(part.iter().map(|&k| p.pow(k)));
                next.push((o, (*rank).max(part.len())));
            }
        }
        out = next;
    }
    out
}

#[test]
fn generator_count_matches_brute_force() {
    let mut classes = 0;
    for n in 1..=36u64 {
        for (orders, rank) in groups_of_order(n) {
            let g = FinAbGroup::from_cyclic_orders(orders.iter().copied()).unwrap();
            assert_eq!(g.order(), BigUint::from(n));
            let brute = brute_force_min_generators_of(&orders).unwrap();
            assert_eq!(min_generators(&g), brute, "{orders:?}");
            assert_eq!(brute, rank, "{orders:?}");
            classes += 1;
        }
    }
    // number of abelian groups of order 1..=36
    assert_eq!(classes, 62);
}

#[test]
fn prime_power_sums() {
    for p in [2u64, 3, 5, 7] {
        for a in 0..=4usize {
            for b in 0..=4 - a {
                let g = FinAbGroup::from_cyclic_orders(vec![p; a]).unwrap();
                let h = FinAbGroup::from_cyclic_orders(vec![p; b]).unwrap();
                assert_eq!(direct_sum(&g, &h).unwrap().min_generators(), a + b);
            }
        }
    }
}

#[test]
fn lens_space_determinants() {
    for p in (-99i64..=99).filter(|p| p % 2 != 0) {
        for q in (1..=p.abs()).filter(|q| p.gcd(q) == 1) {
            let f = Fraction::new(p, q).unwrap();
            let h = lens_h1(f).unwrap();
            assert_eq!(determinant(&h), BigUint::from(p.unsigned_abs()));
            assert_eq!(h.min_generators(), usize::from(p.abs() > 1));
        }
    }
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec(1u64..60, 0..5),
        b in prop::collection::vec(1u64..60, 0..5),
    ) {
        let g = FinAbGroup::from_cyclic_orders(a.iter().copied()).unwrap();
        let h = FinAbGroup::from_cyclic_orders(b.iter().copied()).unwrap();
        let s = direct_sum(&g, &h).unwrap();
        prop_assert_eq!(determinant(&s), determinant(&g) * determinant(&h));
        prop_assert!(s.factors().windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(s.factors().iter().all(|&d| d >= 2));
    }

    #[test]
    fn canonical_form_counts_primary_parts(a in prop::collection::vec(1u64..40, 0..5)) {
        let g = FinAbGroup::from_cyclic_orders(a.iter().copied()).unwrap();
        // the rank is the largest number of orders sharing a prime factor
        let mut best = 0;
        for p in 2..40u64 {
            if factorize(p).len() == 1 && factorize(p)[0].1 == 1 {
                best = best.max(a.iter().filter(|&&x| x.gcd(&p) == p).count());
            }
        }
        prop_assert_eq!(g.min_generators(), best);
    }
}
