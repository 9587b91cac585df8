use gordian_core::homology::lens_h1;
use gordian_core::knots::{
    closure_c1, closure_c2, knots_equivalent, parity_of, theorem1_witness, Parity,
    RationalKnotClass,
};
use gordian_core::tangle::Fraction;
use num_integer::Integer;
use proptest::prelude::*;

fn odd_fractions(max_p: i64) -> Vec<Fraction> {
    (-max_p..=max_p)
        .filter(|p| p % 2 != 0)
        .flat_map(|p| {
            (1..=p.abs().max(1))
                .filter(move |q| p.gcd(q) == 1)
                .map(move |q| Fraction::new(p, q).unwrap())
        })
        .collect()
}

/// Oracle: the set of residues Schubert's theorem identifies with `q`.
fn schubert_orbit(p: u64, q: u64) -> Vec<u64> {
    let mut out = vec![q % p];
    if let Some(inv) = (1..p.max(2)).find(|&x| (x * q) % p == 1 % p) {
        out.push(inv);
    }
    out
}

fn signed_residue(f: Fraction) -> (u64, u64) {
    let p = f.numer().unsigned_abs();
    let q = if f.numer() < 0 { -f.denom() } else { f.denom() };
    (p, q.rem_euclid(p.max(1) as i64) as u64)
}

#[test]
fn equivalence_relation_exhaustive() {
    // all q mod p classes for each odd p ≤ 49, checked on triples within p
    for p in (1..=49i64).step_by(2) {
        let fs: Vec<Fraction> = (-p..=p)
            .filter(|&q| q != 0 && p.gcd(&q) == 1 || p == 1)
            .filter_map(|q| Fraction::new(p, q).ok())
            .collect();
        let rel: Vec<Vec<bool>> = fs
            .iter()
            .map(|&a| {
                fs.iter()
                    .map(|&b| knots_equivalent(a, b).unwrap())
                    .collect()
            })
            .collect();
        for i in 0..fs.len() {
            assert!(rel[i][i], "reflexive at {}", fs[i]);
            for j in 0..fs.len() {
                assert_eq!(rel[i][j], rel[j][i], "symmetric at {} {}", fs[i], fs[j]);
                if !rel[i][j] {
                    continue;
                }
                for k in 0..fs.len() {
                    if rel[j][k] {
                        assert!(rel[i][k], "transitive at {} {} {}", fs[i], fs[j], fs[k]);
                    }
                }
            }
        }
    }
}

#[test]
fn equivalence_matches_orbit_oracle() {
    let fs = odd_fractions(21);
    for &a in &fs {
        for &b in &fs {
            let (p, q) = signed_residue(a);
            let (l, m) = signed_residue(b);
            let expected = p == l && schubert_orbit(p, q).contains(&m);
            assert_eq!(knots_equivalent(a, b).unwrap(), expected, "{a} vs {b}");
            let same_class = RationalKnotClass::from_fraction(a).unwrap()
                == RationalKnotClass::from_fraction(b).unwrap();
            assert_eq!(same_class, expected, "class key of {a} vs {b}");
        }
    }
}

#[test]
fn witnesses_on_sweep() {
    for p in -20i64..=20 {
        for q in 0..=20i64 {
            if p.gcd(&q) != 1 || (p == 0 && q == 1) {
                continue;
            }
            let f = Fraction::new(p, q).unwrap();
            let w = theorem1_witness(f).unwrap();
            let n = w.fraction.numer().unsigned_abs();
            assert!(n >= 3 && n % 2 == 1, "{f} -> {}", w.fraction);
            assert_eq!(parity_of(w.fraction), Parity::Knot);
            assert_eq!(lens_h1(w.fraction).unwrap().min_generators(), 1);
        }
    }
}

#[test]
fn closures_preserve_reducedness() {
    for p in -50i64..=50 {
        for q in 1..=50i64 {
            if p.gcd(&q) != 1 || p == 0 {
                continue;
            }
            let f = Fraction::new(p, q).unwrap();
            for g in [closure_c1(f).unwrap(), closure_c2(f).unwrap()] {
                assert_eq!(g.numer().gcd(&g.denom()), 1, "{f} -> {g}");
            }
        }
    }
}

proptest! {
    #[test]
    fn class_round_trips(p in 1i64..200, q in -400i64..400) {
        prop_assume!(p % 2 == 1 && q != 0 && p.gcd(&q) == 1);
        let f = Fraction::new(p, q).unwrap();
        let c = RationalKnotClass::from_fraction(f).unwrap();
        let back: RationalKnotClass = c.to_string().parse().unwrap();
        prop_assert_eq!(back, c);
        prop_assert!(knots_equivalent(f, c.fraction()).unwrap());
        prop_assert_eq!(c.mirror().mirror(), c);
        prop_assert_eq!(c.determinant(), p as u64);
    }
}
