use gordian_core::tangle::{
    canonical_continued_fraction, tangle_from_continued_fraction, Fraction, RationalTangle,
    TwistStep,
};
use num_integer::Integer;
use num_rational::Ratio;
use proptest::prelude::*;

fn reduced_sweep(bound: i64) -> impl Iterator<Item = Fraction> {
    (-bound..=bound).flat_map(move |p| {
        (1..=bound)
            .filter(move |&q| p.gcd(&q) == 1)
            .map(move |q| Fraction::new(p, q).unwrap())
    })
}

fn ratio(f: Fraction) -> Ratio<i64> {
    Ratio::new(f.numer(), f.denom())
}

#[test]
fn canonical_round_trip_and_shape() {
    let mut checked = 0;
    for f in reduced_sweep(200) {
        let cf = canonical_continued_fraction(f).unwrap();
        let entries = cf.entries();
        assert_eq!(entries.len() % 2, 1, "{f}: even length {entries:?}");
        let positive = entries.iter().all(|&a| a >= 0);
        let negative = entries.iter().all(|&a| a <= 0);
        assert!(positive || negative, "{f}: mixed signs {entries:?}");
        let t = tangle_from_continued_fraction(&cf).unwrap();
        assert_eq!(t.fraction(), f, "{f} via {cf}");
        // independent evaluation of a1 + 1/(a2 + ... + 1/an)
        let (last, rest) = entries.split_last().unwrap();
        let value = rest
            .iter()
            .rev()
            .fold(Ratio::from_integer(*last), |acc, &a| {
                Ratio::from_integer(a) + acc.recip()
            });
        assert_eq!(value, ratio(f), "{f} via {cf}");
        checked += 1;
    }
    assert!(checked > 40_000);
}

#[test]
fn twist_identities_on_sweep() {
    for f in reduced_sweep(60) {
        let r = ratio(f);
        for n in -10i64..=10 {
            let added = TwistStep::AddInteger(n).apply(f).unwrap();
            assert_eq!(ratio(added), r + n, "{f} + [{n}]");
            let starred = TwistStep::StarVertical(n).apply(f).unwrap();
            // 1/(n + 1/F), with 1/0 standing for infinity
            if f.is_zero() {
                assert_eq!(starred, Fraction::ZERO, "{f} * [{n}]");
                continue;
            }
            let denom = Ratio::from_integer(n) + r.recip();
            if denom == Ratio::from_integer(0) {
                assert!(starred.is_infinite(), "{f} * [{n}]");
            } else {
                assert_eq!(ratio(starred), denom.recip(), "{f} * [{n}]");
            }
        }
    }
}

#[test]
fn involutions_on_sweep() {
    for f in reduced_sweep(200).chain([Fraction::INFINITY]) {
        assert_eq!(f.mirror().unwrap().mirror().unwrap(), f);
        assert_eq!(f.recip().recip(), f);
        assert_eq!(f.rotate().unwrap().rotate().unwrap(), f);
    }
}

proptest! {
    #[test]
    fn word_fraction_matches_oracle(
        steps in prop::collection::vec((0u8..5, -10i64..=10), 0..12)
    ) {
        let mut t = RationalTangle::zero();
        // oracle keeps (p, q) as a projective pair
        let (mut p, mut q) = (0i128, 1i128);
        for (kind, n) in steps {
            let step = match kind {
                0 => TwistStep::AddInteger(n),
                1 => TwistStep::StarVertical(n),
                2 => TwistStep::Mirror,
                3 => TwistStep::Rotate,
                _ => TwistStep::Invert,
            };
            (p, q) = match step {
                TwistStep::AddInteger(n) => (p + n as i128 * q, q),
                TwistStep::StarVertical(n) => (p, q + n as i128 * p),
                TwistStep::Mirror => (-p, q),
                TwistStep::Rotate => (-q, p),
                TwistStep::Invert => (q, p),
            };
            match t.then(step) {
                Ok(next) => t = next,
                Err(_) => return Ok(()),
            }
        }
        let f = t.fraction();
        // compare as projective points: p·q' = q·p'
        prop_assert_eq!(p * f.denom() as i128, q * f.numer() as i128);
    }

    #[test]
    fn isotopy_is_fraction_equality(a in -50i64..50, b in 1i64..50, n in -5i64..5) {
        prop_assume!(a.gcd(&b) == 1);
        let f = Fraction::new(a, b).unwrap();
        let cf = canonical_continued_fraction(f).unwrap();
        let t = tangle_from_continued_fraction(&cf).unwrap();
        let u = t.then(TwistStep::AddInteger(n)).unwrap().then(TwistStep::AddInteger(-n)).unwrap();
        prop_assert!(t.isotopic(&u));
        prop_assert_ne!(t.word(), u.word());
    }
}
