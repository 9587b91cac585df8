//! Rational (two-bridge) knots and links as numerator closures.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tangle::{Fraction, RationalTangle, TangleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("{0} closes to a two-component link, not a knot")]
    LinkParity(Fraction),
    #[error("the closure of 0/1 is excluded: a rational move needs T ≠ [0]")]
    ZeroTangle,
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error("cannot parse knot class `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Knot,
    TwoComponentLink,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Knot => f.write_str("knot"),
            Parity::TwoComponentLink => f.write_str("link"),
        }
    }
}

/// Parity of the numerator closure: a knot iff the numerator is odd.
pub fn parity_of(f: Fraction) -> Parity {
    if f.numer().rem_euclid(2) == 1 {
        Parity::Knot
    } else {
        Parity::TwoComponentLink
    }
}

/// The numerator closure `N(T)` of a rational tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalClosure {
    pub fraction: Fraction,
    pub parity: Parity,
}

impl RationalClosure {
    pub fn of(fraction: Fraction) -> Self {
        Self {
            fraction,
            parity: parity_of(fraction),
        }
    }

    pub fn is_knot(&self) -> bool {
        self.parity == Parity::Knot
    }

    /// `|p|`, the order of the first homology of the double branched cover.
    pub fn determinant(&self) -> u64 {
        self.fraction.numer().unsigned_abs()
    }

    pub fn class(&self) -> Result<RationalKnotClass, KnotError> {
        RationalKnotClass::from_fraction(self.fraction)
    }
}

pub fn numerator(t: &RationalTangle) -> RationalClosure {
    RationalClosure::of(t.fraction())
}

/// Canonical key of a two-bridge knot up to ambient isotopy.
///
/// The sign of the fraction is folded into the residue (`-p/q` becomes
/// `p/(-q mod p)`), so mirror images stay distinct unless the Schubert
/// congruence identifies them. The residue is the smaller of `q` and
/// `q⁻¹ mod p`. The unknot is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalKnotClass {
    p: u64,
    q: u64,
}

impl RationalKnotClass {
    pub const UNKNOT: RationalKnotClass = RationalKnotClass { p: 1, q: 0 };

    pub fn from_fraction(f: Fraction) -> Result<Self, KnotError> {
        if parity_of(f) != Parity::Knot {
            return Err(KnotError::LinkParity(f));
        }
        let p = f.numer().unsigned_abs();
        if p == 1 {
            return Ok(Self::UNKNOT);
        }
        Ok(Self::from_residue(p, signed_residue(f)))
    }

    fn from_residue(p: u64, q: u64) -> Self {
        let inv = mod_inverse(q, p).expect("residue is a unit mod p");
        Self { p, q: q.min(inv) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    pub fn determinant(&self) -> u64 {
        self.p
    }

    pub fn mirror(&self) -> Self {
        if self.is_unknot() {
            return *self;
        }
        Self::from_residue(self.p, self.p - self.q)
    }

    pub fn is_amphichiral(&self) -> bool {
        self.mirror() == *self
    }

    /// A fraction whose numerator closure lies in this class.
    pub fn fraction(&self) -> Fraction {
        if self.is_unknot() {
            return Fraction::INFINITY;
        }
        Fraction::new(self.p as i64, self.q as i64).expect("class values fit in i64")
    }
}

impl fmt::Display for RationalKnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalKnotClass {
    type Err = KnotError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let f: Fraction = s.parse()?;
        Self::from_fraction(f)
    }
}

impl TryFrom<String> for RationalKnotClass {
    type Error = KnotError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<RationalKnotClass> for String {
    fn from(value: RationalKnotClass) -> Self {
        value.to_string()
    }
}

/// `q` for `p/q` with `p > 0`, `-q` for negative `p`, reduced mod `|p|`.
fn signed_residue(f: Fraction) -> u64 {
    let p = f.numer().unsigned_abs() as i128;
    let q = if f.numer() < 0 {
        -(f.denom() as i128)
    } else {
        f.denom() as i128
    };
    q.rem_euclid(p) as u64
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let ext = (a as i128).extended_gcd(&(m as i128));
    (ext.gcd == 1).then(|| ext.x.rem_euclid(m as i128) as u64)
}

/// Schubert's criterion after moving the sign of each fraction onto its
/// denominator: equal numerators and `q ≡ m` or `q·m ≡ 1 (mod p)`.
pub fn knots_equivalent(a: Fraction, b: Fraction) -> Result<bool, KnotError> {
    for f in [a, b] {
        if parity_of(f) != Parity::Knot {
            return Err(KnotError::LinkParity(f));
        }
    }
    let p = a.numer().unsigned_abs();
    if p != b.numer().unsigned_abs() {
        return Ok(false);
    }
    let (q, m) = (signed_residue(a) as u128, signed_residue(b) as u128);
    let p = p as u128;
    Ok(q % p == m % p || (q * m) % p == 1 % p)
}

fn reject_zero(f: Fraction) -> Result<(), KnotError> {
    if f.is_zero() {
        Err(KnotError::ZeroTangle)
    } else {
        Ok(())
    }
}

/// Splits `f` into `(sign, p', q')` with `p', q' ≥ 0`; `∞` has sign `+1`.
fn split_sign(f: Fraction) -> (i64, i64, i64) {
    let sign = if f.numer() < 0 { -1 } else { 1 };
    (sign, f.numer().abs(), f.denom())
}

fn signed(sign: i64, p: Option<i64>, q: Option<i64>) -> Result<Fraction, KnotError> {
    let overflow = || KnotError::Tangle(TangleError::Overflow("closure"));
    let p = p.ok_or_else(overflow)?;
    let q = q.ok_or_else(overflow)?;
    Ok(Fraction::new(sign * p, q)?)
}

/// First closure: `(p+q)/q`, or `-(p'+q')/q'` for `p/q = -p'/q'`.
pub fn closure_c1(f: Fraction) -> Result<Fraction, KnotError> {
    reject_zero(f)?;
    let (sign, p, q) = split_sign(f);
    signed(sign, p.checked_add(q), Some(q))
}

/// Second closure: `(p+2q)/(p+q)`, or its mirror for negative fractions.
pub fn closure_c2(f: Fraction) -> Result<Fraction, KnotError> {
    reject_zero(f)?;
    let (sign, p, q) = split_sign(f);
    signed(
        sign,
        q.checked_mul(2).and_then(|q2| q2.checked_add(p)),
        p.checked_add(q),
    )
}

/// A knot at distance one from the unknot under the `r(p/q)`-move whose
/// double branched cover has cyclic, nontrivial first homology.
///
/// `1/0` gives the trefoil; `p, q` both odd use the second closure; mixed
/// parity uses the first closure. Negative fractions use the mirrored
/// closures.
pub fn theorem1_witness(f: Fraction) -> Result<RationalClosure, KnotError> {
    reject_zero(f)?;
    let witness = if f.is_infinite() {
        Fraction::integer(3)
    } else if f.numer() % 2 != 0 && f.denom() % 2 != 0 {
        closure_c2(f)?
    } else {
        closure_c1(f)?
    };
    let closure = RationalClosure::of(witness);
    debug_assert!(closure.is_knot() && closure.determinant() >= 3);
    Ok(closure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn numerator_parity() {
        assert_eq!(numerator(&RationalTangle::integer(3)).parity, Parity::Knot);
        assert_eq!(
            numerator(&RationalTangle::integer(2)).parity,
            Parity::TwoComponentLink
        );
        let inf = numerator(&RationalTangle::infinity());
        assert!(inf.is_knot());
        assert!(inf.class().unwrap().is_unknot());
        assert_eq!(
            numerator(&RationalTangle::zero()).parity,
            Parity::TwoComponentLink
        );
    }

    #[test]
    fn equivalence_examples() {
        assert!(knots_equivalent(frac(5, 2), frac(5, 3)).unwrap());
        assert!(!knots_equivalent(frac(3, 1), frac(3, 2)).unwrap());
        assert!(knots_equivalent(frac(7, 3), frac(7, 3)).unwrap());
        assert!(!knots_equivalent(frac(3, 1), frac(-3, 1)).unwrap());
        assert!(knots_equivalent(frac(3, 2), frac(-3, 1)).unwrap());
        assert!(knots_equivalent(Fraction::INFINITY, frac(1, 5)).unwrap());
        assert_eq!(
            knots_equivalent(frac(2, 1), frac(3, 1)),
            Err(KnotError::LinkParity(frac(2, 1)))
        );
    }

    #[test]
    fn class_keys() {
        let trefoil = RationalKnotClass::from_fraction(frac(3, 1)).unwrap();
        assert_eq!(trefoil.to_string(), "3/1");
        assert_eq!(trefoil.mirror().to_string(), "3/2");
        assert!(!trefoil.is_amphichiral());
        let fig8 = RationalKnotClass::from_fraction(frac(5, 3)).unwrap();
        assert_eq!(fig8.to_string(), "5/2");
        assert!(fig8.is_amphichiral());
        assert_eq!(RationalKnotClass::from_fraction(frac(-5, 2)).unwrap(), fig8);
        // 7/5 and 7/3 are one class
        assert_eq!(
            RationalKnotClass::from_fraction(frac(7, 5)).unwrap(),
            RationalKnotClass::from_fraction(frac(7, 3)).unwrap()
        );
        assert_eq!(
            "3/2".parse::<RationalKnotClass>().unwrap(),
            trefoil.mirror()
        );
        assert!("4/1".parse::<RationalKnotClass>().is_err());
    }

    #[test]
    fn closures() {
        assert_eq!(closure_c1(frac(2, 1)).unwrap(), frac(3, 1));
        assert_eq!(closure_c2(frac(3, 1)).unwrap(), frac(5, 4));
        assert_eq!(closure_c1(Fraction::INFINITY).unwrap(), Fraction::INFINITY);
        assert_eq!(closure_c1(frac(-2, 1)).unwrap(), frac(-3, 1));
        assert_eq!(closure_c2(frac(-3, 1)).unwrap(), frac(-5, 4));
        assert_eq!(closure_c1(Fraction::ZERO), Err(KnotError::ZeroTangle));
        assert_eq!(closure_c2(Fraction::ZERO), Err(KnotError::ZeroTangle));
    }

    #[test]
    fn witnesses() {
        assert_eq!(theorem1_witness(frac(2, 1)).unwrap().fraction, frac(3, 1));
        assert_eq!(theorem1_witness(frac(3, 1)).unwrap().fraction, frac(5, 4));
        assert_eq!(
            theorem1_witness(Fraction::INFINITY).unwrap().fraction,
            frac(3, 1)
        );
        assert_eq!(theorem1_witness(frac(-1, 1)).unwrap().fraction, frac(-3, 2));
        assert_eq!(theorem1_witness(Fraction::ZERO), Err(KnotError::ZeroTangle));
    }
}
