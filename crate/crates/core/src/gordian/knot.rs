use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::GordianError;
use crate::homology::FinAbGroup;
use crate::knots::RationalKnotClass;
use crate::poly::{alexander_at_minus1, conway_kn};
use crate::tangle::Fraction;

/// A prime knot known only through stored invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NamedPrime {
    pub id: String,
    pub determinant: Option<BigUint>,
    pub h1: Option<FinAbGroup>,
    pub sphere1_moves: BTreeSet<String>,
}

impl NamedPrime {
    /// The `n`-th member of the C(n) witness family, with determinant
    /// `|∇(Kₙ)(2i)|`. Its cover homology is recorded only when the
    /// determinant is squarefree (then the group is forced to be cyclic).
    pub fn k_family(n: u32) -> Result<Self, GordianError> {
        let conway = conway_kn(n)?;
        let det = alexander_at_minus1(&conway)?.magnitude().clone();
        let h1 = det
            .to_u64()
            .filter(|&d| is_squarefree(d) == Some(true))
            .map(FinAbGroup::cyclic)
            .transpose()?;
        Ok(Self {
            id: format!("K{n}"),
            determinant: Some(det),
            h1,
            sphere1_moves: BTreeSet::from([format!("C({n})")]),
        })
    }
}

/// `Some(true)` if `d` is squarefree, `None` if trial division up to 10⁶
/// cannot decide.
fn is_squarefree(mut d: u64) -> Option<bool> {
    let mut p = 2u64;
    while p <= 1_000_000 && p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return Some(false);
            }
        }
        p += 1;
    }
    // leftover cofactor is prime when p² > d
    (p * p > d).then_some(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Rational(RationalKnotClass),
    Named(NamedPrime),
}

impl Summand {
    fn h1(&self) -> Option<FinAbGroup> {
        match self {
            Summand::Rational(c) => Some(FinAbGroup::cyclic(c.p()).expect("p ≥ 3")),
            Summand::Named(n) => match (&n.h1, &n.determinant) {
                (Some(h), _) => Some(h.clone()),
                (None, Some(d)) if d.is_one() => Some(FinAbGroup::trivial()),
                _ => None,
            },
        }
    }

    fn determinant(&self) -> Option<BigUint> {
        match self {
            Summand::Rational(c) => Some(BigUint::from(c.p())),
            Summand::Named(n) => n
                .determinant
                .clone()
                .or_else(|| n.h1.as_ref().map(FinAbGroup::determinant)),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Rational(c) => write!(f, "{c}"),
            Summand::Named(n) => f.write_str(&n.id),
        }
    }
}

/// Certified range of `e₂`; `upper = None` means no finite upper bound is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E2Bounds {
    pub lower: usize,
    pub upper: Option<usize>,
}

impl E2Bounds {
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }

    /// Lower bound on `|a - b|` for `a` in `self` and `b` in `other`.
    pub fn gap_lower_bound(&self, other: &E2Bounds) -> usize {
        let below = |lo: usize, hi: Option<usize>| hi.map_or(0, |h| lo.saturating_sub(h));
        below(self.lower, other.upper).max(below(other.lower, self.upper))
    }
}

/// A knot as a formal connected sum: a multiset of prime summands. The
/// empty multiset is the unknot.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicKnot {
    summands: BTreeMap<Summand, usize>,
}

impl SymbolicKnot {
    pub fn unknot() -> Self {
        Self::default()
    }

    pub fn prime(s: Summand) -> Self {
        if let Summand::Rational(c) = &s {
            if c.is_unknot() {
                return Self::unknot();
            }
        }
        Self {
            summands: BTreeMap::from([(s, 1)]),
        }
    }

    pub fn rational(class: RationalKnotClass) -> Self {
        Self::prime(Summand::Rational(class))
    }

    pub fn from_fraction(f: Fraction) -> Result<Self, GordianError> {
        Ok(Self::rational(RationalKnotClass::from_fraction(f)?))
    }

    pub fn named(n: NamedPrime) -> Self {
        Self::prime(Summand::Named(n))
    }

    pub fn trefoil() -> Self {
        Self::from_fraction(Fraction::integer(3)).expect("3/1 is a knot")
    }

    pub fn is_unknot(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> impl Iterator<Item = (&Summand, usize)> {
        self.summands.iter().map(|(s, &m)| (s, m))
    }

    pub fn summand_count(&self) -> usize {
        self.summands.values().sum()
    }

    pub fn connected_sum(&self, other: &SymbolicKnot) -> SymbolicKnot {
        let mut out = self.clone();
        for (s, m) in &other.summands {
            *out.summands.entry(s.clone()).or_default() += m;
        }
        out
    }

    /// The connected sum of `k` copies.
    pub fn power(&self, k: usize) -> SymbolicKnot {
        Self {
            summands: self
                .summands
                .iter()
                .filter(|_| k > 0)
                .map(|(s, m)| (s.clone(), m * k))
                .collect(),
        }
    }

    /// `H₁(Σ₂)` as the direct sum over summands; fails if a named summand
    /// carries no homology.
    pub fn h1(&self) -> Result<FinAbGroup, GordianError> {
        let mut orders = Vec::new();
        for (s, &m) in &self.summands {
            let h = s
                .h1()
                .ok_or_else(|| GordianError::MissingHomology(s.to_string()))?;
            for _ in 0..m {
                orders.extend_from_slice(h.factors());
            }
        }
        Ok(FinAbGroup::from_cyclic_orders(orders)?)
    }

    pub fn determinant(&self) -> Option<BigUint> {
        self.summands
            .iter()
            .try_fold(BigUint::one(), |acc, (s, &m)| {
                s.determinant().map(|d| acc * d.pow(m as u32))
            })
    }

    /// Bounds on the minimum generator count of `H₁(Σ₂)`.
    ///
    /// Summands with explicit homology are summed exactly. A named summand
    /// with determinant `d > 1` but no stored group contributes at least one
    /// generator per copy for a prime dividing `d`; copies of one such
    /// summand stack, distinct ones are only combined through `max`.
    pub fn e2_bounds(&self) -> Result<E2Bounds, GordianError> {
        let mut orders = Vec::new();
        let mut unknown_lower = 0usize;
        let mut all_known = true;
        for (s, &m) in &self.summands {
            match s.h1() {
                Some(h) => (0..m).for_each(|_| orders.extend_from_slice(h.factors())),
                None => {
                    all_known = false;
                    let nontrivial = s.determinant().is_some_and(|d| d > BigUint::one());
                    if nontrivial {
                        unknown_lower = unknown_lower.max(m);
                    }
                }
            }
        }
        let known = FinAbGroup::from_cyclic_orders(orders)?.min_generators();
        Ok(E2Bounds {
            lower: known.max(unknown_lower),
            upper: all_known.then_some(known),
        })
    }

    /// Exact `e₂`, failing when stored data leaves it undetermined.
    pub fn e2(&self) -> Result<usize, GordianError> {
        let b = self.e2_bounds()?;
        b.exact()
            .ok_or_else(|| GordianError::MissingHomology(self.to_string()))
    }
}

impl fmt::Display for SymbolicKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unknot() {
            return f.write_str("unknot");
        }
        let mut first = true;
        for (s, &m) in &self.summands {
            for _ in 0..m {
                if !first {
                    f.write_str("#")?;
                }
                first = false;
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SymbolicKnot {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_summand(tok: &str) -> Result<SymbolicKnot, GordianError> {
    let bad = |reason: &str| GordianError::Parse {
        token: tok.to_string(),
        reason: reason.to_string(),
    };
    match tok {
        "unknot" | "U" | "0_1" => return Ok(SymbolicKnot::unknot()),
        "3_1" | "trefoil" => return Ok(SymbolicKnot::trefoil()),
        "4_1" => return SymbolicKnot::from_fraction(Fraction::new(5, 2).expect("5/2")),
        _ => {}
    }
    if let Some(n) = tok.strip_prefix('K') {
        let n: u32 = n.parse().map_err(|_| bad("expected K<n> with n ≥ 1"))?;
        return Ok(SymbolicKnot::named(NamedPrime::k_family(n)?));
    }
    let f: Fraction = tok
        .parse()
        .map_err(|_| bad("expected a fraction p/q, K<n>, or unknot"))?;
    SymbolicKnot::from_fraction(f).map_err(|e| bad(&e.to_string()))
}

impl FromStr for SymbolicKnot {
    type Err = GordianError;

    /// `#`-joined summands: fractions `p/q` with odd `p`, `K<n>`, `3_1`,
    /// `4_1`, or `unknot`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split('#')
            .map(str::trim)
            .try_fold(SymbolicKnot::unknot(), |acc, tok| {
                Ok(acc.connected_sum(&parse_summand(tok)?))
            })
    }
}
