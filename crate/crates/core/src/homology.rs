//! Finite abelian groups, used as first homology of double branched covers.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knots::{parity_of, Parity};
use crate::tangle::Fraction;

/// Largest group the brute-force generator search will enumerate.
pub const BRUTE_FORCE_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("cyclic order 0 is not a finite group")]
    InfiniteFactor,
    #[error("invariant factor exceeds 64 bits")]
    Overflow,
    #[error("group of order {0} is above the brute-force cap of {BRUTE_FORCE_CAP}")]
    TooLarge(BigUint),
    #[error("{0} closes to a link; only knots have lens-space covers here")]
    EvenNumerator(Fraction),
    #[error("only e_2 is computed; e_{0} has no implementation")]
    UnsupportedCover(u32),
}

/// A finite abelian group `Z_{d₁} ⊕ … ⊕ Z_{d_k}` stored in invariant-factor
/// form: every `dᵢ ≥ 2` and `d₁ | d₂ | … | d_k`. The trivial group has no
/// factors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Result<Self, HomologyError> {
        Self::from_cyclic_orders([n])
    }

    /// Canonicalizes an arbitrary multiset of cyclic orders by replacing
    /// pairs `(a, b)` with `(gcd, lcm)` until the divisibility chain holds.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(
        orders: I,
    ) -> Result<Self, HomologyError> {
        let mut d: Vec<u64> = Vec::new();
        for n in orders {
            match n {
                0 => return Err(HomologyError::InfiniteFactor),
                1 => {}
                n => d.push(n),
            }
        }
        d.sort_unstable();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = (d[i] / g)
                    .checked_mul(d[j])
                    .ok_or(HomologyError::Overflow)?;
                d[i] = g;
                d[j] = l;
            }
        }
        // after pass i, d[i] divides every later entry
        d.retain(|&x| x != 1);
        debug_assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
        Ok(Self { factors: d })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> Result<Self, HomologyError> {
        Self::from_cyclic_orders(self.factors.iter().chain(&other.factors).copied())
    }

    /// Minimum number of generators: the number of invariant factors.
    pub fn min_generators(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(1u32), |acc, &d| acc * BigUint::from(d))
    }

    /// Product of the cyclic orders; `|Δ(-1)|` for a knot with this cover homology.
    pub fn determinant(&self) -> BigUint {
        self.order()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = HomologyError;
    fn try_from(value: Vec<u64>) -> Result<Self, Self::Error> {
        Self::from_cyclic_orders(value)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(value: FinAbGroup) -> Self {
        value.factors
    }
}

pub fn direct_sum(g: &FinAbGroup, h: &FinAbGroup) -> Result<FinAbGroup, HomologyError> {
    g.direct_sum(h)
}

pub fn min_generators(g: &FinAbGroup) -> usize {
    g.min_generators()
}

pub fn determinant(g: &FinAbGroup) -> BigUint {
    g.determinant()
}

/// `H₁` of the double branched cover of `N(p/q)`: the lens space `L(p, q)`
/// has `H₁ = Z_{|p|}`.
pub fn lens_h1(f: Fraction) -> Result<FinAbGroup, HomologyError> {
    if parity_of(f) != Parity::Knot {
        return Err(HomologyError::EvenNumerator(f));
    }
    FinAbGroup::cyclic(f.numer().unsigned_abs())
}

/// Minimum generator count of `H₁(Σ_p)`. Only `p = 2` is housed here.
pub fn cover_min_generators(h1_double_cover: &FinAbGroup, p: u32) -> Result<usize, HomologyError> {
    match p {
        2 => Ok(h1_double_cover.min_generators()),
        p => Err(HomologyError::UnsupportedCover(p)),
    }
}

/// Exhaustive search for the smallest generating set, on the explicit
/// product group. Independent of the invariant-factor route.
pub fn brute_force_min_generators(g: &FinAbGroup) -> Result<usize, HomologyError> {
    brute_force_min_generators_of(g.factors())
}

/// Brute-force generator count of `Z_{o₁} × … × Z_{o_k}` for arbitrary
/// (not necessarily canonical) cyclic orders.
pub fn brute_force_min_generators_of(orders: &[u64]) -> Result<usize, HomologyError> {
    if orders.contains(&0) {
        return Err(HomologyError::InfiniteFactor);
    }
    let order = orders
        .iter()
        .fold(BigUint::from(1u32), |acc, &d| acc * BigUint::from(d));
    if order > BigUint::from(BRUTE_FORCE_CAP) {
        return Err(HomologyError::TooLarge(order));
    }
    let group = ExplicitGroup::new(orders);
    let n = group.len();
    if n == 1 {
        return Ok(0);
    }
    let mut trivial = vec![false; n];
    trivial[0] = true;
    // the k coordinate generators always work
    for k in 1..=orders.len() {
        if group.search(k, 1, &trivial) {
            return Ok(k);
        }
    }
    unreachable!("the coordinate basis generates")
}

/// Elements of `Z_{d₁} × … × Z_{d_k}` indexed in mixed radix.
struct ExplicitGroup {
    moduli: Vec<u64>,
    digits: Vec<Vec<u64>>,
}

impl ExplicitGroup {
    fn new(moduli: &[u64]) -> Self {
        let size = moduli.iter().product::<u64>() as usize;
        let digits = (0..size)
            .map(|mut idx| {
                moduli
                    .iter()
                    .map(|&m| {
                        let d = idx as u64 % m;
                        idx /= m as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        Self {
            moduli: moduli.to_vec(),
            digits,
        }
    }

    fn len(&self) -> usize {
        self.digits.len()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let mut idx = 0usize;
        let mut radix = 1usize;
        for ((x, y), &m) in self.digits[a].iter().zip(&self.digits[b]).zip(&self.moduli) {
            idx += ((x + y) % m) as usize * radix;
            radix *= m as usize;
        }
        idx
    }

    /// The subgroup generated by `span` and `g`, where `span` is a subgroup.
    fn extend(&self, span: &[bool], g: usize) -> Vec<bool> {
        let mut out = span.to_vec();
        let mut frontier: Vec<usize> = (0..span.len()).filter(|&x| span[x]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                let y = self.add(x, g);
                if !out[y] {
                    out[y] = true;
                    next.push(y);
                }
            }
            frontier = next;
        }
        out
    }

    /// Tries increasing `k`-subsets, skipping any element already in the
    /// span of the earlier choices (such a set contains a smaller
    /// generating set, already ruled out).
    fn search(&self, k: usize, from: usize, span: &[bool]) -> bool {
        if k == 0 {
            return span.iter().all(|&b| b);
        }
        (from..self.len())
            .filter(|&x| !span[x])
            .any(|x| self.search(k - 1, x + 1, &self.extend(span, x)))
    }
}
