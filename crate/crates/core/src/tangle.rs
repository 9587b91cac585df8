//! Rational tangle algebra.
//!
//! A rational tangle is determined up to isotopy by its fraction, an element
//! of `Q ∪ {∞}`. This module houses the fraction type with its formal
//! arithmetic on `1/0`, the twist words that generate tangles, the
//! sign-uniform odd-length continued fraction form, and the isotopy test.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("0/0 is not a fraction")]
    Indeterminate,
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("the tangle [∞] has no continued fraction form")]
    InfiniteHasNoExpansion,
    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
}

fn parse_err(token: &str, reason: impl Into<String>) -> TangleError {
    TangleError::Parse {
        token: token.to_string(),
        reason: reason.into(),
    }
}

/// A reduced fraction `p/q` with `q ≥ 0`.
///
/// Zero is `0/1` and the formal value `∞` is `1/0`; `-1/0` is identified
/// with `1/0`. Every rational number has exactly one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Fraction {
    p: i64,
    q: i64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { p: 0, q: 1 };
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self, TangleError> {
        if p == i64::MIN || q == i64::MIN {
            return Err(TangleError::Overflow("normalize"));
        }
        if q == 0 {
            return if p == 0 {
                Err(TangleError::Indeterminate)
            } else {
                Ok(Self::INFINITY)
            };
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = p.checked_neg().ok_or(TangleError::Overflow("normalize"))?;
            q = q.checked_neg().ok_or(TangleError::Overflow("normalize"))?;
        }
        Ok(Self { p, q })
    }

    /// The integer `n/1`. Panics on `i64::MIN`, which has no negation.
    pub fn integer(n: i64) -> Self {
        assert!(n != i64::MIN, "i64::MIN is outside the fraction range");
        Self { p: n, q: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    /// `F + n`, with `∞ + n = ∞`.
    pub fn add_integer(self, n: i64) -> Result<Self, TangleError> {
        if self.is_infinite() {
            return Ok(self);
        }
        let p = n
            .checked_mul(self.q)
            .and_then(|nq| nq.checked_add(self.p))
            .ok_or(TangleError::Overflow("F + n"))?;
        Self::new(p, self.q)
    }

    /// `1/F`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(self) -> Self {
        if self.is_zero() {
            Self::INFINITY
        } else if self.is_infinite() {
            Self::ZERO
        } else if self.p < 0 {
            Self {
                p: -self.q,
                q: -self.p,
            }
        } else {
            Self {
                p: self.q,
                q: self.p,
            }
        }
    }

    /// `-F`, with `-∞ = ∞`.
    pub fn mirror(self) -> Result<Self, TangleError> {
        if self.is_infinite() {
            return Ok(self);
        }
        let p = self.p.checked_neg().ok_or(TangleError::Overflow("-F"))?;
        Ok(Self { p, q: self.q })
    }

    /// `1/(n + 1/F)`: the fraction of `T * [n]`.
    pub fn star_integer(self, n: i64) -> Result<Self, TangleError> {
        Ok(self.recip().add_integer(n)?.recip())
    }

    /// `-1/F`: the fraction of the rotate `T^R`.
    pub fn rotate(self) -> Result<Self, TangleError> {
        self.recip().mirror()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let p: i64 = num
            .parse()
            .map_err(|_| parse_err(s, format!("numerator `{num}` is not an integer")))?;
        let q: i64 = den
            .parse()
            .map_err(|_| parse_err(s, format!("denominator `{den}` is not an integer")))?;
        Self::new(p, q).map_err(|e| parse_err(s, e.to_string()))
    }
}

impl TryFrom<String> for Fraction {
    type Error = TangleError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<Fraction> for String {
    fn from(value: Fraction) -> Self {
        value.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseTangle {
    Zero,
    Infinity,
}

impl BaseTangle {
    pub fn fraction(self) -> Fraction {
        match self {
            BaseTangle::Zero => Fraction::ZERO,
            BaseTangle::Infinity => Fraction::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistStep {
    /// `T + [k]`
    AddInteger(i64),
    /// `T * [k]`
    StarVertical(i64),
    /// `-T`
    Mirror,
    /// `T^R`
    Rotate,
    /// `1/T`
    Invert,
}

impl TwistStep {
    pub fn apply(self, f: Fraction) -> Result<Fraction, TangleError> {
        match self {
            TwistStep::AddInteger(k) => f.add_integer(k),
            TwistStep::StarVertical(k) => f.star_integer(k),
            TwistStep::Mirror => f.mirror(),
            TwistStep::Rotate => f.rotate(),
            TwistStep::Invert => Ok(f.recip()),
        }
    }
}

impl fmt::Display for TwistStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistStep::AddInteger(k) => write!(f, "+{k}"),
            TwistStep::StarVertical(k) => write!(f, "*{k}"),
            TwistStep::Mirror => f.write_str("mirror"),
            TwistStep::Rotate => f.write_str("rot"),
            TwistStep::Invert => f.write_str("inv"),
        }
    }
}

/// A base tangle followed by twist operations. Words are never simplified.
///
/// Text form: `[0] +4 *3 +2 mirror rot inv` (base `[0]` or `[inf]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistWord {
    pub base: BaseTangle,
    pub steps: Vec<TwistStep>,
}

impl TwistWord {
    pub fn new(base: BaseTangle) -> Self {
        Self {
            base,
            steps: Vec::new(),
        }
    }

    pub fn with(mut self, step: TwistStep) -> Self {
        self.steps.push(step);
        self
    }

    /// The exact fraction of the tangle this word builds.
    pub fn fraction(&self) -> Result<Fraction, TangleError> {
        self.steps
            .iter()
            .try_fold(self.base.fraction(), |f, step| step.apply(f))
    }
}

/// Fraction of the tangle generated by `word`.
pub fn fraction_of(word: &TwistWord) -> Result<Fraction, TangleError> {
    word.fraction()
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseTangle::Zero => f.write_str("[0]")?,
            BaseTangle::Infinity => f.write_str("[inf]")?,
        }
        for step in &self.steps {
            write!(f, " {step}")?;
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let base = match tokens.next() {
            Some("[0]") => BaseTangle::Zero,
            Some("[inf]") | Some("[∞]") => BaseTangle::Infinity,
            Some(t) => return Err(parse_err(t, "expected base tangle `[0]` or `[inf]`")),
            None => return Err(parse_err(s, "empty twist word")),
        };
        let mut word = TwistWord::new(base);
        for tok in tokens {
            let int = |rest: &str| -> Result<i64, TangleError> {
                rest.parse()
                    .map_err(|_| parse_err(tok, "twist amount is not an integer"))
            };
            let step = if let Some(rest) = tok.strip_prefix('+') {
                TwistStep::AddInteger(int(rest)?)
            } else if let Some(rest) = tok.strip_prefix('*') {
                TwistStep::StarVertical(int(rest)?)
            } else {
                match tok {
                    "mirror" | "-" => TwistStep::Mirror,
                    "rot" | "R" => TwistStep::Rotate,
                    "inv" | "I" => TwistStep::Invert,
                    _ => return Err(parse_err(tok, "unknown twist step")),
                }
            };
            word.steps.push(step);
        }
        Ok(word)
    }
}

/// `a₁ + 1/(a₂ + … + 1/aₙ)` with odd `n`, nonzero `a₂..aₙ` and all entries
/// of one sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ContinuedFraction {
    entries: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(entries: Vec<i64>) -> Result<Self, TangleError> {
        let bad = |why: &str| Err(TangleError::InvalidContinuedFraction(why.to_string()));
        if entries.is_empty() {
            return bad("no entries");
        }
        if entries.len().is_multiple_of(2) {
            return bad("length must be odd");
        }
        if entries.contains(&i64::MIN) {
            return bad("entry out of range");
        }
        if entries[1..].contains(&0) {
            return bad("entries after the first must be nonzero");
        }
        let has_pos = entries.iter().any(|&a| a > 0);
        let has_neg = entries.iter().any(|&a| a < 0);
        if has_pos && has_neg {
            return bad("entries must be all nonnegative or all nonpositive");
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn fraction(&self) -> Result<Fraction, TangleError> {
        let (last, rest) = self.entries.split_last().expect("nonempty by construction");
        rest.iter()
            .rev()
            .try_fold(Fraction::integer(*last), |acc, &a| {
                acc.recip().add_integer(a)
            })
    }
}

impl TryFrom<Vec<i64>> for ContinuedFraction {
    type Error = TangleError;
    fn try_from(value: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<ContinuedFraction> for Vec<i64> {
    fn from(value: ContinuedFraction) -> Self {
        value.entries
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| parse_err(t, "continued fractions are written `[a1,a2,...,an]`"))?;
        let entries = inner
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| parse_err(e.trim(), "entry is not an integer"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries).map_err(|e| parse_err(t, e.to_string()))
    }
}

/// Deterministic sign-uniform odd-length expansion of `f`.
///
/// Euclid on `|f|`, then an even-length expansion `[.., e]` is rewritten as
/// `[.., e-1, 1]` when `e > 1` or folded into its predecessor when `e = 1`.
pub fn canonical_continued_fraction(f: Fraction) -> Result<ContinuedFraction, TangleError> {
    if f.is_infinite() {
        return Err(TangleError::InfiniteHasNoExpansion);
    }
    let negative = f.numer() < 0;
    let mut a = f.numer().unsigned_abs();
    let mut b = f.denom().unsigned_abs();
    let mut entries: Vec<i64> = Vec::new();
    loop {
        let (quot, rem) = a.div_rem(&b);
        entries.push(quot as i64);
        if rem == 0 {
            break;
        }
        a = b;
        b = rem;
    }
    if entries.len().is_multiple_of(2) {
        let last = entries.pop().expect("even length is at least 2");
        if last > 1 {
            entries.push(last - 1);
            entries.push(1);
        } else {
            *entries.last_mut().expect("predecessor exists") += 1;
        }
    }
    if negative {
        entries.iter_mut().for_each(|a| *a = -*a);
    }
    ContinuedFraction::new(entries)
}

/// A rational tangle: its construction word together with its fraction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalTangle {
    fraction: Fraction,
    word: TwistWord,
}

impl RationalTangle {
    pub fn from_word(word: TwistWord) -> Result<Self, TangleError> {
        Ok(Self {
            fraction: word.fraction()?,
            word,
        })
    }

    pub fn zero() -> Self {
        Self::from_word(TwistWord::new(BaseTangle::Zero)).expect("[0] evaluates")
    }

    pub fn infinity() -> Self {
        Self::from_word(TwistWord::new(BaseTangle::Infinity)).expect("[∞] evaluates")
    }

    /// The integer tangle `[n]`.
    pub fn integer(n: i64) -> Self {
        Self::zero()
            .then(TwistStep::AddInteger(n))
            .expect("0 + n fits")
    }

    /// Builds `((([aₙ] * 1/[aₙ₋₁]) + [aₙ₋₂]) * …) + [a₁]` as a word over `[0]`.
    pub fn from_continued_fraction(cf: &ContinuedFraction) -> Result<Self, TangleError> {
        let n = cf.entries().len();
        let mut word = TwistWord::new(BaseTangle::Zero);
        for (i, &a) in cf.entries().iter().enumerate().rev() {
            // positions counted from the end: aₙ, aₙ₋₂, … are additions
            let step = if (n - 1 - i).is_multiple_of(2) {
                TwistStep::AddInteger(a)
            } else {
                TwistStep::StarVertical(a)
            };
            word.steps.push(step);
        }
        Self::from_word(word)
    }

    pub fn fraction(&self) -> Fraction {
        self.fraction
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    pub fn then(&self, step: TwistStep) -> Result<Self, TangleError> {
        Ok(Self {
            fraction: step.apply(self.fraction)?,
            word: self.word.clone().with(step),
        })
    }

    pub fn mirror(&self) -> Result<Self, TangleError> {
        self.then(TwistStep::Mirror)
    }

    pub fn rotate(&self) -> Result<Self, TangleError> {
        self.then(TwistStep::Rotate)
    }

    pub fn invert(&self) -> Result<Self, TangleError> {
        self.then(TwistStep::Invert)
    }

    pub fn isotopic(&self, other: &RationalTangle) -> bool {
        tangles_isotopic(self, other)
    }
}

pub fn tangle_from_continued_fraction(
    cf: &ContinuedFraction,
) -> Result<RationalTangle, TangleError> {
    RationalTangle::from_continued_fraction(cf)
}

/// Rational tangles are isotopic exactly when their fractions agree.
pub fn tangles_isotopic(t: &RationalTangle, s: &RationalTangle) -> bool {
    t.fraction == s.fraction
}
