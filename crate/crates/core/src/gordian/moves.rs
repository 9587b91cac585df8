use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::knot::{NamedPrime, SymbolicKnot};
use super::GordianError;
use crate::knots::{closure_c1, closure_c2, theorem1_witness, RationalKnotClass};
use crate::tangle::Fraction;

/// A local move from the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MovePattern {
    /// The `r(f)`-move replacing `[0]` with the rational tangle of `f ≠ 0`.
    Rational(Fraction),
    /// `C(n)`, `n ≥ 1`.
    C(u32),
    /// `H(n)`, `n ≥ 2`.
    H(u32),
    /// The `n`-move, `n ≥ 1`.
    NMove(u32),
    Delta,
    X,
    ClaspPass,
}

impl MovePattern {
    pub fn rational(f: Fraction) -> Result<Self, GordianError> {
        if f.is_zero() {
            return Err(GordianError::InvalidMove("r(0/1) is the identity".into()));
        }
        Ok(Self::Rational(f))
    }

    pub fn c(n: u32) -> Result<Self, GordianError> {
        if n == 0 {
            return Err(GordianError::InvalidMove("C(n) needs n ≥ 1".into()));
        }
        Ok(Self::C(n))
    }

    pub fn h(n: u32) -> Result<Self, GordianError> {
        if n < 2 {
            return Err(GordianError::InvalidMove("H(n) needs n ≥ 2".into()));
        }
        Ok(Self::H(n))
    }

    pub fn n_move(n: u32) -> Result<Self, GordianError> {
        if n == 0 {
            return Err(GordianError::InvalidMove("the n-move needs n ≥ 1".into()));
        }
        Ok(Self::NMove(n))
    }

    pub fn string_count(&self) -> u32 {
        match *self {
            Self::Rational(_) | Self::NMove(_) | Self::X => 2,
            Self::Delta => 3,
            Self::ClaspPass => 4,
            Self::C(n) => n + 1,
            Self::H(n) => n,
        }
    }

    pub fn key(&self) -> String {
        match self {
            Self::Rational(f) => format!("r({f})"),
            Self::C(n) => format!("C({n})"),
            Self::H(n) => format!("H({n})"),
            Self::NMove(n) => format!("{n}-move"),
            Self::Delta => "Delta".into(),
            Self::X => "X".into(),
            Self::ClaspPass => "ClaspPass".into(),
        }
    }

    /// Keys of moves known to be equivalent to this one, itself included.
    pub fn equivalences(&self) -> BTreeSet<String> {
        let x = ["X", "C(1)", "r(2/1)", "2-move"];
        let h2 = ["H(2)", "r(1/0)", "r(1/1)", "1-move"];
        let group: Vec<String> = match *self {
            Self::X | Self::C(1) => x.map(String::from).to_vec(),
            Self::Delta | Self::C(2) => vec!["Delta".into(), "C(2)".into()],
            Self::ClaspPass | Self::C(3) => vec!["ClaspPass".into(), "C(3)".into()],
            Self::H(2) | Self::NMove(1) => h2.map(String::from).to_vec(),
            Self::NMove(2) => x.map(String::from).to_vec(),
            Self::NMove(n) => vec![format!("{n}-move"), format!("r({n}/1)")],
            Self::Rational(f) if f.is_infinite() || f == Fraction::integer(1) => {
                h2.map(String::from).to_vec()
            }
            Self::Rational(f) if f == Fraction::integer(2) => x.map(String::from).to_vec(),
            Self::Rational(f) if f.denom() == 1 && f.numer() > 0 => {
                vec![format!("r({f})"), format!("{}-move", f.numer())]
            }
            _ => vec![],
        };
        let mut keys: BTreeSet<String> = group.into_iter().collect();
        keys.insert(self.key());
        keys
    }

    pub fn is_equivalent(&self, other: &MovePattern) -> bool {
        self.equivalences().contains(&other.key())
    }

    /// The fraction whose rational-move witness family this move uses, if any.
    fn rational_seed(&self) -> Option<Fraction> {
        match *self {
            Self::Rational(f) => Some(f),
            Self::X => Some(Fraction::integer(2)),
            Self::NMove(n) => Some(Fraction::integer(n as i64)),
            Self::H(2) => Some(Fraction::INFINITY),
            _ => None,
        }
    }

    /// The registered set of knots at distance one from the unknot.
    pub fn sphere1_registry(&self) -> Result<Sphere1Registry, GordianError> {
        if let Some(f) = self.rational_seed() {
            let witness = theorem1_witness(f)?.fraction;
            return Ok(Sphere1Registry::RationalOrbit { witness });
        }
        let k_family =
            |n| Ok::<_, GordianError>(vec![SymbolicKnot::named(NamedPrime::k_family(n)?)]);
        let members = match *self {
            Self::C(n) => k_family(n)?,
            Self::Delta => k_family(2)?,
            Self::ClaspPass => k_family(3)?,
            Self::H(_) => vec![SymbolicKnot::trefoil()],
            _ => unreachable!("rational seeds handled above"),
        };
        Ok(Sphere1Registry::Finite { members })
    }
}

impl fmt::Display for MovePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl Serialize for MovePattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for MovePattern {
    type Err = GordianError;

    /// Accepts `X`, `Delta`, `ClaspPass`, `C2`/`C(2)`, `H3`/`H(3)`,
    /// `N3`/`3-move`, and `r(p/q)`/`rp/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || GordianError::Parse {
            token: s.to_string(),
            reason: "unknown move".into(),
        };
        let index = |t: &str| -> Result<u32, GordianError> {
            let t = t
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(t);
            t.parse().map_err(|_| bad())
        };
        match s {
            "X" | "x" => return Ok(Self::X),
            "Delta" | "delta" | "Δ" => return Ok(Self::Delta),
            "ClaspPass" | "clasp-pass" | "clasp_pass" => return Ok(Self::ClaspPass),
            _ => {}
        }
        if let Some(rest) = s.strip_suffix("-move") {
            return Self::n_move(index(rest)?);
        }
        if let Some(rest) = s.strip_prefix('r') {
            let rest = rest
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(rest);
            let f: Fraction = rest.parse().map_err(|_| bad())?;
            return Self::rational(f);
        }
        match s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i)) {
            ("C", rest) => Self::c(index(rest)?),
            ("H", rest) => Self::h(index(rest)?),
            ("N", rest) => Self::n_move(index(rest)?),
            _ => Err(bad()),
        }
    }
}

/// Knots registered at distance one from the unknot for a move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sphere1Registry {
    /// The witness closure and every knot class reached from it by
    /// repeated `C₁`/`C₂` closures, in breadth-first order.
    RationalOrbit { witness: Fraction },
    /// A fixed list of known members.
    Finite { members: Vec<SymbolicKnot> },
}

impl Sphere1Registry {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::RationalOrbit { .. })
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = SymbolicKnot> + '_> {
        match self {
            Self::RationalOrbit { witness } => Box::new(RationalOrbit::new(*witness)),
            Self::Finite { members } => Box::new(members.iter().cloned()),
        }
    }

    pub fn get(&self, index: usize) -> Option<SymbolicKnot> {
        self.iter().nth(index)
    }

    pub fn first(&self) -> Option<SymbolicKnot> {
        self.get(0)
    }
}

/// Breadth-first enumeration of distinct knot classes under `C₁`, `C₂`.
struct RationalOrbit {
    queue: VecDeque<Fraction>,
    seen_fractions: HashSet<Fraction>,
    seen_classes: HashSet<RationalKnotClass>,
}

impl RationalOrbit {
    fn new(witness: Fraction) -> Self {
        Self {
            queue: VecDeque::from([witness]),
            seen_fractions: HashSet::from([witness]),
            seen_classes: HashSet::new(),
        }
    }
}

impl Iterator for RationalOrbit {
    type Item = SymbolicKnot;

    fn next(&mut self) -> Option<SymbolicKnot> {
        while let Some(f) = self.queue.pop_front() {
            // closures that overflow i64 end that branch
            for g in [closure_c1(f), closure_c2(f)].into_iter().flatten() {
                if self.seen_fractions.insert(g) {
                    self.queue.push_back(g);
                }
            }
            let Ok(class) = RationalKnotClass::from_fraction(f) else {
                continue;
            };
            if class.p() >= 3 && self.seen_classes.insert(class) {
                return Some(SymbolicKnot::rational(class));
            }
        }
        None
    }
}
