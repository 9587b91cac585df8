//! The end counts BU, BI, FU and FI of infinite graphs: how many unbounded
//! (U) or infinite (I) components remain after deleting a bounded (B) or
//! finite (F) vertex set, maximized over such sets.

mod family;
mod truncation;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use family::{alternating_cliques, GraphFamily, MAX_RANDOM_VERTICES};
pub use truncation::{ComponentCounts, FrontierStats, NodeKind, Truncation};

/// Largest truncation, in nodes, that will be built.
pub const MAX_TRUNCATION_NODES: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndsError {
    #[error("{0} is not strictly inside the truncation")]
    OutsideTruncation(String),
    #[error("removal `{0}` is not a bounded set")]
    UnboundedRemoval(String),
    #[error("family {family} has no removal `{descriptor}`")]
    UnknownDescriptor { family: String, descriptor: String },
    #[error("truncation would have {0} nodes")]
    TruncationTooLarge(u128),
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse removal `{0}`")]
    Parse(String),
}

/// A component count in `{0, 1, 2, …} ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl PartialOrd for Count {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Count {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => a.cmp(b),
            (Count::Finite(_), Count::Infinite) => Ordering::Less,
            (Count::Infinite, Count::Finite(_)) => Ordering::Greater,
            (Count::Infinite, Count::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite counts serialize as numbers, `∞` as the string `"inf"`.
impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => serializer.serialize_u64(*n),
            Count::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EndCounts {
    pub bu: Count,
    pub bi: Count,
    pub fu: Count,
    pub fi: Count,
}

impl EndCounts {
    pub fn uniform(c: Count) -> Self {
        Self {
            bu: c,
            bi: c,
            fu: c,
            fi: c,
        }
    }

    /// `fu ≤ bu ≤ bi` and `fu ≤ fi ≤ bi`.
    pub fn satisfies_chain(&self) -> bool {
        self.fu <= self.bu && self.bu <= self.bi && self.fu <= self.fi && self.fi <= self.bi
    }

    /// Every entry of `self` is at most the matching entry of `other`.
    pub fn dominated_by(&self, other: &EndCounts) -> bool {
        self.bu <= other.bu && self.bi <= other.bi && self.fu <= other.fu && self.fi <= other.fi
    }
}

/// A vertex set to delete.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RemovalDescriptor {
    /// Explicit vertices by label.
    FiniteSet(Vec<String>),
    /// The closed ball of this radius around the base vertex.
    Ball(u64),
    /// A family-defined set, such as whole cliques of the clique chain.
    FamilySpecific { id: String, params: Vec<i64> },
}

impl RemovalDescriptor {
    pub fn cliques(indices: Vec<i64>) -> Self {
        Self::FamilySpecific {
            id: "cliques".into(),
            params: indices,
        }
    }
}

impl fmt::Display for RemovalDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FiniteSet(v) if v.is_empty() => f.write_str("none"),
            Self::FiniteSet(v) => write!(f, "set:{}", v.join("|")),
            Self::Ball(n) => write!(f, "ball:{n}"),
            Self::FamilySpecific { id, params } => {
                let p: Vec<String> = params.iter().map(i64::to_string).collect();
                write!(f, "{id}:{}", p.join(","))
            }
        }
    }
}

impl Serialize for RemovalDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for RemovalDescriptor {
    type Err = EndsError;

    /// `none`, `ball:<n>`, `set:<label>|<label>…`, or `<id>:<i>,<i>…`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EndsError::Parse(s.to_string());
        if s == "none" {
            return Ok(Self::FiniteSet(vec![]));
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "ball" => rest.parse().map(Self::Ball).map_err(|_| bad()),
            "set" => Ok(Self::FiniteSet(
                rest.split('|')
                    .filter(|l| !l.is_empty())
                    .map(String::from)
                    .collect(),
            )),
            id if !id.is_empty() => {
                let params = rest
                    .split(',')
                    .filter(|p| !p.is_empty())
                    .map(|p| p.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                Ok(Self::FamilySpecific {
                    id: id.into(),
                    params,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Result of one removal on one truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub family: GraphFamily,
    pub removal: RemovalDescriptor,
    pub radius: u64,
    pub width: u64,
    pub counts: ComponentCounts,
    pub frontier_stats: FrontierStats,
}

impl PartialEq for GraphFamily {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for GraphFamily {}

/// Deletes `removal` from the `(radius, width)` truncation and counts the
/// unbounded and infinite components left.
pub fn components_after_removal(
    family: &GraphFamily,
    removal: &RemovalDescriptor,
    radius: u64,
    width: u64,
) -> Result<ComponentReport, EndsError> {
    let t = family.truncation(radius, width)?;
    let removed = family.resolve(&t, removal, radius)?;
    Ok(ComponentReport {
        family: family.clone(),
        removal: removal.clone(),
        radius,
        width,
        counts: t.components_without(&removed),
        frontier_stats: t.stats(),
    })
}

/// Truncation caps for the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub radius: u64,
    pub width: u64,
}

/// Lower bounds on the four counts, with the removal achieving each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Estimate {
    pub family: GraphFamily,
    pub budget: Budget,
    pub counts: EndCounts,
    pub achieved_by: [RemovalDescriptor; 4],
}

/// Maximizes each count over the family's removal catalog. Finite removals
/// feed all four counts; bounded ones only BU and BI.
pub fn best_known_counts(family: &GraphFamily, budget: Budget) -> Result<Estimate, EndsError> {
    let t = family.truncation(budget.radius, budget.width)?;
    let none = RemovalDescriptor::FiniteSet(vec![]);
    let mut best = [
        (0u64, none.clone()),
        (0, none.clone()),
        (0, none.clone()),
        (0, none),
    ];
    for (removal, finite) in family.catalog(budget.radius) {
        let removed = family.resolve(&t, &removal, budget.radius)?;
        let c = t.components_without(&removed);
        let mut offer = |slot: usize, value: u64| {
            if value > best[slot].0 {
                best[slot] = (value, removal.clone());
            }
        };
        offer(0, c.unbounded);
        offer(1, c.infinite);
        if finite {
            offer(2, c.unbounded);
            offer(3, c.infinite);
        }
    }
    let [bu, bi, fu, fi] = best;
    Ok(Estimate {
        family: family.clone(),
        budget,
        counts: EndCounts {
            bu: Count::Finite(bu.0),
            bi: Count::Finite(bi.0),
            fu: Count::Finite(fu.0),
            fi: Count::Finite(fi.0),
        },
        achieved_by: [bu.1, bi.1, fu.1, fi.1],
    })
}

/// Closed-form counts for a built-in family.
pub fn exact_ends(family: &GraphFamily) -> EndCounts {
    family.exact_ends()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(family: &GraphFamily, removal: &str, r: u64, m: u64) -> ComponentCounts {
        components_after_removal(family, &removal.parse().unwrap(), r, m)
            .unwrap()
            .counts
    }

    fn builtins() -> Vec<GraphFamily> {
        vec![
            GraphFamily::lattice(1).unwrap(),
            GraphFamily::lattice(2).unwrap(),
            GraphFamily::lattice(3).unwrap(),
            GraphFamily::tree(2).unwrap(),
            GraphFamily::tree(3).unwrap(),
            GraphFamily::tree(4).unwrap(),
            GraphFamily::HalfLine,
            GraphFamily::CliqueChain,
            GraphFamily::random(40, 0.1, 7).unwrap(),
        ]
    }

    #[test]
    fn spec_examples() {
        let z1 = GraphFamily::lattice(1).unwrap();
        assert_eq!(count(&z1, "ball:2", 10, 1).unbounded, 2);
        let z2 = GraphFamily::lattice(2).unwrap();
        assert_eq!(count(&z2, "ball:3", 12, 1).unbounded, 1);
        let a = GraphFamily::CliqueChain;
        let c = count(&a, "set:x0.0", 6, 8);
        assert_eq!((c.unbounded, c.infinite), (1, 2));
    }

    #[test]
    fn trees() {
        let t3 = GraphFamily::tree(3).unwrap();
        // closed ball of radius 3: one component per depth-4 vertex
        assert_eq!(count(&t3, "ball:3", 6, 1).unbounded, 24);
        assert_eq!(count(&t3, "set:t", 6, 1).unbounded, 3);
        let t2 = GraphFamily::tree(2).unwrap();
        assert_eq!(count(&t2, "ball:2", 5, 1).unbounded, 2);
    }

    #[test]
    fn clique_chain_removals() {
        let a = GraphFamily::CliqueChain;
        for k in 1..=4 {
            let c = components_after_removal(&a, &alternating_cliques(k), 2 * k + 1, 3)
                .unwrap()
                .counts;
            assert_eq!(c.infinite, 2 * k + 1);
            assert_eq!(c.unbounded, 2);
        }
        let c = count(&a, "ball:2", 5, 4);
        assert_eq!((c.unbounded, c.infinite), (2, 2));
        let c = count(&a, "cliques:0", 4, 4);
        // the rest of Y is cut off from both tails
        assert_eq!((c.unbounded, c.infinite), (2, 3));
    }

    #[test]
    fn removal_errors() {
        let a = GraphFamily::CliqueChain;
        let err = |r: &str, radius| {
            components_after_removal(&a, &r.parse().unwrap(), radius, 3).unwrap_err()
        };
        assert!(matches!(
            err("cliques:3", 3),
            EndsError::OutsideTruncation(_)
        ));
        assert!(matches!(err("ball:3", 3), EndsError::OutsideTruncation(_)));
        assert!(matches!(
            err("set:x9.0", 3),
            EndsError::OutsideTruncation(_)
        ));
        assert!(matches!(err("set:P0", 3), EndsError::OutsideTruncation(_)));
        assert!(matches!(
            err("cliques-beyond:1", 3),
            EndsError::UnboundedRemoval(_)
        ));
        let z2 = GraphFamily::lattice(2).unwrap();
        assert!(matches!(
            components_after_removal(&z2, &"cliques:1".parse().unwrap(), 3, 1),
            Err(EndsError::UnknownDescriptor { .. })
        ));
        assert!("ball:x".parse::<RemovalDescriptor>().is_err());
        assert!(GraphFamily::lattice(4).is_err());
        assert!(GraphFamily::tree(5).is_err());
        assert!(matches!(
            GraphFamily::tree(4).unwrap().truncation(40, 1),
            Err(EndsError::TruncationTooLarge(_))
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["none", "ball:3", "set:1,2|0,0", "cliques:1,-1,3"] {
            assert_eq!(s.parse::<RemovalDescriptor>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn exact_values_and_chain() {
        use Count::{Finite, Infinite};
        let a = exact_ends(&GraphFamily::CliqueChain);
        assert_eq!(
            (a.fu, a.fi, a.bu, a.bi),
            (Finite(1), Finite(2), Finite(2), Infinite)
        );
        assert!(a.fu < a.fi && a.fi < a.bi && a.fu < a.bu);
        assert_eq!(
            exact_ends(&GraphFamily::lattice(1).unwrap()),
            EndCounts::uniform(Finite(2))
        );
        assert_eq!(
            exact_ends(&GraphFamily::lattice(2).unwrap()),
            EndCounts::uniform(Finite(1))
        );
        for f in builtins() {
            assert!(exact_ends(&f).satisfies_chain(), "{f}");
        }
    }

    #[test]
    fn estimates_are_sound() {
        for f in builtins() {
            for r in [2, 4, 6] {
                let e = best_known_counts(
                    &f,
                    Budget {
                        radius: r,
                        width: 4,
                    },
                )
                .unwrap();
                assert!(e.counts.dominated_by(&exact_ends(&f)), "{f} at R = {r}");
                assert!(e.counts.satisfies_chain(), "{f} at R = {r}");
            }
        }
        let z1 = best_known_counts(
            &GraphFamily::lattice(1).unwrap(),
            Budget {
                radius: 4,
                width: 1,
            },
        );
        assert_eq!(z1.unwrap().counts, EndCounts::uniform(Count::Finite(2)));
        let a = best_known_counts(
            &GraphFamily::CliqueChain,
            Budget {
                radius: 9,
                width: 3,
            },
        )
        .unwrap();
        let c = a.counts;
        assert_eq!(
            (c.fu, c.fi, c.bu, c.bi),
            (
                Count::Finite(1),
                Count::Finite(2),
                Count::Finite(2),
                Count::Finite(9)
            )
        );
    }

    #[test]
    fn nested_truncations() {
        for f in builtins()
            .into_iter()
            .filter(|f| f.is_locally_finite() || f.id() == "A")
        {
            let small = f.truncation(3, 2).unwrap();
            let big = f.truncation(4, 3).unwrap();
            for v in small.vertices() {
                let w = big.node(small.label(v)).expect("vertex persists");
                assert_eq!(small.dist(v), big.dist(w));
                for &n in small.neighbors(v) {
                    if small.kind(n) == NodeKind::Vertex {
                        assert!(big
                            .neighbors(w)
                            .contains(&big.node(small.label(n)).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn random_graphs_have_no_ends() {
        for seed in 0..5 {
            let g = GraphFamily::random(60, 0.05, seed).unwrap();
            let e = best_known_counts(
                &g,
                Budget {
                    radius: 3,
                    width: 1,
                },
            )
            .unwrap();
            assert_eq!(e.counts, EndCounts::uniform(Count::Finite(0)));
        }
    }
}
