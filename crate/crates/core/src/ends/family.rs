use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::truncation::{check_size, NodeKind, Truncation};
use super::{Count, EndCounts, EndsError, RemovalDescriptor};

/// Largest vertex count accepted for a random finite graph.
pub const MAX_RANDOM_VERTICES: usize = 5_000;

/// The built-in graph families.
#[derive(Debug, Clone)]
pub enum GraphFamily {
    /// `Z^d` with nearest-neighbor edges, `1 ≤ d ≤ 3`.
    Lattice { d: u32 },
    /// The `k`-regular tree, `2 ≤ k ≤ 4`.
    RegularTree { k: u32 },
    /// The ray `0 - 1 - 2 - …`.
    HalfLine,
    /// Infinite cliques `X_i` (`i ∈ Z`), with `(i, j) ~ (i+1, j)`, plus one
    /// more infinite clique `Y` sharing the base vertex `(0, 0)`.
    CliqueChain,
    /// Erdős–Rényi `G(n, p)` drawn from a seeded generator.
    Random { n: usize, p: f64, seed: u64 },
}

impl GraphFamily {
    pub fn lattice(d: u32) -> Result<Self, EndsError> {
        if !(1..=3).contains(&d) {
            return Err(EndsError::InvalidParameter(format!(
                "lattice dimension {d} not in 1..=3"
            )));
        }
        Ok(Self::Lattice { d })
    }

    pub fn tree(k: u32) -> Result<Self, EndsError> {
        if !(2..=4).contains(&k) {
            return Err(EndsError::InvalidParameter(format!(
                "tree degree {k} not in 2..=4"
            )));
        }
        Ok(Self::RegularTree { k })
    }

    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self, EndsError> {
        if n == 0 || n > MAX_RANDOM_VERTICES {
            return Err(EndsError::InvalidParameter(format!(
                "random graph size {n} not in 1..={MAX_RANDOM_VERTICES}"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(EndsError::InvalidParameter(format!(
                "edge probability {p} not in [0, 1]"
            )));
        }
        Ok(Self::Random { n, p, seed })
    }

    pub fn id(&self) -> String {
        match self {
            Self::Lattice { d } => format!("Z^{d}"),
            Self::RegularTree { k } => format!("T{k}"),
            Self::HalfLine => "halfline".into(),
            Self::CliqueChain => "A".into(),
            Self::Random { n, p, seed } => format!("G({n},{p},{seed})"),
        }
    }

    pub fn base_vertex(&self) -> String {
        match *self {
            Self::Lattice { d } => vec!["0"; d as usize].join(","),
            Self::HalfLine => "0".into(),
            Self::RegularTree { .. } => "t".into(),
            Self::CliqueChain => "x0.0".into(),
            Self::Random { .. } => "v0".into(),
        }
    }

    /// Every ball is finite.
    pub fn is_locally_finite(&self) -> bool {
        !matches!(self, Self::CliqueChain)
    }

    fn is_finite(&self) -> bool {
        matches!(self, Self::Random { .. })
    }

    /// The window of radius `radius` around the base; `width` caps the
    /// number of explicit vertices per infinite clique.
    pub fn truncation(&self, radius: u64, width: u64) -> Result<Truncation, EndsError> {
        match *self {
            Self::Lattice { d } => lattice(d, radius),
            Self::RegularTree { k } => tree(k, radius),
            Self::HalfLine => half_line(radius),
            Self::CliqueChain => clique_chain(radius, width),
            Self::Random { n, p, seed } => Ok(random(n, p, seed)),
        }
    }

    /// Node set removed by `removal` in `t`, a truncation of radius `radius`.
    pub fn resolve(
        &self,
        t: &Truncation,
        removal: &RemovalDescriptor,
        radius: u64,
    ) -> Result<BTreeSet<usize>, EndsError> {
        let inside = |d: Option<u64>| self.is_finite() || d.is_some_and(|d| d < radius);
        match removal {
            RemovalDescriptor::FiniteSet(labels) => labels
                .iter()
                .map(|l| {
                    t.node(l)
                        .filter(|&v| t.kind(v) == NodeKind::Vertex && inside(t.dist(v)))
                        .ok_or_else(|| EndsError::OutsideTruncation(l.clone()))
                })
                .collect(),
            RemovalDescriptor::Ball(n) => {
                if !inside(Some(*n)) {
                    return Err(EndsError::OutsideTruncation(format!("ball:{n}")));
                }
                Ok((0..t.node_count())
                    .filter(|&v| t.dist(v).is_some_and(|d| d <= *n))
                    .collect())
            }
            RemovalDescriptor::FamilySpecific { id, params } => match (self, id.as_str()) {
                (Self::CliqueChain, "cliques") => {
                    let mut out = BTreeSet::new();
                    for &i in params {
                        if i.unsigned_abs() >= radius {
                            return Err(EndsError::OutsideTruncation(format!("clique {i}")));
                        }
                        out.insert(t.node(&format!("P{i}")).expect("clique phantom"));
                        out.extend((0..t.node_count()).filter(|&v| {
                            t.kind(v) == NodeKind::Vertex
                                && t.label(v).starts_with(&format!("x{i}."))
                        }));
                    }
                    Ok(out)
                }
                (Self::CliqueChain, "cliques-beyond") => {
                    Err(EndsError::UnboundedRemoval(removal.to_string()))
                }
                _ => Err(EndsError::UnknownDescriptor {
                    family: self.id(),
                    descriptor: removal.to_string(),
                }),
            },
        }
    }

    /// Removals tried by the estimator, each tagged `true` when the removed
    /// set is finite.
    pub fn catalog(&self, radius: u64) -> Vec<(RemovalDescriptor, bool)> {
        let finite_balls = self.is_locally_finite();
        let mut out = vec![
            (RemovalDescriptor::FiniteSet(vec![]), true),
            (RemovalDescriptor::FiniteSet(vec![self.base_vertex()]), true),
        ];
        if self.is_finite() {
            out.extend((0..=radius).map(|n| (RemovalDescriptor::Ball(n), true)));
            return out;
        }
        out.extend((0..radius).map(|n| (RemovalDescriptor::Ball(n), finite_balls)));
        if let Self::CliqueChain = self {
            out.push((RemovalDescriptor::cliques(vec![0]), false));
            let mut k = 1;
            while 2 * k - 1 < radius {
                out.push((alternating_cliques(k), false));
                k += 1;
            }
        }
        out
    }

    /// Closed-form end counts.
    pub fn exact_ends(&self) -> EndCounts {
        use Count::{Finite, Infinite};
        match *self {
            Self::Lattice { d: 1 } | Self::RegularTree { k: 2 } => EndCounts::uniform(Finite(2)),
            Self::Lattice { .. } | Self::HalfLine => EndCounts::uniform(Finite(1)),
            Self::RegularTree { .. } => EndCounts::uniform(Infinite),
            Self::Random { .. } => EndCounts::uniform(Finite(0)),
            Self::CliqueChain => EndCounts {
                bu: Finite(2),
                bi: Infinite,
                fu: Finite(1),
                fi: Finite(2),
            },
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl Serialize for GraphFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Removes `X_{±1}, X_{±3}, …, X_{±(2k-1)}` from the clique chain, leaving
/// `2k + 1` infinite components.
pub fn alternating_cliques(k: u64) -> RemovalDescriptor {
    let params = (0..k as i64)
        .flat_map(|i| [2 * i + 1, -(2 * i + 1)])
        .collect();
    RemovalDescriptor::cliques(params)
}

fn lattice(d: u32, radius: u64) -> Result<Truncation, EndsError> {
    check_size((2 * radius as u128 + 1).pow(d))?;
    let r = radius as i64;
    let mut t = Truncation::default();
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        points = points
            .into_iter()
            .flat_map(|p| {
                let used: i64 = p.iter().map(|x: &i64| x.abs()).sum();
                (-(r - used)..=(r - used)).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let label = |p: &[i64]| p.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    for p in &points {
        let norm = p.iter().map(|x| x.unsigned_abs()).sum();
        t.add_node(label(p), NodeKind::Vertex, Some(norm));
    }
    for p in &points {
        let a = t.node(&label(p)).expect("added");
        for axis in 0..d as usize {
            let mut q = p.clone();
            q[axis] += 1;
            if let Some(b) = t.node(&label(&q)) {
                t.add_edge(a, b);
            }
        }
    }
    let beyond = Some(radius + 1);
    if d == 1 {
        for (name, end) in [("-inf", -r), ("+inf", r)] {
            let ph = t.add_node(name.into(), NodeKind::Beyond, beyond);
            let v = t.node(&end.to_string()).expect("endpoint");
            t.add_edge(ph, v);
        }
    } else {
        let ph = t.add_node("inf".into(), NodeKind::Beyond, beyond);
        for v in 0..ph {
            if t.dist(v) == Some(radius) {
                t.add_edge(ph, v);
            }
        }
    }
    Ok(t)
}

fn tree(k: u32, radius: u64) -> Result<Truncation, EndsError> {
    let (mut total, mut level) = (1u128, 1u128);
    for depth in 1..=radius {
        level *= if depth == 1 { k as u128 } else { k as u128 - 1 };
        total += level;
        check_size(total + level)?;
    }
    let mut t = Truncation::default();
    let root = t.add_node("t".into(), NodeKind::Vertex, Some(0));
    let mut frontier = vec![root];
    for depth in 1..=radius {
        let mut next = Vec::new();
        for parent in frontier {
            let children = if depth == 1 { k } else { k - 1 };
            for c in 0..children {
                let label = format!("{}.{c}", t.label(parent));
                let v = t.add_node(label, NodeKind::Vertex, Some(depth));
                t.add_edge(parent, v);
                next.push(v);
            }
        }
        frontier = next;
    }
    // each leaf of the window hides a disjoint infinite subtree
    for leaf in frontier {
        let ph = t.add_node(
            format!("{}.inf", t.label(leaf)),
            NodeKind::Beyond,
            Some(radius + 1),
        );
        t.add_edge(leaf, ph);
    }
    Ok(t)
}

fn half_line(radius: u64) -> Result<Truncation, EndsError> {
    check_size(radius as u128 + 2)?;
    let mut t = Truncation::default();
    for i in 0..=radius {
        let v = t.add_node(i.to_string(), NodeKind::Vertex, Some(i));
        if i > 0 {
            t.add_edge(v - 1, v);
        }
    }
    let ph = t.add_node("inf".into(), NodeKind::Beyond, Some(radius + 1));
    t.add_edge(ph, ph - 1);
    Ok(t)
}

fn clique_chain(radius: u64, width: u64) -> Result<Truncation, EndsError> {
    if width == 0 {
        return Err(EndsError::InvalidParameter(
            "clique width cap must be ≥ 1".into(),
        ));
    }
    check_size((2 * radius as u128 + 2) * (width as u128 + 1) + 2)?;
    let r = radius as i64;
    let m = width as usize;
    let mut t = Truncation::default();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut phantoms: Vec<usize> = Vec::new();
    for i in -r..=r {
        let depth = i.unsigned_abs();
        let members: Vec<usize> = (0..m)
            .map(|j| {
                let d = depth + u64::from(j != 0);
                t.add_node(format!("x{i}.{j}"), NodeKind::Vertex, Some(d))
            })
            .collect();
        let ph = t.add_node(format!("P{i}"), NodeKind::Width, Some(depth + 1));
        complete(&mut t, &members, ph);
        if let (Some(prev), Some(&prev_ph)) = (cliques.last(), phantoms.last()) {
            for (&a, &b) in prev.iter().zip(&members) {
                t.add_edge(a, b);
            }
            t.add_edge(prev_ph, ph);
        }
        cliques.push(members);
        phantoms.push(ph);
    }
    let base = cliques[r as usize][0];
    let mut y: Vec<usize> = vec![base];
    y.extend((0..m).map(|j| t.add_node(format!("y{j}"), NodeKind::Vertex, Some(1))));
    let py = t.add_node("PY".into(), NodeKind::Width, Some(1));
    complete(&mut t, &y, py);
    let ends = [("-inf", 0usize), ("+inf", cliques.len() - 1)];
    for (name, idx) in ends {
        let ph = t.add_node(name.into(), NodeKind::Beyond, Some(radius + 1));
        for &v in &cliques[idx] {
            t.add_edge(ph, v);
        }
        t.add_edge(ph, phantoms[idx]);
    }
    Ok(t)
}

fn complete(t: &mut Truncation, members: &[usize], phantom: usize) {
    for (a_idx, &a) in members.iter().enumerate() {
        t.add_edge(a, phantom);
        for &b in &members[a_idx + 1..] {
            t.add_edge(a, b);
        }
    }
}

fn random(n: usize, p: f64, seed: u64) -> Truncation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Truncation::default();
    for i in 0..n {
        t.add_node(format!("v{i}"), NodeKind::Vertex, None);
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                t.add_edge(a, b);
            }
        }
    }
    let mut queue = VecDeque::from([0usize]);
    t.set_dist(0, Some(0));
    while let Some(v) = queue.pop_front() {
        let d = t.dist(v).expect("queued vertices are reached");
        for w in t.neighbors(v).to_vec() {
            if t.dist(w).is_none() {
                t.set_dist(w, Some(d + 1));
                queue.push_back(w);
            }
        }
    }
    t
}
