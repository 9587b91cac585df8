use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::EndsError;

/// What a truncation node stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// A genuine vertex of the graph.
    Vertex,
    /// The connected, unbounded remainder of the graph past the radius cap.
    Beyond,
    /// Infinitely many omitted vertices at bounded distance (the rest of an
    /// infinite clique).
    Width,
}

/// A finite window onto a graph, with phantom nodes summarizing what lies
/// outside it.
#[derive(Debug, Clone, Default)]
pub struct Truncation {
    labels: Vec<String>,
    kinds: Vec<NodeKind>,
    dist: Vec<Option<u64>>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Truncation {
    pub(crate) fn add_node(&mut self, label: String, kind: NodeKind, dist: Option<u64>) -> usize {
        debug_assert!(!self.index.contains_key(&label), "duplicate label {label}");
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.kinds.push(kind);
        self.dist.push(dist);
        self.adjacency.push(Vec::new());
        id
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        if a != b && !self.adjacency[a].contains(&b) {
            self.adjacency[a].push(b);
            self.adjacency[b].push(a);
        }
    }

    pub(crate) fn set_dist(&mut self, id: usize, d: Option<u64>) {
        self.dist[id] = d;
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn node(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn kind(&self, id: usize) -> NodeKind {
        self.kinds[id]
    }

    /// Distance from the base vertex; `None` if unreachable.
    pub fn dist(&self, id: usize) -> Option<u64> {
        self.dist[id]
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&v| self.kinds[v] == NodeKind::Vertex)
    }

    /// Has omitted neighbors farther from the base.
    pub fn is_radius_frontier(&self, id: usize) -> bool {
        self.kinds[id] == NodeKind::Vertex
            && self.adjacency[id]
                .iter()
                .any(|&n| self.kinds[n] == NodeKind::Beyond)
    }

    /// Is adjacent to infinitely many omitted vertices at bounded distance.
    pub fn is_width_frontier(&self, id: usize) -> bool {
        self.kinds[id] == NodeKind::Vertex
            && self.adjacency[id]
                .iter()
                .any(|&n| self.kinds[n] == NodeKind::Width)
    }

    pub fn stats(&self) -> FrontierStats {
        let count = |k| self.kinds.iter().filter(|&&x| x == k).count();
        FrontierStats {
            vertices: count(NodeKind::Vertex),
            beyond_phantoms: count(NodeKind::Beyond),
            width_phantoms: count(NodeKind::Width),
            radius_frontier: self
                .vertices()
                .filter(|&v| self.is_radius_frontier(v))
                .count(),
            width_frontier: self
                .vertices()
                .filter(|&v| self.is_width_frontier(v))
                .count(),
        }
    }

    /// Deletes `removed` and classifies the remaining components.
    pub fn components_without(&self, removed: &BTreeSet<usize>) -> ComponentCounts {
        let n = self.node_count();
        let mut uf = UnionFind::<usize>::new(n);
        for a in 0..n {
            if removed.contains(&a) {
                continue;
            }
            for &b in &self.adjacency[a] {
                if !removed.contains(&b) {
                    uf.union(a, b);
                }
            }
        }
        // root -> (touches Beyond, touches any phantom)
        let mut roots: HashMap<usize, (bool, bool)> = HashMap::new();
        for v in (0..n).filter(|v| !removed.contains(v)) {
            let flags = roots.entry(uf.find(v)).or_default();
            match self.kinds[v] {
                NodeKind::Beyond => *flags = (true, true),
                NodeKind::Width => flags.1 = true,
                NodeKind::Vertex => {}
            }
        }
        ComponentCounts {
            unbounded: roots.values().filter(|f| f.0).count() as u64,
            infinite: roots.values().filter(|f| f.1).count() as u64,
            finite: roots.values().filter(|f| !f.1).count() as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrontierStats {
    pub vertices: usize,
    pub beyond_phantoms: usize,
    pub width_phantoms: usize,
    pub radius_frontier: usize,
    pub width_frontier: usize,
}

/// Components left after a removal: unbounded ones, infinite ones (which
/// include the unbounded), and finite ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentCounts {
    pub unbounded: u64,
    pub infinite: u64,
    pub finite: u64,
}

pub(crate) fn check_size(nodes: u128) -> Result<(), EndsError> {
    if nodes > super::MAX_TRUNCATION_NODES as u128 {
        Err(EndsError::TruncationTooLarge(nodes))
    } else {
        Ok(())
    }
}
