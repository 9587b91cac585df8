use std::sync::{PoisonError, RwLock};

use serde::Serialize;

use super::knot::SymbolicKnot;
use super::moves::MovePattern;
use super::GordianError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    /// Entry `index` of the move's sphere-1 registry, joined to the unknot.
    Witness { index: usize },
    /// A parent edge with both endpoints summed with `by`.
    ShiftOf {
        parent: Box<CertifiedEdge>,
        by: SymbolicKnot,
    },
}

/// A Gordian edge together with the reason it is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedEdge {
    endpoints: (SymbolicKnot, SymbolicKnot),
    #[serde(rename = "move")]
    mv: MovePattern,
    provenance: Provenance,
}

impl CertifiedEdge {
    /// The edge from the unknot to registry entry `index`.
    pub fn witness_at(mv: MovePattern, index: usize) -> Result<Self, GordianError> {
        let q = mv
            .sphere1_registry()?
            .get(index)
            .ok_or_else(|| GordianError::NoWitness(mv.key()))?;
        Ok(Self {
            endpoints: (SymbolicKnot::unknot(), q),
            mv,
            provenance: Provenance::Witness { index },
        })
    }

    pub fn endpoints(&self) -> (&SymbolicKnot, &SymbolicKnot) {
        (&self.endpoints.0, &self.endpoints.1)
    }

    pub fn move_pattern(&self) -> MovePattern {
        self.mv
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn shifted(&self, by: &SymbolicKnot) -> Self {
        Self {
            endpoints: (
                self.endpoints.0.connected_sum(by),
                self.endpoints.1.connected_sum(by),
            ),
            mv: self.mv,
            provenance: Provenance::ShiftOf {
                parent: Box::new(self.clone()),
                by: by.clone(),
            },
        }
    }

    /// Same edge traversed the other way.
    pub fn reversed(&self) -> Self {
        Self {
            endpoints: (self.endpoints.1.clone(), self.endpoints.0.clone()),
            ..self.clone()
        }
    }

    /// The endpoint across from `v`, if `v` is an endpoint.
    pub fn other_end(&self, v: &SymbolicKnot) -> Option<&SymbolicKnot> {
        if &self.endpoints.0 == v {
            Some(&self.endpoints.1)
        } else if &self.endpoints.1 == v {
            Some(&self.endpoints.0)
        } else {
            None
        }
    }

    fn has_endpoints(&self, a: &SymbolicKnot, b: &SymbolicKnot) -> bool {
        (&self.endpoints.0 == a && &self.endpoints.1 == b)
            || (&self.endpoints.0 == b && &self.endpoints.1 == a)
    }

    /// Re-derives the edge from its provenance.
    pub fn verify(&self) -> Result<(), GordianError> {
        let broken = |why: String| Err(GordianError::BrokenEdge(why));
        match &self.provenance {
            Provenance::Witness { index } => {
                let q = self
                    .mv
                    .sphere1_registry()?
                    .get(*index)
                    .ok_or_else(|| GordianError::NoWitness(self.mv.key()))?;
                if !self.has_endpoints(&SymbolicKnot::unknot(), &q) {
                    return broken(format!(
                        "witness {index} of {} is {q}, edge joins {} and {}",
                        self.mv, self.endpoints.0, self.endpoints.1
                    ));
                }
            }
            Provenance::ShiftOf { parent, by } => {
                parent.verify()?;
                if parent.mv != self.mv {
                    return broken(format!(
                        "shift changes the move from {} to {}",
                        parent.mv, self.mv
                    ));
                }
                let a = parent.endpoints.0.connected_sum(by);
                let b = parent.endpoints.1.connected_sum(by);
                if !self.has_endpoints(&a, &b) {
                    return broken(format!("shift by {by} should join {a} and {b}"));
                }
            }
        }
        Ok(())
    }
}

/// A walk in the Gordian graph through certified edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedPath {
    vertices: Vec<SymbolicKnot>,
    edges: Vec<CertifiedEdge>,
}

impl CertifiedPath {
    /// The length-0 path at `v`.
    pub fn trivial(v: SymbolicKnot) -> Self {
        Self {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn from_edge(edge: CertifiedEdge) -> Self {
        Self {
            vertices: vec![edge.endpoints.0.clone(), edge.endpoints.1.clone()],
            edges: vec![edge],
        }
    }

    /// Appends an edge incident to the current end.
    pub fn push(&mut self, edge: CertifiedEdge) -> Result<(), GordianError> {
        let next = edge.other_end(self.end()).cloned().ok_or_else(|| {
            GordianError::BrokenPath(format!(
                "edge {} - {} does not touch {}",
                edge.endpoints.0,
                edge.endpoints.1,
                self.end()
            ))
        })?;
        self.vertices.push(next);
        self.edges.push(edge);
        Ok(())
    }

    pub fn concat(mut self, other: CertifiedPath) -> Result<Self, GordianError> {
        if self.end() != other.start() {
            return Err(GordianError::BrokenPath(format!(
                "cannot join a path ending at {} to one starting at {}",
                self.end(),
                other.start()
            )));
        }
        self.vertices.extend(other.vertices.into_iter().skip(1));
        self.edges.extend(other.edges);
        Ok(self)
    }

    pub fn reversed(&self) -> Self {
        Self {
            vertices: self.vertices.iter().rev().cloned().collect(),
            edges: self.edges.iter().rev().cloned().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> &[SymbolicKnot] {
        &self.vertices
    }

    pub fn edges(&self) -> &[CertifiedEdge] {
        &self.edges
    }

    pub fn start(&self) -> &SymbolicKnot {
        &self.vertices[0]
    }

    pub fn end(&self) -> &SymbolicKnot {
        self.vertices.last().expect("paths have a vertex")
    }

    /// Checks every edge and that consecutive vertices are its endpoints.
    pub fn verify(&self) -> Result<(), GordianError> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(GordianError::BrokenPath(
                "vertex and edge counts disagree".into(),
            ));
        }
        for (i, e) in self.edges.iter().enumerate() {
            e.verify()?;
            if !e.has_endpoints(&self.vertices[i], &self.vertices[i + 1]) {
                return Err(GordianError::BrokenPath(format!(
                    "edge {i} does not join {} and {}",
                    self.vertices[i],
                    self.vertices[i + 1]
                )));
            }
        }
        Ok(())
    }
}

pub fn witness_edge(mv: MovePattern) -> Result<CertifiedEdge, GordianError> {
    CertifiedEdge::witness_at(mv, 0)
}

/// Sums every vertex with `w`; each edge records the shift.
pub fn shift_path(path: &CertifiedPath, w: &SymbolicKnot) -> CertifiedPath {
    CertifiedPath {
        vertices: path.vertices.iter().map(|v| v.connected_sum(w)).collect(),
        edges: path.edges.iter().map(|e| e.shifted(w)).collect(),
    }
}

/// `U - Q - Q² - … - Q^m` for the move's first witness `Q`; edge `i` is the
/// witness edge shifted by `Q^{i-1}`.
pub fn q_chain(mv: MovePattern, m: usize) -> Result<CertifiedPath, GordianError> {
    if m == 0 {
        return Err(GordianError::InvalidLength);
    }
    let witness = witness_edge(mv)?;
    let q = witness.endpoints.1.clone();
    let mut path = CertifiedPath::from_edge(witness.clone());
    for i in 1..m {
        path.push(witness.shifted(&q.power(i)))?;
    }
    Ok(path)
}

/// Append-only store of certified edges. Readers run concurrently; appends
/// take the write lock one at a time.
#[derive(Debug, Default)]
pub struct EdgeStore {
    edges: RwLock<Vec<CertifiedEdge>>,
}

impl EdgeStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Verifies and appends; returns the edge's index.
    pub fn append(&self, edge: CertifiedEdge) -> Result<usize, GordianError> {
        edge.verify()?;
        let mut edges = self.edges.write().unwrap_or_else(PoisonError::into_inner);
        edges.push(edge);
        Ok(edges.len() - 1)
    }

    pub fn get(&self, index: usize) -> Option<CertifiedEdge> {
        self.read().get(index).cloned()
    }

    pub fn len(&self) -> usize {
        self.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn snapshot(&self) -> Vec<CertifiedEdge> {
        self.read().clone()
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Vec<CertifiedEdge>> {
        self.edges.read().unwrap_or_else(PoisonError::into_inner)
    }
}
