use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::knot::{E2Bounds, SymbolicKnot};
use super::moves::MovePattern;
use super::path::{q_chain, shift_path, witness_edge, CertifiedEdge, CertifiedPath};
use super::GordianError;
use crate::homology::HomologyError;

fn as_string<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Lower bound on the move distance from `|e_p(K) - e_p(Q)| / ((n-1)(p-1))`
/// at `p = 2`, using certified `e₂` ranges.
pub fn distance_lower_bound(
    k: &SymbolicKnot,
    q: &SymbolicKnot,
    mv: MovePattern,
) -> Result<Ratio<u64>, GordianError> {
    distance_lower_bound_at(k, q, mv, 2)
}

/// As [`distance_lower_bound`] for the `p`-fold cyclic cover; only `p = 2`
/// has homology data.
pub fn distance_lower_bound_at(
    k: &SymbolicKnot,
    q: &SymbolicKnot,
    mv: MovePattern,
    p: u32,
) -> Result<Ratio<u64>, GordianError> {
    if p != 2 {
        return Err(HomologyError::UnsupportedCover(p).into());
    }
    let n = mv.string_count();
    if n < 2 {
        return Err(GordianError::TooFewStrings(mv.key()));
    }
    let gap = k.e2_bounds()?.gap_lower_bound(&q.e2_bounds()?);
    Ok(Ratio::new(gap as u64, u64::from((n - 1) * (p - 1))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub knot: SymbolicKnot,
    pub e2: E2Bounds,
    #[serde(serialize_with = "as_string")]
    pub bound: Ratio<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "move")]
    pub mv: MovePattern,
    pub string_count: u32,
    pub radius: u64,
    pub base: SymbolicKnot,
    pub base_e2: E2Bounds,
    /// Length of the `Q`-chain, `(n-1)r + e`.
    pub chain_length: usize,
    /// Extra `Q` summands added to the start of `ζ` before shifting.
    pub lift: usize,
    pub vertices: Vec<VertexCheck>,
    pub pass: bool,
}

/// Builds an infinite-end certificate around `zeta: K → E`.
///
/// With `n` strings and `e = e₂(E)` (its certified upper bound), the chain
/// length is `N = (n-1)r + e`. The start `K` is first lifted to
/// `K* = K # Q^j` for the least `j` whose vertex already clears the bound.
/// The result is `γ′ = (U - Q - … - Q^N) # K*` followed by `ζ* # Q^N`, from
/// `K*` to `E # Q^N`, and every vertex `v` satisfies
/// `distance_lower_bound(v, E) ≥ r`.
pub fn basic_lemma_certificate(
    mv: MovePattern,
    zeta: &CertifiedPath,
    r: u64,
) -> Result<(CertifiedPath, VerificationReport), GordianError> {
    if r == 0 {
        return Err(GordianError::InvalidRadius);
    }
    zeta.verify()?;
    same_move(zeta, mv)?;
    let n = mv.string_count();
    if n < 2 {
        return Err(GordianError::TooFewStrings(mv.key()));
    }
    let q = witness_edge(mv)?.endpoints().1.clone();
    let q_e2 = q.e2_bounds()?;
    if q_e2.lower == 0 {
        return Err(GordianError::WitnessTrivialE2(q.to_string()));
    }
    let base = zeta.end().clone();
    let base_e2 = base.e2_bounds()?;
    let e = base_e2
        .upper
        .ok_or_else(|| GordianError::UndeterminedBaseE2(base.to_string()))?;
    let chain_length = usize::try_from((u64::from(n) - 1) * r)
        .ok()
        .and_then(|x| x.checked_add(e))
        .ok_or(GordianError::InvalidRadius)?;
    let clears = |v: &SymbolicKnot| -> Result<bool, GordianError> {
        Ok(distance_lower_bound(v, &base, mv)? >= Ratio::from_integer(r))
    };

    let start = zeta.start().clone();
    let mut lift = 0;
    while !clears(&start.connected_sum(&q.power(lift)))? {
        lift += 1;
        // Q^N clears the bound on its own, so this cannot run past N
        if lift > chain_length {
            return Err(GordianError::CertificateViolation(format!(
                "no lift of {start} by up to {chain_length} copies of {q} clears radius {r}"
            )));
        }
    }
    let zeta_lifted = if lift == 0 {
        zeta.clone()
    } else {
        shift_path(&q_chain(mv, lift)?, &start)
            .reversed()
            .concat(zeta.clone())?
    };

    let lifted_start = start.connected_sum(&q.power(lift));
    // r ≥ 1 and n ≥ 2 make the chain nonempty
    let gamma = shift_path(&q_chain(mv, chain_length)?, &lifted_start);
    let zeta_shifted = shift_path(&zeta_lifted, &q.power(chain_length));
    let combined = gamma.concat(zeta_shifted)?;
    combined.verify()?;

    let mut vertices = Vec::with_capacity(combined.vertices().len());
    let mut seen = BTreeSet::new();
    for v in combined.vertices() {
        if !seen.insert(v.clone()) {
            continue;
        }
        let bound = distance_lower_bound(v, &base, mv)?;
        vertices.push(VertexCheck {
            knot: v.clone(),
            e2: v.e2_bounds()?,
            bound,
            pass: bound >= Ratio::from_integer(r),
        });
    }
    if let Some(bad) = vertices.iter().find(|c| !c.pass) {
        return Err(GordianError::CertificateViolation(format!(
            "vertex {} has bound {} < {r}",
            bad.knot, bad.bound
        )));
    }
    let report = VerificationReport {
        mv,
        string_count: n,
        radius: r,
        base,
        base_e2,
        chain_length,
        lift,
        vertices,
        pass: true,
    };
    Ok((combined, report))
}

fn same_move(path: &CertifiedPath, mv: MovePattern) -> Result<(), GordianError> {
    match path.edges().iter().find(|e| e.move_pattern() != mv) {
        Some(e) => Err(GordianError::MoveMismatch {
            expected: mv.key(),
            found: e.move_pattern().key(),
        }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Avoidance {
    pub path: CertifiedPath,
    /// Registry position of the chosen `Q`.
    pub witness_index: usize,
    pub witness: SymbolicKnot,
}

/// Detours `gamma: K → S` through `γ # Q` for the first registered `Q` whose
/// route `K - K#Q - γ#Q - S#Q - S` misses `forbidden`.
pub fn avoid_finite_set(
    gamma: &CertifiedPath,
    forbidden: &BTreeSet<SymbolicKnot>,
    mv: MovePattern,
) -> Result<Avoidance, GordianError> {
    gamma.verify()?;
    same_move(gamma, mv)?;
    for end in [gamma.start(), gamma.end()] {
        if forbidden.contains(end) {
            return Err(GordianError::ForbiddenEndpoint(end.to_string()));
        }
    }
    let registry = mv.sphere1_registry()?;
    if !registry.is_infinite() {
        return Err(GordianError::RegistryFinite(mv.key()));
    }
    // each forbidden knot equals V # Q for at most one Q per vertex V
    let cap = forbidden.len() * gamma.vertices().len() + 1;
    for (index, q) in registry.iter().enumerate().take(cap) {
        let shifted = shift_path(gamma, &q);
        if shifted.vertices().iter().any(|v| forbidden.contains(v)) {
            continue;
        }
        let witness = CertifiedEdge::witness_at(mv, index)?;
        let into = CertifiedPath::from_edge(witness.shifted(gamma.start()));
        let out = CertifiedPath::from_edge(witness.shifted(gamma.end())).reversed();
        let path = into.concat(shifted)?.concat(out)?;
        path.verify()?;
        return Ok(Avoidance {
            path,
            witness_index: index,
            witness: q,
        });
    }
    Err(GordianError::RegistryExhausted(mv.key()))
}
