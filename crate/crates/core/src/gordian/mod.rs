//! Knots as connected sums, local moves, and certified paths in the
//! Gordian graph of a move.

mod certificate;
mod knot;
mod moves;
mod path;

use thiserror::Error;

use crate::homology::HomologyError;
use crate::knots::KnotError;
use crate::poly::PolyError;

pub use certificate::{
    avoid_finite_set, basic_lemma_certificate, distance_lower_bound, distance_lower_bound_at,
    Avoidance, VerificationReport, VertexCheck,
};
pub use knot::{E2Bounds, NamedPrime, Summand, SymbolicKnot};
pub use moves::{MovePattern, Sphere1Registry};
pub use path::{
    q_chain, shift_path, witness_edge, CertifiedEdge, CertifiedPath, EdgeStore, Provenance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GordianError {
    #[error("no first homology stored for {0}")]
    MissingHomology(String),
    #[error("e₂ of the base knot {0} has no certified upper bound")]
    UndeterminedBaseE2(String),
    #[error("witness {0} has e₂ = 0")]
    WitnessTrivialE2(String),
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("{0} has no registered witness at that index")]
    NoWitness(String),
    #[error("{0} acts on fewer than 2 strings")]
    TooFewStrings(String),
    #[error("path edge uses {found}, expected {expected}")]
    MoveMismatch { expected: String, found: String },
    #[error("chain length must be positive")]
    InvalidLength,
    #[error("radius must be a positive integer of moderate size")]
    InvalidRadius,
    #[error("edge fails verification: {0}")]
    BrokenEdge(String),
    #[error("path fails verification: {0}")]
    BrokenPath(String),
    #[error("certificate violated: {0}")]
    CertificateViolation(String),
    #[error("path endpoint {0} lies in the forbidden set")]
    ForbiddenEndpoint(String),
    #[error("the sphere-1 registry of {0} is not an infinite enumeration")]
    RegistryFinite(String),
    #[error("enumeration of the {0} registry ended before a clear witness appeared")]
    RegistryExhausted(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
