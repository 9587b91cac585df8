use std::collections::BTreeSet;
use std::fmt;

use gordian_core::ends::{self, Budget, GraphFamily, RemovalDescriptor};
use gordian_core::gordian::{
    self, avoid_finite_set, basic_lemma_certificate, distance_lower_bound, q_chain, witness_edge,
    CertifiedPath, E2Bounds, MovePattern, SymbolicKnot,
};
use gordian_core::homology::{self, lens_h1};
use gordian_core::knots::{self, knots_equivalent, parity_of, theorem1_witness, RationalKnotClass};
use gordian_core::poly::{self, alexander_at_minus1, conway_kn};
use gordian_core::tangle::{
    self, canonical_continued_fraction, tangle_from_continued_fraction, ContinuedFraction,
    Fraction, RationalTangle, TwistWord,
};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::Serialize;
use serde_json::Value;

use crate::output::{
    ser_big_int, ser_big_ints, ser_big_uint, ser_display, ser_displays, ser_opt_big_uint,
};

/// Failure of a command, split by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input (exit 2).
    Usage(String),
    /// Well-formed input the computation rejects (exit 1).
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(
    tangle::TangleError,
    knots::KnotError,
    homology::HomologyError,
    poly::PolyError,
    gordian::GordianError,
    ends::EndsError
);

pub type CmdResult = Result<Value, CliError>;

fn parse<T>(s: &str) -> Result<T, CliError>
where
    T: std::str::FromStr,
    T::Err: fmt::Display,
{
    s.parse()
        .map_err(|e: T::Err| CliError::Usage(e.to_string()))
}

fn to_value<T: Serialize>(v: T) -> CmdResult {
    Ok(serde_json::to_value(v).expect("payloads serialize"))
}

#[derive(Serialize)]
struct TangleReport {
    input: String,
    #[serde(serialize_with = "ser_display")]
    fraction: Fraction,
    cf: Option<Vec<i64>>,
    word: String,
}

fn tangle_report(input: &str, fraction: Fraction, word: Option<&TwistWord>) -> CmdResult {
    let cf = if fraction.is_infinite() {
        None
    } else {
        Some(canonical_continued_fraction(fraction)?)
    };
    let word = match (word, &cf) {
        (Some(w), _) => w.to_string(),
        (None, Some(cf)) => tangle_from_continued_fraction(cf)?.word().to_string(),
        (None, None) => RationalTangle::infinity().word().to_string(),
    };
    to_value(TangleReport {
        input: input.to_string(),
        fraction,
        cf: cf.map(|c| c.entries().to_vec()),
        word,
    })
}

pub fn tangle_eval(input: &str) -> CmdResult {
    if let Ok(cf) = input.parse::<ContinuedFraction>() {
        return tangle_report(input, cf.fraction()?, None);
    }
    let word: TwistWord = parse(input)?;
    let t = RationalTangle::from_word(word)?;
    tangle_report(input, t.fraction(), Some(t.word()))
}

pub fn tangle_canon(input: &str) -> CmdResult {
    let f: Fraction = parse(input)?;
    if f.is_infinite() {
        return Err(canonical_continued_fraction(f).unwrap_err().into());
    }
    tangle_report(input, f, None)
}

#[derive(Serialize)]
struct KnotRecord {
    input: String,
    canonical_class: Option<String>,
    parity: String,
    witness_fraction: Option<String>,
    determinant: u64,
}

fn knot_record(input: &str, require_witness: bool) -> CmdResult {
    let f: Fraction = parse(input)?;
    let class = RationalKnotClass::from_fraction(f).ok();
    let witness = match theorem1_witness(f) {
        Ok(w) => Some(w.fraction.to_string()),
        Err(e) if require_witness => return Err(e.into()),
        Err(_) => None,
    };
    to_value(KnotRecord {
        input: input.to_string(),
        canonical_class: class.map(|c| c.to_string()),
        parity: parity_of(f).to_string(),
        witness_fraction: witness,
        determinant: f.numer().unsigned_abs(),
    })
}

pub fn knot_classify(input: &str) -> CmdResult {
    knot_record(input, false)
}

pub fn knot_witness(input: &str) -> CmdResult {
    knot_record(input, true)
}

#[derive(Serialize)]
struct EquivReport {
    a: String,
    b: String,
    class_a: String,
    class_b: String,
    equivalent: bool,
}

pub fn knot_equiv(a: &str, b: &str) -> CmdResult {
    let (fa, fb): (Fraction, Fraction) = (parse(a)?, parse(b)?);
    let equivalent = knots_equivalent(fa, fb)?;
    to_value(EquivReport {
        a: a.to_string(),
        b: b.to_string(),
        class_a: RationalKnotClass::from_fraction(fa)?.to_string(),
        class_b: RationalKnotClass::from_fraction(fb)?.to_string(),
        equivalent,
    })
}

#[derive(Serialize)]
struct Invariants {
    class: String,
    parity: String,
    h1: Option<Vec<u64>>,
    h1_factors: Option<Vec<u64>>,
    e2: Value,
    #[serde(serialize_with = "ser_opt_big_uint")]
    determinant: Option<BigUint>,
}

/// Accepts a single fraction or a `#`-joined knot.
pub fn knot_invariants(input: &str) -> CmdResult {
    if let Ok(f) = input.parse::<Fraction>() {
        let h1 = lens_h1(f)?;
        return to_value(Invariants {
            class: RationalKnotClass::from_fraction(f)?.to_string(),
            parity: parity_of(f).to_string(),
            h1: Some(h1.factors().to_vec()),
            h1_factors: Some(h1.factors().to_vec()),
            e2: Value::from(h1.min_generators()),
            determinant: Some(h1.determinant()),
        });
    }
    let k: SymbolicKnot = parse(input)?;
    to_value(Invariants {
        class: k.to_string(),
        parity: "knot".into(),
        h1: k.h1().ok().map(|g| g.factors().to_vec()),
        h1_factors: k.h1().ok().map(|g| g.factors().to_vec()),
        e2: e2_value(&k.e2_bounds()?),
        determinant: k.determinant(),
    })
}

#[derive(Serialize)]
struct FamilyReport {
    n: u32,
    conway: String,
    #[serde(serialize_with = "ser_big_ints")]
    conway_coefficients: Vec<BigInt>,
    #[serde(serialize_with = "ser_big_int")]
    alexander_at_minus1: BigInt,
    #[serde(serialize_with = "ser_big_uint")]
    det_value: BigUint,
}

pub fn family_kn(n: u32) -> CmdResult {
    let conway = conway_kn(n)?;
    let value = alexander_at_minus1(&conway)?;
    to_value(FamilyReport {
        n,
        conway: conway.to_string(),
        conway_coefficients: conway.coeffs().to_vec(),
        det_value: value.abs().magnitude().clone(),
        alexander_at_minus1: value,
    })
}

/// An exact `e₂` as a number, otherwise `">=k"`.
fn e2_value(b: &E2Bounds) -> Value {
    match b.exact() {
        Some(e) => Value::from(e),
        None => Value::String(format!(">={}", b.lower)),
    }
}

fn e2_values(path: &CertifiedPath) -> Result<Vec<Value>, CliError> {
    path.vertices()
        .iter()
        .map(|v| Ok(e2_value(&v.e2_bounds()?)))
        .collect()
}

#[derive(Serialize)]
struct BoundReport {
    knot: String,
    to: String,
    #[serde(rename = "move")]
    mv: String,
    string_count: u32,
    e2_values: [Value; 2],
    bound: String,
    integer_bound: u64,
}

pub fn gordian_bound(mv: &str, knot: &str, to: &str) -> CmdResult {
    let mv: MovePattern = parse(mv)?;
    let (k, q): (SymbolicKnot, SymbolicKnot) = (parse(knot)?, parse(to)?);
    let bound = distance_lower_bound(&k, &q, mv)?;
    to_value(BoundReport {
        knot: k.to_string(),
        to: q.to_string(),
        mv: mv.key(),
        string_count: mv.string_count(),
        e2_values: [e2_value(&k.e2_bounds()?), e2_value(&q.e2_bounds()?)],
        bound: bound.to_string(),
        integer_bound: bound.ceil().to_integer(),
    })
}

#[derive(Serialize)]
struct ChainReport {
    #[serde(rename = "move")]
    mv: String,
    witness: String,
    length: usize,
    #[serde(serialize_with = "ser_displays")]
    vertices: Vec<SymbolicKnot>,
    e2_values: Vec<Value>,
    bounds: Vec<String>,
    pass: bool,
}

/// Lower bounds from each vertex to `base`.
fn bounds_to(
    path: &CertifiedPath,
    base: &SymbolicKnot,
    mv: MovePattern,
) -> Result<Vec<String>, CliError> {
    path.vertices()
        .iter()
        .map(|v| Ok(distance_lower_bound(v, base, mv)?.to_string()))
        .collect()
}

pub fn gordian_chain(mv: &str, m: usize) -> CmdResult {
    let mv: MovePattern = parse(mv)?;
    let path = q_chain(mv, m)?;
    let pass = path.verify().is_ok();
    to_value(ChainReport {
        mv: mv.key(),
        witness: witness_edge(mv)?.endpoints().1.to_string(),
        length: path.len(),
        e2_values: e2_values(&path)?,
        bounds: bounds_to(&path, &SymbolicKnot::unknot(), mv)?,
        vertices: path.vertices().to_vec(),
        pass,
    })
}

#[derive(Serialize)]
struct CertificateReport {
    #[serde(rename = "move")]
    mv: String,
    radius: u64,
    string_count: u32,
    start: String,
    base: String,
    chain_length: usize,
    lift: usize,
    #[serde(serialize_with = "ser_displays")]
    vertices: Vec<SymbolicKnot>,
    e2_values: Vec<Value>,
    bounds: Vec<String>,
    pass: bool,
}

/// Certificate around `ζ = (Q^from - … - U)` for the move's witness `Q`.
pub fn gordian_certify_end(mv: &str, radius: u64, from: usize) -> CmdResult {
    let mv: MovePattern = parse(mv)?;
    let zeta = q_chain(mv, from)?.reversed();
    let (path, report) = basic_lemma_certificate(mv, &zeta, radius)?;
    let bounds = bounds_to(&path, &report.base, mv)?;
    to_value(CertificateReport {
        mv: mv.key(),
        radius,
        string_count: report.string_count,
        start: path.start().to_string(),
        base: report.base.to_string(),
        chain_length: report.chain_length,
        lift: report.lift,
        e2_values: e2_values(&path)?,
        vertices: path.vertices().to_vec(),
        bounds,
        pass: report.pass,
    })
}

#[derive(Serialize)]
struct AvoidReport {
    #[serde(rename = "move")]
    mv: String,
    #[serde(serialize_with = "ser_displays")]
    forbidden: Vec<SymbolicKnot>,
    witness_index: usize,
    witness: String,
    #[serde(serialize_with = "ser_displays")]
    vertices: Vec<SymbolicKnot>,
    pass: bool,
}

/// Detours the chain `U - Q - … - Q^m` around the given knots and the first
/// `prefix` registry entries.
pub fn gordian_avoid(mv: &str, chain: usize, forbid: &[String], prefix: usize) -> CmdResult {
    let mv: MovePattern = parse(mv)?;
    let gamma = q_chain(mv, chain)?;
    let mut forbidden: BTreeSet<SymbolicKnot> =
        forbid.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
    forbidden.extend(mv.sphere1_registry()?.iter().take(prefix));
    let out = avoid_finite_set(&gamma, &forbidden, mv)?;
    let pass =
        out.path.verify().is_ok() && out.path.vertices().iter().all(|v| !forbidden.contains(v));
    to_value(AvoidReport {
        mv: mv.key(),
        forbidden: forbidden.into_iter().collect(),
        witness_index: out.witness_index,
        witness: out.witness.to_string(),
        vertices: out.path.vertices().to_vec(),
        pass,
    })
}

/// Family selection flags shared by the `ends` commands.
#[derive(Debug, Clone, clap::Args)]
pub struct FamilyArgs {
    /// zd, tree, halfline, A, or random
    #[arg(long)]
    pub family: String,
    /// lattice dimension
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// tree degree
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// random graph size
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// random edge probability
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl FamilyArgs {
    fn family(&self) -> Result<GraphFamily, CliError> {
        let f = match self.family.as_str() {
            "zd" | "Z" | "lattice" => GraphFamily::lattice(self.d),
            "tree" => GraphFamily::tree(self.k),
            "halfline" => Ok(GraphFamily::HalfLine),
            "A" | "a" | "clique-chain" => Ok(GraphFamily::CliqueChain),
            "random" => GraphFamily::random(self.n, self.p, self.seed),
            other => return Err(CliError::Usage(format!("unknown family `{other}`"))),
        };
        f.map_err(|e| CliError::Usage(e.to_string()))
    }
}

pub fn ends_estimate(
    args: &FamilyArgs,
    removal: Option<&str>,
    radius: u64,
    width: u64,
) -> CmdResult {
    let family = args.family()?;
    match removal {
        Some(r) => {
            let removal: RemovalDescriptor = parse(r)?;
            to_value(ends::components_after_removal(
                &family, &removal, radius, width,
            )?)
        }
        None => to_value(ends::best_known_counts(&family, Budget { radius, width })?),
    }
}

#[derive(Serialize)]
struct ExactReport {
    family: GraphFamily,
    counts: ends::EndCounts,
}

pub fn ends_exact(args: &FamilyArgs) -> CmdResult {
    let family = args.family()?;
    to_value(ExactReport {
        counts: ends::exact_ends(&family),
        family,
    })
}
