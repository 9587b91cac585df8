use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// Largest integer magnitude emitted as a JSON number.
const SAFE_INTEGER: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    pub fn ok(payload: Value) -> Self {
        Self {
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn error(diagnostic: String) -> Self {
        Self {
            status: Status::Error,
            payload: Value::Object(Default::default()),
            diagnostics: vec![diagnostic],
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("values serialize"),
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if self.status == Status::Error {
            out.push_str("error\n");
        }
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A JSON number when it fits in 53 bits, otherwise a decimal string.
pub fn big_int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.unsigned_abs() <= SAFE_INTEGER => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn big_uint(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) if x <= SAFE_INTEGER => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn ser_big_int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    big_int(v).serialize(s)
}

pub fn ser_big_uint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    big_uint(v).serialize(s)
}

pub fn ser_opt_big_uint<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref().map(big_uint).serialize(s)
}

pub fn ser_big_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(big_int).collect::<Vec<_>>().serialize(s)
}

pub fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_displays<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .serialize(s)
}
