//! JSON document shapes for every command. Field order is fixed by the
//! struct definitions, so serialization is byte-deterministic and documents
//! round-trip exactly.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct BTableDoc {
    pub j: u32,
    pub q: u32,
    pub rows: Vec<BRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct BRow {
    pub m: u32,
    /// Defined cells only: the chain as digit strings.
    pub cells: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct CTableDoc {
    pub j: u32,
    pub q: u32,
    pub s: u32,
    pub rows: Vec<CRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct CRow {
    pub m: u32,
    /// One entry per chain position; `null` where the offset is undefined.
    pub cells: Vec<Option<String>>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct DTableDoc {
    pub j: u32,
    pub q: u32,
    pub s: u32,
    pub rows: Vec<DRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct DRow {
    pub m: u32,
    pub cells: Vec<DCell>,
}

/// A coefficient monomial `scalar * (-a)^exp`, exponent unreduced.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct DCell {
    pub scalar: String,
    pub exp: String,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct SeriesDoc {
    pub q: u32,
    pub s: u32,
    /// Coordinate literal of `a` ("2", "1,1").
    pub a: String,
    pub prec: usize,
    /// Coefficients as coordinate sequences, index = exponent of `x`.
    pub coeffs: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct CoeffDoc {
    pub n: u64,
    /// Coefficient from the truncated series expansion.
    pub series: String,
    /// Coefficient from the decomposition path.
    pub direct: String,
    pub r#match: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct DecomposeDoc {
    pub b: String,
    pub q: u32,
    pub s: u32,
    /// Chain as digit strings.
    pub chain: Vec<String>,
    /// Removed part indices: chain[i+1] = chain[i] - (q^lvals[i] - 1).
    pub lvals: Vec<u32>,
    /// 1-based chain indices that yield decompositions.
    pub index_set: Vec<usize>,
    pub decompositions: Vec<DecompositionDoc>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct DecompositionDoc {
    /// Chain position (1-based).
    pub i: usize,
    /// Remainder as digit string, lying in interval `k`.
    pub r: String,
    pub k: u32,
    /// Part indices: b = r + sum over eps of (q^j - 1).
    pub eps: Vec<u32>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct VerifyDoc {
    pub suite: String,
    pub params: ParamsDoc,
    pub range: BTreeMap<String, String>,
    pub pass: bool,
    pub checks: u64,
    pub counterexample: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct ParamsDoc {
    pub p: u32,
    pub e: u32,
    pub s: u32,
    /// Coordinate literal, or `null` when the suite ran over every `a`.
    pub a: Option<String>,
}
