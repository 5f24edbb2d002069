//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by construction and arithmetic operations.
///
/// Every failure mode is explicit; no operation silently substitutes a
/// default value (in particular `inv(0)` and out-of-precision coefficient
/// access are hard errors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `p` passed to a field constructor is not prime.
    NotPrime(u64),
    /// Extension degree `e` must be at least 1.
    ZeroExtensionDegree,
    /// `p^e` exceeds the supported desk-scale bound.
    FieldTooLarge { p: u64, e: u32 },
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
    /// Series inversion requires a unit constant term.
    NonUnitSeries,
    /// Coefficient index at or beyond the series precision.
    OutOfPrecision { index: usize, prec: usize },
    /// A digit outside `[0, base)` appeared in a word.
    DigitOutOfRange { digit: u32, base: u32 },
    /// A coordinate outside `[0, p)` or too many coordinates.
    BadCoordinates,
    /// `s` must satisfy `1 < s < q`.
    InvalidS { s: u32, q: u32 },
    /// Chain index past the end of a decomposition chain.
    ChainExhausted { n: usize, len: usize },
    /// DFAO transition table does not cover `states x alphabet`.
    MalformedAutomaton,
    /// Verification suite name not recognised.
    UnknownSuite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroExtensionDegree => write!(f, "extension degree must be >= 1"),
            Error::FieldTooLarge { p, e } => {
                write!(f, "field size {p}^{e} exceeds the supported bound 2^16")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonUnitSeries => write!(f, "series has no inverse: constant term is zero"),
            Error::OutOfPrecision { index, prec } => {
                write!(f, "coefficient {index} requested but precision is {prec}")
            }
            Error::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} out of range for base {base}")
            }
            Error::BadCoordinates => write!(f, "bad field element coordinates"),
            Error::InvalidS { s, q } => write!(f, "s = {s} must satisfy 1 < s < q = {q}"),
            Error::ChainExhausted { n, len } => {
                write!(f, "chain index {n} beyond chain of length {len}")
            }
            Error::MalformedAutomaton => write!(f, "transition table incomplete"),
            Error::UnknownSuite(name) => write!(f, "unknown suite '{name}'"),
        }
    }
}

impl core::error::Error for Error {}
