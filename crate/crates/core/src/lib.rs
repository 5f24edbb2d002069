//! Exact arithmetic for a family of function-field series computations.
//!
//! Everything here works over a finite field `F_q` (`q = p^e`) with truncated
//! formal power series in `x = 1/T`. The crate provides:
//!
//! - [`fq`]: the field `F_q` itself, with a deterministic polynomial basis;
//! - [`qwords`]: base-`q` digit words and the repdigit/repunit integers built
//!   from them;
//! - [`lseries`]: truncated series builders for the L-series, the products
//!   `alpha` and `Pi`, and the star expansion of `(alpha/Pi)·L`;
//! - [`decomp`]: the chain decomposition of an integer into parts `q^l - 1`
//!   plus an interval remainder, and the cell tables derived from it;
//! - [`coeffs`]: digitwise binomial coefficients mod `p` and the symbolic
//!   monomial `d_{j,m,n}`, giving series coefficients without any series;
//! - [`analysis`]: preperiod/period detection, DFAO evaluation, row-set
//!   statistics, and the verification suites tying it all together.
//!
//! All arithmetic is exact; there are no floating-point values anywhere.
//! The crate is `no_std` (with `alloc`); IO, a CLI, and file formats live in
//! the companion `lchi-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod coeffs;
pub mod decomp;
pub mod error;
pub mod fq;
pub mod lseries;
pub mod qwords;
pub mod render;

pub use error::Error;
pub use fq::{FieldContext, FqElem};
pub use lseries::{Params, Series};
