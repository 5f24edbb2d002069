//! Truncated formal power series in `x = 1/T` over `F_q`, and the builders
//! for every series this crate tabulates.
//!
//! A [`Series`] of precision `N` knows its first `N` coefficients exactly.
//! Ring operations carry the minimum precision of their operands.
//!
//! Every product that appears here has factors of the form `1 + c x^d`, so
//! the builders work by sparse shift-add passes in `O(N)` per factor instead
//! of dense multiplication. Dense `mul`/`inv` exist for cross-checks and for
//! the multiplicative identity `Pi * star = alpha * L` that validates the
//! whole construction.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::fq::{FieldContext, FqElem};
use crate::qwords;

/// Run parameters: the field, the exponent `s` with `1 < s < q`, and the
/// shift `a` of the binomial `(1 - a/T)`. `sbar = q - s`.
#[derive(Clone, Debug)]
pub struct Params {
    ctx: FieldContext,
    s: u32,
    a: FqElem,
}

impl Params {
    pub fn new(ctx: FieldContext, s: u32, a: FqElem) -> Result<Params, Error> {
        if s <= 1 || s >= ctx.q() {
            return Err(Error::InvalidS { s, q: ctx.q() });
        }
        Ok(Params { ctx, s, a })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn sbar(&self) -> u32 {
        self.ctx.q() - self.s
    }

    pub fn a(&self) -> FqElem {
        self.a
    }
}

/// Truncated power series: coefficient of `x^n` at index `n`, `n < prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<FqElem>,
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<FqElem>) -> Series {
        Series { coeffs }
    }

    pub fn zero(prec: usize) -> Series {
        Series {
            coeffs: vec![FqElem::ZERO; prec],
        }
    }

    pub fn one(prec: usize) -> Series {
        let mut s = Series::zero(prec);
        if prec > 0 {
            s.coeffs[0] = FqElem::ONE;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Exact coefficient of `x^n`. Access at or beyond the precision is an
    /// error, never a silent zero.
    pub fn coeff(&self, n: usize) -> Result<FqElem, Error> {
        self.coeffs.get(n).copied().ok_or(Error::OutOfPrecision {
            index: n,
            prec: self.coeffs.len(),
        })
    }

    /// First `prec` coefficients as a new series.
    pub fn truncate(&self, prec: usize) -> Series {
        Series {
            coeffs: self.coeffs[..prec.min(self.coeffs.len())].to_vec(),
        }
    }
}

pub fn add(ctx: &FieldContext, f: &Series, g: &Series) -> Series {
    let n = f.prec().min(g.prec());
    let coeffs = (0..n)
        .map(|i| ctx.add(f.coeffs[i], g.coeffs[i]))
        .collect();
    Series { coeffs }
}

/// Dense truncated product at the minimum precision of the operands.
pub fn mul(ctx: &FieldContext, f: &Series, g: &Series) -> Series {
    let n = f.prec().min(g.prec());
    let mut out = vec![FqElem::ZERO; n];
    for i in 0..n {
        let fi = f.coeffs[i];
        if fi.is_zero() {
            continue;
        }
        for j in 0..n - i {
            let gj = g.coeffs[j];
            if !gj.is_zero() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(fi, gj));
            }
        }
    }
    Series { coeffs: out }
}

/// Multiplicative inverse; requires a unit constant term.
pub fn inv(ctx: &FieldContext, f: &Series) -> Result<Series, Error> {
    let n = f.prec();
    if n == 0 || f.coeffs[0].is_zero() {
        return Err(Error::NonUnitSeries);
    }
    let f0_inv = ctx.inv(f.coeffs[0])?;
    let mut g = vec![FqElem::ZERO; n];
    g[0] = f0_inv;
    for k in 1..n {
        let mut acc = FqElem::ZERO;
        for i in 1..=k {
            let fi = f.coeffs[i];
            if !fi.is_zero() {
                acc = ctx.add(acc, ctx.mul(fi, g[k - i]));
            }
        }
        g[k] = ctx.neg(ctx.mul(f0_inv, acc));
    }
    Ok(Series { coeffs: g })
}

// ---------------------------------------------------------------------------
// Sparse factor passes. These are the workhorses: each is one O(N) sweep.

/// `f *= (1 + c x^d)` in place.
fn apply_binomial(ctx: &FieldContext, coeffs: &mut [FqElem], d: usize, c: FqElem) {
    if c.is_zero() || d == 0 || d >= coeffs.len() {
        return;
    }
    for n in (d..coeffs.len()).rev() {
        let lo = coeffs[n - d];
        if !lo.is_zero() {
            coeffs[n] = ctx.add(coeffs[n], ctx.mul(c, lo));
        }
    }
}

/// `f *= 1/(1 - x^d)` in place (prefix sums with stride `d`).
fn apply_geometric(ctx: &FieldContext, coeffs: &mut [FqElem], d: usize) {
    if d == 0 || d >= coeffs.len() {
        return;
    }
    for n in d..coeffs.len() {
        let lo = coeffs[n - d];
        if !lo.is_zero() {
            coeffs[n] = ctx.add(coeffs[n], lo);
        }
    }
}

/// `f *= (1 - a x)^exp` by the base-p expansion of `exp`:
/// `(1 - a x)^(p^i) = 1 - a^(p^i) x^(p^i)`.
fn apply_binom_power(ctx: &FieldContext, coeffs: &mut [FqElem], a: FqElem, exp: &BigUint) {
    if a.is_zero() || exp.is_zero() {
        return;
    }
    let p = ctx.p();
    let digits = qwords::digits_le(exp, p);
    let mut frob = a; // a^(p^i)
    let mut stride: usize = 1; // p^i
    for (i, &v) in digits.iter().enumerate() {
        if i > 0 {
            frob = ctx.pow_int(frob, &BigUint::from(p));
            match stride.checked_mul(p as usize) {
                Some(next) => stride = next,
                None => return,
            }
        }
        if stride >= coeffs.len() {
            return;
        }
        if v > 0 {
            let c = ctx.neg(frob);
            for _ in 0..v {
                apply_binomial(ctx, coeffs, stride, c);
            }
        }
    }
}

/// `(1 - a x)^exp` truncated to `prec`, computed via Frobenius splitting of
/// the exponent. Equals the `exp`-fold product of `(1 - a x)` exactly.
pub fn binom_power(ctx: &FieldContext, a: FqElem, exp: &BigUint, prec: usize) -> Series {
    let mut out = Series::one(prec);
    apply_binom_power(ctx, &mut out.coeffs, a, exp);
    out
}

/// `prod_{j >= k+1} (1 - x^(q^j - 1))` truncated to `prec`. Factors whose
/// leading exponent reaches the precision are identity and are skipped.
pub fn tail_product(ctx: &FieldContext, k: u32, prec: usize) -> Series {
    let mut out = Series::one(prec);
    let q = ctx.q() as u128;
    let minus_one = ctx.neg(ctx.one());
    let mut qpow: u128 = q.pow(k + 1);
    loop {
        let d = qpow - 1;
        if d >= prec as u128 {
            break;
        }
        apply_binomial(ctx, &mut out.coeffs, d as usize, minus_one);
        qpow = match qpow.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
    }
    out
}

/// exponent `sbar * (q^k - 1)/(q - 1)` (and with `s` in place of `sbar`),
/// as big integers
fn lead_exponent(params: &Params, k: u32) -> (BigUint, BigUint) {
    let rep = qwords::repunit(params.q(), k);
    (&rep * params.sbar(), &rep * params.s())
}

/// The star expansion of `(alpha/Pi) * L(1, chi_s)`: the sum over `k >= 0` of
/// `(-1)^(k(s-1)) x^(sbar(q^k-1)/(q-1)) (1 - a x)^(s(q^k-1)/(q-1))
///  * prod_{j>=k+1}(1 - x^(q^j-1))`,
/// truncated to `prec`. The coefficient of `x^n` is the sequence `u(n)`.
pub fn star(params: &Params, prec: usize) -> Series {
    let ctx = params.ctx();
    let mut out = Series::zero(prec);
    let prec_big = BigUint::from(prec);
    for k in 0u32.. {
        let (ek, full) = lead_exponent(params, k);
        if ek >= prec_big {
            break;
        }
        let ek = ek.to_usize().expect("exponent below prec fits usize");
        let mut term = tail_product(ctx, k, prec - ek);
        apply_binom_power(ctx, &mut term.coeffs, params.a(), &full);
        let sign = ctx.minus_one_pow(k as u64 * (params.s() - 1) as u64);
        for (i, &c) in term.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[ek + i] = ctx.add(out.coeffs[ek + i], ctx.mul(sign, c));
            }
        }
    }
    out
}

/// The L-series itself, expanded directly from its defining sum: term `k` is
/// `(-1)^(k(s-1)) x^(sbar(q^k-1)/(q-1)) (1 - a x)^(s(q^k-1)/(q-1))
///  / prod_{i=1..k}(1 - x^(q^i-1))`.
///
/// This is the Laurent expansion of `sum_k (-1)^(k(s-1)) (T-a)^(s(q^k-1)/(q-1)) / L_k`
/// rewritten in `x = 1/T`: `(T-a)^S = T^S (1-ax)^S` and
/// `L_k = T^((q^(k+1)-q)/(q-1)) prod_{i=1..k}(1 - x^(q^i-1))`.
pub fn l_direct(params: &Params, prec: usize) -> Series {
    let ctx = params.ctx();
    let q = params.q() as u128;
    let mut out = Series::zero(prec);
    let prec_big = BigUint::from(prec);
    // running prod_{i=1..k} 1/(1 - x^(q^i - 1))
    let mut inv_acc = Series::one(prec);
    for k in 0u32.. {
        let (ek, full) = lead_exponent(params, k);
        if ek >= prec_big {
            break;
        }
        if k >= 1 {
            let d = q.pow(k) - 1;
            if d < prec as u128 {
                apply_geometric(ctx, &mut inv_acc.coeffs, d as usize);
            }
        }
        let ek = ek.to_usize().expect("exponent below prec fits usize");
        let mut term = inv_acc.truncate(prec - ek);
        apply_binom_power(ctx, &mut term.coeffs, params.a(), &full);
        let sign = ctx.minus_one_pow(k as u64 * (params.s() - 1) as u64);
        for (i, &c) in term.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[ek + i] = ctx.add(out.coeffs[ek + i], ctx.mul(sign, c));
            }
        }
    }
    out
}

/// `alpha = prod_{j >= 0} (1 - x^(q^(j+1) - q^j))` truncated to `prec`.
pub fn alpha(ctx: &FieldContext, prec: usize) -> Series {
    let mut out = Series::one(prec);
    let q = ctx.q() as u128;
    let minus_one = ctx.neg(ctx.one());
    let mut qpow: u128 = 1;
    loop {
        let d = qpow * (q - 1);
        if d >= prec as u128 {
            break;
        }
        apply_binomial(ctx, &mut out.coeffs, d as usize, minus_one);
        qpow = match qpow.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
    }
    out
}

/// `Pi = prod_{j >= 1} (1 - [j]/[j+1])` truncated to `prec`, where
/// `[j] = T^(q^j) - T`. In `x = 1/T` the factor is
/// `1 - x^(q^(j+1)-q^j) (1 - x^(q^j-1)) / (1 - x^(q^(j+1)-1))`, which
/// simplifies exactly to `(1 - x^(q^(j+1)-q^j)) / (1 - x^(q^(j+1)-1))`
/// because the two numerator exponents sum to the denominator exponent.
pub fn pi(ctx: &FieldContext, prec: usize) -> Series {
    let mut out = Series::one(prec);
    let q = ctx.q() as u128;
    let minus_one = ctx.neg(ctx.one());
    let mut qpow: u128 = q; // q^j
    loop {
        let a_exp = qpow * (q - 1); // q^(j+1) - q^j
        if a_exp >= prec as u128 {
            break;
        }
        apply_binomial(ctx, &mut out.coeffs, a_exp as usize, minus_one);
        let c_exp = qpow * q - 1; // q^(j+1) - 1
        if c_exp < prec as u128 {
            apply_geometric(ctx, &mut out.coeffs, c_exp as usize);
        }
        qpow = match qpow.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
    }
    out
}
