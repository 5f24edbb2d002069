//! Binomial coefficients mod `p` by digitwise factorization, the symbolic
//! coefficient monomial `d_{j,m,n} = scalar * (-a)^c`, its closed form for
//! `j = 2`, and the series coefficient `u(b)` computed purely from the chain
//! decomposition — no series truncation involved.

use alloc::string::String;
use core::fmt::Write;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::decomp;
use crate::error::Error;
use crate::fq::FqElem;
use crate::lseries::Params;
use crate::qwords;

/// `C(m, k) mod p` for digits `m, k < p`, by the multiplicative formula.
/// All intermediate factors are nonzero mod `p` since `k < p`.
fn small_binom_mod_p(m: u32, k: u32, p: u32) -> u32 {
    if k > m {
        return 0;
    }
    let p = p as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 1..=k as u64 {
        num = num * ((m as u64 - t + 1) % p) % p;
        den = den * (t % p) % p;
    }
    // den^(p-2) mod p
    let mut inv = 1u64;
    let mut base = den;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        n >>= 1;
    }
    (num * inv % p) as u32
}

/// `C(m, k) mod p` via the base-`p` digitwise product. Zero as soon as a
/// digit of `k` exceeds the corresponding digit of `m`.
pub fn lucas_binom(m: &BigUint, k: &BigUint, p: u32) -> u32 {
    let md = qwords::digits_le(m, p);
    let kd = qwords::digits_le(k, p);
    if kd.len() > md.len() {
        return 0;
    }
    let mut acc = 1u64;
    for (i, &kdig) in kd.iter().enumerate() {
        let mdig = md[i];
        if kdig > mdig {
            return 0;
        }
        acc = acc * small_binom_mod_p(mdig, kdig, p) as u64 % p as u64;
        if acc == 0 {
            return 0;
        }
    }
    acc as u32
}

/// A coefficient stored symbolically in `a`: `scalar * (-a)^exponent`, with
/// the scalar in the prime field `F_p` (canonical representative in
/// `[0, p)`). The zero monomial is canonically `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMonomial {
    scalar: u32,
    exponent: BigUint,
}

impl DMonomial {
    pub fn new(scalar: u32, exponent: BigUint, p: u32) -> DMonomial {
        let scalar = scalar % p;
        if scalar == 0 {
            DMonomial::zero()
        } else {
            DMonomial { scalar, exponent }
        }
    }

    pub fn zero() -> DMonomial {
        DMonomial {
            scalar: 0,
            exponent: BigUint::zero(),
        }
    }

    /// From a signed scalar, e.g. `-2` taken mod `p`.
    pub fn from_signed(scalar: i64, exponent: BigUint, p: u32) -> DMonomial {
        DMonomial::new(scalar.rem_euclid(p as i64) as u32, exponent, p)
    }

    pub fn scalar(&self) -> u32 {
        self.scalar
    }

    pub fn exponent(&self) -> &BigUint {
        &self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.scalar == 0
    }

    /// Equality as functions of `a`: scalars must match, and exponents must
    /// be equal, or congruent mod `q - 1` with both at least 1 (so that the
    /// value agrees at `a = 0` too, where only the exponent-zero monomial
    /// survives).
    pub fn semantic_eq(&self, other: &DMonomial, q: u32) -> bool {
        if self.scalar != other.scalar {
            return false;
        }
        if self.exponent == other.exponent {
            return true;
        }
        let ord = BigUint::from(q - 1);
        !self.exponent.is_zero()
            && !other.exponent.is_zero()
            && &self.exponent % &ord == &other.exponent % &ord
    }

    /// Renders in the style of the coefficient tables: `"0"`, `"1"`, `"2"`,
    /// `"2(-a)^3"`, `"(-a)^2"`, `"2(-a)"`. Exponents above `q` print the
    /// reduced representative in `[1, q-1]` of `exponent mod (q-1)`.
    pub fn render(&self, q: u32) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        if self.exponent.is_zero() {
            let _ = write!(out, "{}", self.scalar);
            return out;
        }
        if self.scalar != 1 {
            let _ = write!(out, "{}", self.scalar);
        }
        out.push_str("(-a)");
        let shown = if self.exponent <= BigUint::from(q) {
            self.exponent.clone()
        } else {
            let r = &self.exponent % (q - 1);
            if r.is_zero() {
                BigUint::from(q - 1)
            } else {
                r
            }
        };
        if !shown.is_one() {
            let _ = write!(out, "^{shown}");
        }
        out
    }
}

/// The summand attached to chain position `n` (1-based) of a decomposition:
/// `(-1)^(k(s-1) + n - 1) * C([s^k]_q, c) * (-a)^c`
/// where `k` is the interval index of the chain element and `c` its offset.
fn chain_summand(k: u32, c: &BigUint, n: usize, params: &Params) -> DMonomial {
    let p = params.ctx().p();
    let top = qwords::repunit(params.q(), k) * params.s();
    let binom = lucas_binom(&top, c, p);
    if binom == 0 {
        return DMonomial::zero();
    }
    let parity = (k as u64 * (params.s() - 1) as u64 + (n as u64 - 1)) % 2;
    let scalar = if parity == 1 && p != 2 {
        p - binom
    } else {
        binom
    };
    DMonomial::new(scalar, c.clone(), p)
}

/// The monomial `d_{j,m,n}` computed from the chain of `[1^m 0^j]_q`.
///
/// Positions whose chain element lies in no interval give the zero monomial;
/// positions beyond the chain are an error (use [`d_total`] for the
/// everywhere-defined extension by zero).
pub fn d_value(j: u32, m: u32, n: usize, params: &Params) -> Result<DMonomial, Error> {
    let dec = decomp::decompose(&qwords::block_value(1, m, j, params.q()), params);
    if n == 0 || n > dec.len() {
        return Err(Error::ChainExhausted { n, len: dec.len() });
    }
    Ok(match (dec.k_at(n), dec.c_at(n)) {
        (Some(k), Some(c)) => chain_summand(k, c, n, params),
        _ => DMonomial::zero(),
    })
}

/// `d_{j,m,n}` extended by zero beyond the chain.
pub fn d_total(j: u32, m: u32, n: usize, params: &Params) -> DMonomial {
    d_value(j, m, n, params).unwrap_or_else(|_| DMonomial::zero())
}

/// Evaluates a monomial at the `a` of `params`: `scalar * (-a)^exponent`,
/// with `0^0 = 1`.
pub fn d_eval(mono: &DMonomial, params: &Params) -> FqElem {
    let ctx = params.ctx();
    if mono.is_zero() {
        return ctx.zero();
    }
    let neg_a = ctx.neg(params.a());
    ctx.mul(
        ctx.from_prime_scalar(mono.scalar),
        ctx.pow_int(neg_a, &mono.exponent),
    )
}

/// The coefficient `u(b)` of `x^b` in the star series, computed from the
/// decomposition of `b` alone: the sum over interval members `(i, k)` of the
/// evaluated chain summand. Agrees with `coeff(star(params, N), b)` for
/// every `b < N`.
pub fn u_at(b: &BigUint, params: &Params) -> FqElem {
    let ctx = params.ctx();
    let dec = decomp::decompose(b, params);
    let mut acc = ctx.zero();
    for (i, k, c) in dec.members() {
        let mono = chain_summand(k, c, i, params);
        acc = ctx.add(acc, d_eval(&mono, params));
    }
    acc
}

/// Closed form of `d_{2,m,n}`, by cases on `n`:
///
/// - `n = 1`: `C(s, s-1) (-a)^((s-1) + (m+1-n)s) (-1)^((s-1)(m-n)) (-1)^(n-1)`;
/// - `2 <= n <= sbar`: zero;
/// - `sbar+1 <= n <= q`: zero for `m < n-1`, else
///   `C(s, n-1-sbar) (-a)^((n-1-sbar) + (m+1-n)s) (-1)^((s-1)(m-n)) (-1)^(n-1)`;
/// - `n = q+1`: zero for `m < n-2`, else
///   `(-a)^((m+2-n)s) (-1)^((s-1)(m-n)) (-1)^(n-1)`;
/// - `n > q+1`: zero.
///
/// Semantically equal (as a function of `a`) to `d_total(2, m, n)`.
pub fn d2_closed(m: u32, n: u32, params: &Params) -> DMonomial {
    let p = params.ctx().p();
    let q = params.q();
    let s = params.s();
    let sbar = params.sbar();
    let sign_parity = |m: u32, n: u32| -> u64 {
        // (s-1)(m-n) + (n-1) mod 2
        let d = (s as i64 - 1) * (m as i64 - n as i64) + (n as i64 - 1);
        d.rem_euclid(2) as u64
    };
    let build = |binom: u32, exp: u64, m: u32, n: u32| -> DMonomial {
        if binom % p == 0 {
            return DMonomial::zero();
        }
        let scalar = if sign_parity(m, n) == 1 && p != 2 {
            p - binom % p
        } else {
            binom % p
        };
        DMonomial::new(scalar, BigUint::from(exp), p)
    };
    if n == 1 {
        let binom = small_binom_mod_p_large(s, s - 1, p);
        let exp = (s - 1) as u64 + m as u64 * s as u64;
        build(binom, exp, m, n)
    } else if n <= sbar {
        DMonomial::zero()
    } else if n <= q {
        if m < n - 1 {
            DMonomial::zero()
        } else {
            let binom = small_binom_mod_p_large(s, n - 1 - sbar, p);
            let exp = (n - 1 - sbar) as u64 + (m + 1 - n) as u64 * s as u64;
            build(binom, exp, m, n)
        }
    } else if n == q + 1 {
        if m + 2 < n {
            DMonomial::zero()
        } else {
            let exp = (m + 2 - n) as u64 * s as u64;
            build(1, exp, m, n)
        }
    } else {
        DMonomial::zero()
    }
}

/// `C(m, k) mod p` for arguments that may reach `q > p`.
fn small_binom_mod_p_large(m: u32, k: u32, p: u32) -> u32 {
    lucas_binom(&BigUint::from(m), &BigUint::from(k), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FieldContext;
    use crate::lseries;
    use alloc::vec::Vec;

    fn params(p: u32, e: u32, s: u32, a_idx: u32) -> Params {
        let ctx = FieldContext::new(p, e).unwrap();
        let a = crate::fq::FqElem(a_idx as u16);
        Params::new(ctx, s, a).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Pascal triangle mod p, the independent oracle for lucas_binom.
    fn pascal_mod_p(rows: usize, p: u32) -> Vec<Vec<u32>> {
        let mut tri = Vec::with_capacity(rows);
        for m in 0..rows {
            let mut row = alloc::vec![0u32; m + 1];
            row[0] = 1;
            row[m] = 1;
            for k in 1..m {
                let prev: &Vec<u32> = &tri[m - 1];
                row[k] = (prev[k - 1] + prev[k]) % p;
            }
            tri.push(row);
        }
        tri
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binom(&big(8), &big(5), 3), 2);
        assert_eq!(lucas_binom(&big(12345), &BigUint::zero(), 7), 1);
        assert_eq!(lucas_binom(&big(80), &big(77), 3), 2);
        assert_eq!(lucas_binom(&big(5), &big(7), 3), 0);
    }

    #[test]
    fn lucas_matches_pascal() {
        for p in [2u32, 3, 5, 7] {
            let tri = pascal_mod_p(301, p);
            for m in 0..301usize {
                for k in 0..=m {
                    assert_eq!(
                        lucas_binom(&big(m as u64), &big(k as u64), p),
                        tri[m][k],
                        "C({m},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn lucas_base_q_digitwise_agrees_for_prime_q() {
        // digitwise evaluation in base q with q = p coincides with the
        // base-p implementation by construction; spot-check it explicitly
        for p in [3u32, 5] {
            for m in 0..200u64 {
                for k in 0..=m {
                    let md = qwords::digits_le(&big(m), p);
                    let kd = qwords::digits_le(&big(k), p);
                    let mut acc = 1u32;
                    for (i, &kdig) in kd.iter().enumerate() {
                        let mdig = md.get(i).copied().unwrap_or(0);
                        acc = acc * small_binom_mod_p(mdig, kdig, p) % p;
                    }
                    assert_eq!(acc, lucas_binom(&big(m), &big(k), p));
                }
            }
        }
    }

    #[test]
    fn d_value_table_cells() {
        let p = params(3, 1, 2, 0);
        // cell (1,1): 2(-a)^5, printed with reduced exponent as 2(-a)^3
        let d = d_value(2, 1, 1, &p).unwrap();
        assert_eq!(d.scalar(), 2);
        assert_eq!(d.exponent(), &big(5));
        assert!(d.semantic_eq(&DMonomial::from_signed(2, big(3), 3), 3));
        // cell (2,4): -1
        let d = d_value(2, 2, 4, &p).unwrap();
        assert_eq!(d, DMonomial::from_signed(-1, BigUint::zero(), 3));
        // cell (2,3): -2(-a)
        let d = d_value(2, 2, 3, &p).unwrap();
        assert!(d.semantic_eq(&DMonomial::from_signed(-2, big(1), 3), 3));
        // beyond the chain
        assert!(matches!(
            d_value(2, 1, 3, &p),
            Err(Error::ChainExhausted { n: 3, len: 2 })
        ));
        assert!(d_total(2, 1, 3, &p).is_zero());
    }

    #[test]
    fn d_eval_examples() {
        let p0 = params(3, 1, 2, 0);
        assert_eq!(d_eval(&DMonomial::zero(), &p0), p0.ctx().zero());
        // (-1) * (-a)^0 at a = 0 is -1 (0^0 = 1)
        let minus_one = DMonomial::from_signed(-1, BigUint::zero(), 3);
        assert_eq!(d_eval(&minus_one, &p0), p0.ctx().from_prime_scalar(2));
        // 2 * (-a)^5 at a = 1: 2 * (-1)^5 = -2 = 1
        let p1 = params(3, 1, 2, 1);
        let m = DMonomial::new(2, big(5), 3);
        assert_eq!(d_eval(&m, &p1), p1.ctx().one());
    }

    #[test]
    fn semantic_equality_rules() {
        let q = 3;
        let a = DMonomial::new(2, big(5), 3);
        let b = DMonomial::new(2, big(3), 3);
        let c = DMonomial::new(2, BigUint::zero(), 3);
        let d = DMonomial::new(2, big(2), 3);
        assert!(a.semantic_eq(&b, q));
        assert!(!a.semantic_eq(&c, q));
        // 0 and 2 are congruent mod q-1 but only one vanishes at a = 0
        assert!(!c.semantic_eq(&d, q));
        assert!(DMonomial::zero().semantic_eq(&DMonomial::zero(), q));
    }

    #[test]
    fn render_styles() {
        let q = 3;
        assert_eq!(DMonomial::zero().render(q), "0");
        assert_eq!(DMonomial::new(1, BigUint::zero(), 3).render(q), "1");
        assert_eq!(DMonomial::new(2, BigUint::zero(), 3).render(q), "2");
        assert_eq!(DMonomial::new(2, big(3), 3).render(q), "2(-a)^3");
        assert_eq!(DMonomial::new(1, big(2), 3).render(q), "(-a)^2");
        assert_eq!(DMonomial::new(2, big(1), 3).render(q), "2(-a)");
        // raw exponent 5 > q reduces to the representative 1 in [1, q-1]
        assert_eq!(DMonomial::new(2, big(5), 3).render(q), "2(-a)");
        // congruent to 0 mod q-1 reduces to q-1, not 0
        assert_eq!(DMonomial::new(1, big(6), 3).render(q), "(-a)^2");
    }

    #[test]
    fn u_at_examples() {
        let p0 = params(3, 1, 2, 0);
        assert_eq!(u_at(&BigUint::zero(), &p0), p0.ctx().one());
        assert_eq!(u_at(&big(36), &p0), p0.ctx().from_prime_scalar(2));
        let p2 = params(3, 1, 2, 2);
        for m in 1..=6u32 {
            let b = qwords::block_value(1, m, 2, 3);
            assert_eq!(u_at(&b, &p2), p2.ctx().zero(), "m = {m}");
        }
    }

    #[test]
    fn u_matches_series_for_all_b() {
        // the decomposition route equals the series route on every index,
        // not only on the block values
        for (p_, e, s_vals) in [
            (3u32, 1u32, alloc::vec![2u32]),
            (5, 1, alloc::vec![2, 3, 4]),
            (2, 2, alloc::vec![2, 3]),
        ] {
            let ctx = FieldContext::new(p_, e).unwrap();
            let prec = (ctx.q() as usize).pow(3) + 40;
            for s in s_vals {
                for a in ctx.elements() {
                    let pr = Params::new(ctx.clone(), s, a).unwrap();
                    let st = lseries::star(&pr, prec);
                    for b in 0..prec {
                        assert_eq!(
                            u_at(&big(b as u64), &pr),
                            st.coeff(b).unwrap(),
                            "q = {}, s = {s}, a = {a:?}, b = {b}",
                            ctx.q()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn d2_closed_examples() {
        let p = params(3, 1, 2, 0);
        assert_eq!(
            d2_closed(1, 1, &p),
            DMonomial::from_signed(2, big(3), 3)
        );
        assert_eq!(
            d2_closed(2, 2, &p),
            DMonomial::from_signed(-1, big(2), 3)
        );
        let p5 = params(5, 1, 3, 0);
        assert!(d2_closed(1, 2, &p5).is_zero());
    }

    #[test]
    fn d2_closed_matches_d_value() {
        for (p_, e, s_vals) in [
            (3u32, 1u32, alloc::vec![2u32]),
            (2, 2, alloc::vec![2, 3]),
            (5, 1, alloc::vec![2, 3, 4]),
        ] {
            let ctx = FieldContext::new(p_, e).unwrap();
            let q = ctx.q();
            for s in s_vals {
                let pr = Params::new(ctx.clone(), s, ctx.zero()).unwrap();
                for m in 1..=12u32 {
                    for n in 1..=q + 3 {
                        let closed = d2_closed(m, n, &pr);
                        let computed = d_total(2, m, n as usize, &pr);
                        assert!(
                            closed.semantic_eq(&computed, q),
                            "q = {q}, s = {s}, m = {m}, n = {n}: closed {closed:?} vs {computed:?}"
                        );
                        // and evaluated equality at every a
                        for a in ctx.elements() {
                            let pa = Params::new(ctx.clone(), s, a).unwrap();
                            assert_eq!(
                                d_eval(&closed, &pa),
                                d_eval(&computed, &pa),
                                "q = {q}, s = {s}, m = {m}, n = {n}, a = {a:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_between_consecutive_rows() {
        // d(j, m+1, n) = (-1)^(s-1) (-a)^s d(j, m, n) evaluated at every a
        for (p_, e, s_vals) in [(3u32, 1u32, alloc::vec![2u32]), (5, 1, alloc::vec![2, 3, 4])] {
            let ctx = FieldContext::new(p_, e).unwrap();
            let q = ctx.q();
            for s in s_vals.clone() {
                for a in ctx.elements() {
                    let pr = Params::new(ctx.clone(), s, a).unwrap();
                    for j in 2..=3u32 {
                        let n_hi = q.pow(j - 1) + 1;
                        for n in 1..=n_hi.min(8) {
                            for m in n..=n + 4 {
                                let lhs = d_eval(&d_total(j, m + 1, n as usize, &pr), &pr);
                                let factor = pr.ctx().mul(
                                    pr.ctx().minus_one_pow((s - 1) as u64),
                                    pr.ctx().pow_int(
                                        pr.ctx().neg(pr.a()),
                                        &BigUint::from(s),
                                    ),
                                );
                                let rhs = pr
                                    .ctx()
                                    .mul(factor, d_eval(&d_total(j, m, n as usize, &pr), &pr));
                                assert_eq!(lhs, rhs, "q={q} s={s} j={j} m={m} n={n} a={a:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}
