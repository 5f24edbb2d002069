//! Exact arithmetic in `F_q = GF(p^e)`.
//!
//! Elements are stored packed: the coordinate vector `(c_0, ..., c_{e-1})` in
//! the polynomial basis is encoded as the integer `sum c_i p^i`, which ranges
//! over `[0, q)`. For small fields (`q <= 256`) full add/mul/inv lookup
//! tables are built once per context, so that the series kernels run on plain
//! array indexing.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;

/// Largest supported field size.
pub const MAX_Q: u64 = 1 << 16;

/// Fields up to this size get full lookup tables.
const TABLE_LIMIT: u32 = 256;

/// An element of `F_q`, packed as `sum c_i p^i < q`.
///
/// Elements are plain values; all arithmetic goes through the
/// [`FieldContext`] they belong to. Mixing elements of different contexts is
/// a caller error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(pub(crate) u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// Packed index in `[0, q)`.
    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_q` with `q = p^e`, its modulus, and optional lookup tables.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible modulus of degree `e` over `F_p`, constant term
    /// first, length `e + 1`. For `e = 1` this is `[0, 1]` (i.e. `x`) and is
    /// never consulted.
    modulus: Vec<u32>,
    add_tbl: Vec<u16>,
    mul_tbl: Vec<u16>,
    inv_tbl: Vec<u16>,
}

impl FieldContext {
    /// Builds `F_{p^e}` with a deterministic modulus: the lexicographically
    /// smallest (by coefficient sequence, constant term first) monic
    /// irreducible polynomial of degree `e` over `F_p`.
    pub fn new(p: u32, e: u32) -> Result<FieldContext, Error> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q *= p as u64;
            if q > MAX_Q {
                return Err(Error::FieldTooLarge { p: p as u64, e });
            }
        }
        let q = q as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, e)
        };
        let mut ctx = FieldContext {
            p,
            e,
            q,
            modulus,
            add_tbl: Vec::new(),
            mul_tbl: Vec::new(),
            inv_tbl: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            ctx.build_tables();
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, length `e + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// All field elements in packed order, starting at zero.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as u16).map(FqElem)
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Embeds a prime-field scalar `r` (taken mod `p`) into `F_q`.
    pub fn from_prime_scalar(&self, r: u32) -> FqElem {
        FqElem((r % self.p) as u16)
    }

    /// Builds an element from coordinates in the polynomial basis, constant
    /// coordinate first. Fewer than `e` coordinates are padded with zeros.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem, Error> {
        if coeffs.len() > self.e as usize {
            return Err(Error::BadCoordinates);
        }
        let mut idx: u32 = 0;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(Error::BadCoordinates);
            }
            idx += c * self.p.pow(i as u32);
        }
        Ok(FqElem(idx as u16))
    }

    /// Coordinates of `x` in the polynomial basis, constant first, length `e`.
    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut idx = x.index();
        for _ in 0..self.e {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    fn unpack(&self, x: FqElem, out: &mut [u32]) {
        let mut idx = x.index();
        for slot in out.iter_mut().take(self.e as usize) {
            *slot = idx % self.p;
            idx /= self.p;
        }
    }

    fn pack(&self, coords: &[u32]) -> FqElem {
        let mut idx: u32 = 0;
        for i in (0..self.e as usize).rev() {
            idx = idx * self.p + coords[i] % self.p;
        }
        FqElem(idx as u16)
    }

    fn add_direct(&self, x: FqElem, y: FqElem) -> FqElem {
        let mut a = [0u32; 16];
        let mut b = [0u32; 16];
        self.unpack(x, &mut a);
        self.unpack(y, &mut b);
        for i in 0..self.e as usize {
            a[i] = (a[i] + b[i]) % self.p;
        }
        self.pack(&a[..self.e as usize])
    }

    fn mul_direct(&self, x: FqElem, y: FqElem) -> FqElem {
        let e = self.e as usize;
        let mut a = [0u32; 16];
        let mut b = [0u32; 16];
        self.unpack(x, &mut a);
        self.unpack(y, &mut b);
        // Schoolbook product, then reduction by the monic modulus.
        let mut prod = [0u64; 31];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] += a[i] as u64 * b[j] as u64;
            }
        }
        for d in (e..2 * e - 1).rev() {
            let c = prod[d] % self.p as u64;
            if c != 0 {
                // x^d = x^(d-e) * (x^e mod modulus)
                for i in 0..e {
                    let m = self.modulus[i] as u64;
                    if m != 0 {
                        // subtract c * m at position d - e + i
                        prod[d - e + i] += (self.p as u64 - m % self.p as u64) * c;
                    }
                }
            }
            prod[d] = 0;
        }
        let mut out = [0u32; 16];
        for i in 0..e {
            out[i] = (prod[i] % self.p as u64) as u32;
        }
        self.pack(&out[..e])
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for x in 0..q {
            for y in 0..=x {
                let s = self.add_direct(FqElem(x as u16), FqElem(y as u16)).0;
                let m = self.mul_direct(FqElem(x as u16), FqElem(y as u16)).0;
                add[x * q + y] = s;
                add[y * q + x] = s;
                mul[x * q + y] = m;
                mul[y * q + x] = m;
            }
        }
        let mut inv = vec![0u16; q];
        for x in 1..q {
            if inv[x] != 0 {
                continue;
            }
            for y in 1..q {
                if mul[x * q + y] == 1 {
                    inv[x] = y as u16;
                    inv[y] = x as u16;
                    break;
                }
            }
        }
        self.add_tbl = add;
        self.mul_tbl = mul;
        self.inv_tbl = inv;
    }

    #[inline]
    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        if !self.add_tbl.is_empty() {
            FqElem(self.add_tbl[x.0 as usize * self.q as usize + y.0 as usize])
        } else {
            self.add_direct(x, y)
        }
    }

    #[inline]
    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        if !self.mul_tbl.is_empty() {
            FqElem(self.mul_tbl[x.0 as usize * self.q as usize + y.0 as usize])
        } else {
            self.mul_direct(x, y)
        }
    }

    pub fn neg(&self, x: FqElem) -> FqElem {
        let mut a = [0u32; 16];
        self.unpack(x, &mut a);
        for c in a.iter_mut().take(self.e as usize) {
            *c = (self.p - *c) % self.p;
        }
        self.pack(&a[..self.e as usize])
    }

    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    /// Multiplicative inverse. `inv(0)` is an error, never a silent zero.
    pub fn inv(&self, x: FqElem) -> Result<FqElem, Error> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.inv_tbl.is_empty() {
            return Ok(FqElem(self.inv_tbl[x.0 as usize]));
        }
        // x^(q-2) by square-and-multiply; q - 2 fits in u32.
        Ok(self.pow_u64(x, self.q as u64 - 2))
    }

    fn pow_u64(&self, x: FqElem, mut n: u64) -> FqElem {
        let mut base = x;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `x^n` for an arbitrary-precision exponent, with the convention
    /// `0^0 = 1`. For `x != 0` the exponent is reduced mod `q - 1`.
    pub fn pow_int(&self, x: FqElem, n: &BigUint) -> FqElem {
        if x.is_zero() {
            return if n.is_zero() { self.one() } else { self.zero() };
        }
        if n.is_zero() {
            return self.one();
        }
        let ord = BigUint::from(self.q - 1);
        let r = (n % ord).to_u64().expect("reduced exponent fits u64");
        if r == 0 {
            // n is a positive multiple of q - 1, so x^n = 1.
            self.one()
        } else {
            self.pow_u64(x, r)
        }
    }

    /// `(-1)^t` as a field element; in characteristic 2 this is always 1.
    pub fn minus_one_pow(&self, t: u64) -> FqElem {
        if self.p == 2 || t % 2 == 0 {
            self.one()
        } else {
            FqElem((self.p - 1) as u16)
        }
    }
}

/// Convenience constructor matching the CLI surface.
pub fn field_new(p: u32, e: u32) -> Result<FieldContext, Error> {
    FieldContext::new(p, e)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Dense polynomial arithmetic over F_p, used only for the irreducibility
// search at context-construction time.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    // f monic
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let df = f.len() - 1;
    while r.len() > df {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for i in 0..=df {
                let idx = shift + i;
                let sub = (lead as u64 * f[i] as u64) % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += ai as u64 * bj as u64;
        }
    }
    let reduced: Vec<u32> = prod.iter().map(|&c| (c % p as u64) as u32).collect();
    poly_rem(&reduced, f, p)
}

fn poly_powmod(a: &[u32], mut n: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut base = a.to_vec();
    let mut acc = vec![1u32];
    while n > 0 {
        if n & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        n >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        // make y monic for poly_rem
        let lead = *y.last().unwrap();
        if lead != 1 {
            let inv = mod_inv_u32(lead, p);
            for c in y.iter_mut() {
                *c = ((*c as u64 * inv as u64) % p as u64) as u32;
            }
        }
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inv_u32(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p
    let mut base = a as u64 % p as u64;
    let mut n = p as u64 - 2;
    let mut acc = 1u64;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        n >>= 1;
    }
    acc as u32
}

/// `x^(p^d) mod f` by `d` successive Frobenius powers.
fn frobenius_power(d: u32, f: &[u32], p: u32) -> Vec<u32> {
    let mut t = vec![0u32, 1]; // x
    for _ in 0..d {
        t = poly_powmod(&t, p as u64, f, p);
    }
    t
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = (f.len() - 1) as u32;
    // x^(p^e) must equal x mod f
    let mut diff = frobenius_power(e, f, p);
    diff.resize(2.max(diff.len()), 0);
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    // and gcd(f, x^(p^(e/r)) - x) = 1 for every prime r | e
    let mut m = e;
    let mut primes = Vec::new();
    let mut r = 2;
    while r * r <= m {
        if m % r == 0 {
            primes.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for r in primes {
        let mut t = frobenius_power(e / r, f, p);
        t.resize(2.max(t.len()), 0);
        t[1] = (t[1] + p - 1) % p;
        poly_trim(&mut t);
        let g = poly_gcd(f, &t, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest (constant term first) monic irreducible of
/// degree `e` over `F_p`.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let mut coeffs = vec![0u32; e + 1];
    coeffs[e] = 1;
    loop {
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // increment the coefficient sequence (c_0, ..., c_{e-1}) as a
        // base-p counter with c_0 most significant
        let mut i = e;
        loop {
            assert!(i > 0, "no irreducible polynomial found");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn constructors() {
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        let f4 = FieldContext::new(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        // the only monic irreducible quadratic over F_2 is x^2 + x + 1
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f5 = FieldContext::new(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
        let f9 = FieldContext::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]); // x^2 + 1

        assert!(matches!(FieldContext::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(
            FieldContext::new(3, 0),
            Err(Error::ZeroExtensionDegree)
        ));
        assert!(matches!(
            FieldContext::new(2, 17),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn basic_arithmetic() {
        let f3 = FieldContext::new(3, 1).unwrap();
        let two = f3.from_prime_scalar(2);
        assert_eq!(f3.add(two, two), f3.one());
        assert_eq!(f3.inv(two).unwrap(), two);
        assert_eq!(f3.inv(f3.zero()), Err(Error::DivisionByZero));

        // F_4 with basis (1, t), modulus t^2 + t + 1: t * t = t + 1
        let f4 = FieldContext::new(2, 2).unwrap();
        let t = f4.from_coeffs(&[0, 1]).unwrap();
        let t_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.mul(t, t), t_plus_1);
    }

    #[test]
    fn pow_int_examples() {
        let f3 = FieldContext::new(3, 1).unwrap();
        let two = f3.from_prime_scalar(2);
        assert_eq!(f3.pow_int(two, &BigUint::from(77u32)), two);
        assert_eq!(f3.pow_int(f3.zero(), &BigUint::from(5u32)), f3.zero());
        assert_eq!(f3.pow_int(f3.zero(), &BigUint::zero()), f3.one());
        for x in f3.elements() {
            assert_eq!(f3.pow_int(x, &BigUint::zero()), f3.one());
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for (p, e) in [(3, 1), (2, 2), (5, 1), (3, 2)] {
            let ctx = FieldContext::new(p, e).unwrap();
            for x in ctx.elements() {
                let mut acc = ctx.one();
                for n in 0u32..=200 {
                    assert_eq!(
                        ctx.pow_int(x, &BigUint::from(n)),
                        if x.is_zero() && n > 0 { ctx.zero() } else { acc },
                        "x = {x:?}, n = {n}"
                    );
                    acc = ctx.mul(acc, x);
                }
            }
        }
    }

    #[test]
    fn minus_one_pow_examples() {
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(f3.minus_one_pow(3), f3.from_prime_scalar(2));
        assert_eq!(f3.minus_one_pow(4), f3.one());
        let f4 = FieldContext::new(2, 2).unwrap();
        assert_eq!(f4.minus_one_pow(1), f4.one());
    }

    #[test]
    fn frobenius_fixed_points() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (5, 2)] {
            let ctx = FieldContext::new(p, e).unwrap();
            let q = ctx.q();
            for x in ctx.elements() {
                if !x.is_zero() {
                    assert_eq!(ctx.pow_int(x, &BigUint::from(q - 1)), ctx.one());
                }
                assert_eq!(ctx.pow_int(x, &BigUint::from(q)), x);
            }
        }
    }

    /// Independent oracle: coordinate arithmetic done from scratch here,
    /// compared against the context (which may be table-backed).
    fn oracle_add(ctx: &FieldContext, x: FqElem, y: FqElem) -> FqElem {
        let (a, b) = (ctx.coeffs(x), ctx.coeffs(y));
        let coords: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % ctx.p()).collect();
        ctx.from_coeffs(&coords).unwrap()
    }

    fn oracle_mul(ctx: &FieldContext, x: FqElem, y: FqElem) -> FqElem {
        let p = ctx.p() as u64;
        let e = ctx.e() as usize;
        let (a, b) = (ctx.coeffs(x), ctx.coeffs(y));
        let mut prod = vec![0u64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for d in (e..2 * e).rev() {
            let c = prod[d];
            prod[d] = 0;
            if c != 0 {
                for i in 0..e {
                    let m = ctx.modulus()[i] as u64;
                    prod[d - e + i] = (prod[d - e + i] + (p - m % p) * c) % p;
                }
            }
        }
        let coords: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        ctx.from_coeffs(&coords).unwrap()
    }

    #[test]
    fn agrees_with_bruteforce_tables() {
        for (p, e) in [(3, 1), (2, 2), (5, 1), (3, 2), (5, 2), (2, 9)] {
            let ctx = FieldContext::new(p, e).unwrap();
            let q = ctx.q();
            let sample: Vec<FqElem> = if q <= 25 {
                ctx.elements().collect()
            } else {
                (0..q).step_by(7).map(|i| FqElem(i as u16)).collect()
            };
            for &x in &sample {
                for &y in &sample {
                    assert_eq!(ctx.add(x, y), oracle_add(&ctx, x, y));
                    assert_eq!(ctx.mul(x, y), oracle_mul(&ctx, x, y));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms(xi in 0u16..9, yi in 0u16..9, zi in 0u16..9) {
            let ctx = FieldContext::new(3, 2).unwrap();
            let (x, y, z) = (FqElem(xi), FqElem(yi), FqElem(zi));
            prop_assert_eq!(ctx.add(x, y), ctx.add(y, x));
            prop_assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
            prop_assert_eq!(ctx.add(ctx.add(x, y), z), ctx.add(x, ctx.add(y, z)));
            prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
            prop_assert_eq!(ctx.mul(x, ctx.add(y, z)), ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
            prop_assert_eq!(ctx.add(x, ctx.neg(x)), ctx.zero());
            if !x.is_zero() {
                prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.one());
            }
        }

        #[test]
        fn exponent_reduction(xi in 1u16..25, n in 1u64..10_000) {
            let ctx = FieldContext::new(5, 2).unwrap();
            let x = FqElem(xi);
            let reduced = 1 + (n - 1) % (ctx.q() as u64 - 1);
            prop_assert_eq!(
                ctx.pow_int(x, &BigUint::from(n)),
                ctx.pow_int(x, &BigUint::from(reduced))
            );
        }
    }
}
