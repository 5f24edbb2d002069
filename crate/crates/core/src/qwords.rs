//! Base-`q` digit words and the integers they denote.
//!
//! A word is a digit sequence over `{0, ..., q-1}`, most-significant digit
//! first. Words are formal: the empty word denotes 0 and leading zeros are
//! not stripped on input. The repdigit blocks `x^m 0^j` (digit `x` repeated
//! `m` times, then `j` zeros) are the backbone of every table in this crate.

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Error;

/// Digit sequence, most-significant digit first. May be empty (denotes 0).
pub type Word = Vec<u32>;

/// Integer value of a word in base `q` (Horner evaluation; empty word is 0).
pub fn word_value(word: &[u32], q: u32) -> Result<BigUint, Error> {
    let mut acc = BigUint::zero();
    for &d in word {
        if d >= q {
            return Err(Error::DigitOutOfRange { digit: d, base: q });
        }
        acc = acc * q + d;
    }
    Ok(acc)
}

/// Base-`q` digits of `n`, least-significant first. Zero yields no digits.
pub fn digits_le(n: &BigUint, q: u32) -> Word {
    if n.is_zero() {
        return Vec::new();
    }
    if q <= 256 {
        return n.to_radix_le(q).into_iter().map(|x| x as u32).collect();
    }
    let mut digits = Vec::new();
    let mut rest = n.clone();
    let base = BigUint::from(q);
    while !rest.is_zero() {
        let r = &rest % &base;
        digits.push(r.to_u32_digits().first().copied().unwrap_or(0));
        rest /= &base;
    }
    digits
}

/// Base-`q` digits of `n`, most-significant first, no leading zeros.
/// Zero yields the empty word.
pub fn digits_of(n: &BigUint, q: u32) -> Word {
    let mut d = digits_le(n, q);
    d.reverse();
    d
}

/// The repunit `(q^m - 1)/(q - 1)`, i.e. the value of the word `1^m`.
pub fn repunit(q: u32, m: u32) -> BigUint {
    let mut acc = BigUint::zero();
    for _ in 0..m {
        acc = acc * q + 1u32;
    }
    acc
}

/// Value of the block word `x^m 0^j`, i.e. `x * (q^m - 1)/(q - 1) * q^j`.
pub fn block_value(x: u32, m: u32, j: u32, q: u32) -> BigUint {
    let mut acc = repunit(q, m) * x;
    for _ in 0..j {
        acc *= q;
    }
    acc
}

/// Renders `n` as a base-`q` digit string, the way the tables print values:
/// zero is `"0"`, digits are concatenated for `q <= 10` and dot-separated
/// otherwise.
pub fn digit_string(n: &BigUint, q: u32) -> String {
    use core::fmt::Write;
    if n.is_zero() {
        return String::from("0");
    }
    let digits = digits_of(n, q);
    let mut s = String::new();
    if q <= 10 {
        for d in digits {
            let _ = write!(s, "{d}");
        }
    } else {
        for (i, d) in digits.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            let _ = write!(s, "{d}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn word_value_examples() {
        assert_eq!(word_value(&[1, 1, 0, 0], 3).unwrap(), BigUint::from(36u32));
        assert_eq!(word_value(&[], 3).unwrap(), BigUint::zero());
        assert_eq!(word_value(&[1, 0, 0, 0], 3).unwrap(), BigUint::from(27u32));
        assert!(matches!(
            word_value(&[3], 3),
            Err(Error::DigitOutOfRange { digit: 3, base: 3 })
        ));
    }

    #[test]
    fn block_value_examples() {
        assert_eq!(block_value(1, 2, 2, 3), BigUint::from(36u32));
        assert_eq!(block_value(1, 0, 5, 3), BigUint::zero());
        // [222]_3 = 26
        assert_eq!(block_value(2, 3, 0, 3), BigUint::from(26u32));
    }

    #[test]
    fn digits_of_examples() {
        assert_eq!(digits_of(&BigUint::from(10u32), 3), vec![1, 0, 1]);
        assert_eq!(digits_of(&BigUint::zero(), 3), Vec::<u32>::new());
        assert_eq!(digits_of(&BigUint::from(117u32), 3), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn digit_strings() {
        assert_eq!(digit_string(&BigUint::zero(), 3), "0");
        assert_eq!(digit_string(&BigUint::from(36u32), 3), "1100");
        assert_eq!(digit_string(&BigUint::from(157u32), 12), "1.1.1");
    }

    #[test]
    fn block_value_is_word_value_of_block_word() {
        for q in [3u32, 5] {
            for x in 0..q {
                for m in 0..=12u32 {
                    for j in 0..=12u32 {
                        let mut w: Word = vec![x; m as usize];
                        w.extend(core::iter::repeat(0).take(j as usize));
                        assert_eq!(block_value(x, m, j, q), word_value(&w, q).unwrap());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn digits_roundtrip(n in 0u128..u128::MAX, q in 2u32..40) {
            let n = BigUint::from(n);
            let w = digits_of(&n, q);
            prop_assert!(w.first() != Some(&0));
            prop_assert_eq!(word_value(&w, q).unwrap(), n);
        }
    }
}
