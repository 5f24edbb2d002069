//! Chain decomposition of an integer into parts `q^l - 1` plus an interval
//! remainder, and the cell tables built from it.
//!
//! A nonnegative integer `b` may be written as
//! `b = r + sum_{j in J} (q^j - 1)` where `J` is a finite set of indices all
//! strictly above `k`, and `r` lies in the interval
//! `[[sbar^k]_q, [1^k 0]_q]`. The chain procedure enumerates all such
//! decompositions: it repeatedly subtracts the largest possible part
//! `q^l - 1`, stopping as soon as the remainder could never complete a
//! decomposition, and records which chain elements land in one of the
//! pairwise disjoint intervals.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::lseries::Params;
use crate::qwords;

/// Interval and part ladders for a fixed `(q, sbar)`, precomputed up to a
/// bound so chain steps can binary-search instead of recomputing powers.
struct Ladders {
    /// `q^l - 1` for `l = 1, 2, ...`
    parts: Vec<BigUint>,
    /// interval lower ends `[sbar^l]_q` for `l = 0, 1, ...`
    lows: Vec<BigUint>,
    /// interval upper ends `[1^l 0]_q` for `l = 0, 1, ...`
    highs: Vec<BigUint>,
}

impl Ladders {
    fn up_to(bound: &BigUint, q: u32, sbar: u32) -> Ladders {
        let mut parts = Vec::new();
        let mut qpow = BigUint::from(q);
        loop {
            let part = &qpow - 1u32;
            if &part > bound {
                break;
            }
            parts.push(part);
            qpow *= q;
        }
        let mut lows = Vec::new();
        let mut highs = Vec::new();
        let mut rep = BigUint::zero(); // [1^l]_q
        loop {
            let low = &rep * sbar;
            let done = &low > bound;
            lows.push(low);
            highs.push(&rep * q);
            if done {
                break;
            }
            rep = rep * q + 1u32;
        }
        Ladders { parts, lows, highs }
    }

    /// Largest `l >= 1` with `q^l - 1 <= b`, if any.
    fn max_l(&self, b: &BigUint) -> Option<u32> {
        // parts is strictly increasing
        let n = self.parts.partition_point(|part| part <= b);
        if n == 0 {
            None
        } else {
            Some(n as u32)
        }
    }

    /// The unique `l >= 0` with `[sbar^l]_q <= b <= [1^l 0]_q`, if any.
    fn interval_index(&self, b: &BigUint) -> Option<u32> {
        // lows is strictly increasing (sbar >= 1), intervals are disjoint
        let n = self.lows.partition_point(|low| low <= b);
        if n == 0 {
            return None;
        }
        let l = n - 1;
        if b <= &self.highs[l] {
            Some(l as u32)
        } else {
            None
        }
    }
}

/// The chain produced for one input `b`, together with the interval data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Chain `b_1 > b_2 > ... > b_t`, with `b_1 = b`.
    chain: Vec<BigUint>,
    /// `l_i` for `i = 1..t-1`: `b_{i+1} = b_i - (q^{l_i} - 1)`.
    lvals: Vec<u32>,
    /// Interval index of each chain element, where one exists.
    kvals: Vec<Option<u32>>,
    /// Offset `b_i - [sbar^k]_q` of each in-interval chain element.
    cvals: Vec<Option<BigUint>>,
}

impl Decomposition {
    pub fn b(&self) -> &BigUint {
        &self.chain[0]
    }

    pub fn chain(&self) -> &[BigUint] {
        &self.chain
    }

    pub fn lvals(&self) -> &[u32] {
        &self.lvals
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    /// A chain always holds at least its input.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interval index of chain element `n` (1-based), if the element lies in
    /// an interval.
    pub fn k_at(&self, n: usize) -> Option<u32> {
        self.kvals.get(n - 1).copied().flatten()
    }

    /// Offset `b_n - [sbar^k]_q` of chain element `n` (1-based), if defined.
    pub fn c_at(&self, n: usize) -> Option<&BigUint> {
        self.cvals.get(n - 1).and_then(|c| c.as_ref())
    }

    /// The chain positions that yield decompositions: 1-based index,
    /// interval index and offset of each in-interval element.
    pub fn members(&self) -> impl Iterator<Item = (usize, u32, &BigUint)> + '_ {
        self.kvals.iter().enumerate().filter_map(|(i, k)| {
            k.map(|k| (i + 1, k, self.cvals[i].as_ref().expect("offset set with k")))
        })
    }

    pub fn index_set(&self) -> BTreeSet<usize> {
        self.members().map(|(i, _, _)| i).collect()
    }
}

/// Largest `l >= 1` with `q^l - 1 <= b`; absent when `b < q - 1`.
pub fn max_l(b: &BigUint, q: u32) -> Option<u32> {
    Ladders::up_to(b, q, 1).max_l(b)
}

/// The unique `l >= 0` with `[sbar^l]_q <= b <= [1^l 0]_q`, or absent.
/// `l = 0` matches exactly `b = 0` (empty-word interval).
pub fn interval_index(b: &BigUint, params: &Params) -> Option<u32> {
    Ladders::up_to(b, params.q(), params.sbar()).interval_index(b)
}

/// Interval index of `b`, when `b` lies in an interval.
pub fn k_of(b: &BigUint, params: &Params) -> Option<u32> {
    interval_index(b, params)
}

/// Offset `c = b - [sbar^k]_q`, when `b` lies in interval `k`.
pub fn c_of(b: &BigUint, params: &Params) -> Option<BigUint> {
    interval_index(b, params).map(|k| b - qwords::repunit(params.q(), k) * params.sbar())
}

/// Runs the chain procedure on `b`.
///
/// Each step subtracts the largest part `q^l - 1 <= b_i`; the procedure ends
/// when no part fits, or when the remainder would exceed `[1^(l-1) 0]_q` —
/// such a remainder is larger than any value decomposable with parts below
/// `q^l - 1`, so no further decomposition of `b` can exist.
pub fn decompose(b: &BigUint, params: &Params) -> Decomposition {
    let ladders = Ladders::up_to(b, params.q(), params.sbar());
    let classify = |v: &BigUint| -> (Option<u32>, Option<BigUint>) {
        match ladders.interval_index(v) {
            Some(k) => (Some(k), Some(v - &ladders.lows[k as usize])),
            None => (None, None),
        }
    };
    let mut chain = Vec::new();
    let mut lvals = Vec::new();
    let mut kvals = Vec::new();
    let mut cvals = Vec::new();
    let mut current = b.clone();
    let (k, c) = classify(&current);
    kvals.push(k);
    cvals.push(c);
    loop {
        let l = match ladders.max_l(&current) {
            Some(l) => l,
            None => break,
        };
        let next = &current - &ladders.parts[l as usize - 1];
        // [1^(l-1) 0]_q
        if next > ladders.highs[l as usize - 1] {
            break;
        }
        chain.push(current);
        lvals.push(l);
        let (k, c) = classify(&next);
        kvals.push(k);
        cvals.push(c);
        current = next;
    }
    chain.push(current);
    Decomposition {
        chain,
        lvals,
        kvals,
        cvals,
    }
}

/// One row of a cell table: the chain of `[1^m 0^j]_q`.
#[derive(Clone, Debug)]
pub struct CellRow {
    pub m: u32,
    pub dec: Decomposition,
}

/// The cell table for a fixed `j`: row `m` holds `b_{j,m,n}` at position `n`
/// (1-based). Cells past the chain end are undefined (printed `*`).
#[derive(Clone, Debug)]
pub struct CellTable {
    pub j: u32,
    pub rows: Vec<CellRow>,
}

impl CellTable {
    /// `b_{j,m,n}` if defined.
    pub fn cell(&self, m: u32, n: usize) -> Option<&BigUint> {
        self.rows
            .iter()
            .find(|r| r.m == m)
            .and_then(|r| r.dec.chain().get(n - 1))
    }

    /// Longest chain over all rows.
    pub fn max_chain_len(&self) -> usize {
        self.rows.iter().map(|r| r.dec.len()).max().unwrap_or(0)
    }
}

/// Builds the table of chains for `b = [1^m 0^j]_q`, `m = 1..=m_max`.
pub fn b_table(j: u32, params: &Params, m_max: u32) -> CellTable {
    let q = params.q();
    let rows = (1..=m_max)
        .map(|m| CellRow {
            m,
            dec: decompose(&qwords::block_value(1, m, j, q), params),
        })
        .collect();
    CellTable { j, rows }
}

/// Chain indices `n` of `[1^m 0^j]_q` whose offset `c_{j,m,n}` is defined.
pub fn n_set(j: u32, m: u32, params: &Params) -> BTreeSet<usize> {
    decompose(&qwords::block_value(1, m, j, params.q()), params).index_set()
}
