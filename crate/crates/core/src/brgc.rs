//! Binary reflected Gray code order, read left to right.
//!
//! `BRGC(1) = 0, 1` and `BRGC(n) = BRGC(n-1)·0, reverse(BRGC(n-1))·1`, where
//! `·x` appends `x` to the end of every string. Reading each string right to
//! left gives the classic Gray code `i ^ (i >> 1)`.

use crate::bitstring::BinaryString;
use crate::error::{Error, Result};
use crate::listing::Listing;

/// Largest `n` for which [`brgc_list`] materializes the whole order.
pub const MATERIALIZE_LIMIT: usize = 24;

/// True iff `a` precedes `b` in BRGC order.
///
/// With `r` the rightmost position where the strings differ, `a` comes first
/// exactly when `a_r a_{r+1} ... a_n` has even weight.
pub fn brgc_precedes(a: &BinaryString, b: &BinaryString) -> Result<bool> {
    let r = a.rightmost_difference(b)?.ok_or(Error::IdenticalStrings)?;
    Ok(a.weight_between(r, a.len()).is_multiple_of(2))
}

/// The `2^n` strings of length `n` in BRGC order, built by the reflect-and-
/// append recursion. Only available for `n <= MATERIALIZE_LIMIT`; larger
/// orders are streamed with [`brgc_iter`].
pub fn brgc_list(n: usize) -> Result<Listing> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n > MATERIALIZE_LIMIT {
        return Err(Error::EnumerationBound {
            n,
            bound: MATERIALIZE_LIMIT,
        });
    }
    let mut order: Vec<Vec<bool>> = vec![vec![false], vec![true]];
    for _ in 2..=n {
        let mut next = Vec::with_capacity(order.len() * 2);
        for s in &order {
            let mut t = s.clone();
            t.push(false);
            next.push(t);
        }
        for s in order.iter().rev() {
            let mut t = s.clone();
            t.push(true);
            next.push(t);
        }
        order = next;
    }
    let strings = order
        .into_iter()
        .map(BinaryString::from_bits)
        .collect::<Result<Vec<_>>>()?;
    Ok(Listing::new(n, strings, true))
}

/// Streams BRGC order for any `n`.
///
/// From an even-weight string the next one flips position 1; from an
/// odd-weight string it flips the position right of the leftmost 1. The
/// stream ends after `0^(n-1) 1`.
pub fn brgc_iter(n: usize) -> Result<BrgcIter> {
    Ok(BrgcIter {
        current: Some(BinaryString::zeros(n)?),
    })
}

#[derive(Debug, Clone)]
pub struct BrgcIter {
    current: Option<BinaryString>,
}

impl Iterator for BrgcIter {
    type Item = BinaryString;

    fn next(&mut self) -> Option<BinaryString> {
        let out = self.current.take()?;
        if !out.is_last_unit() {
            let mut next = out.clone();
            if next.weight() % 2 == 0 {
                next.toggle_unchecked(1);
            } else {
                next.toggle_unchecked(next.leftmost_one() + 1);
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Word-level BRGC for `n <= 64`: the `i`-th string is the integer Gray code
/// `i ^ (i >> 1)` with bit `j - 1` at position `j`.
pub fn brgc_words(n: usize) -> Result<impl Iterator<Item = u64>> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n > 64 {
        return Err(Error::EnumerationBound { n, bound: 64 });
    }
    let count: u128 = 1u128 << n;
    Ok((0..count).map(|i| {
        let i = i as u64;
        i ^ (i >> 1)
    }))
}
