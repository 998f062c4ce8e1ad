//! Membership predicates over pivot-1 strings.
//!
//! Every function here reads the string in place; none allocate except
//! [`blocks`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bitstring::BinaryString;

/// Longest-Lyndon-prefix scan.
///
/// Returns `Some(p)` when `s` is a prenecklace, where `p` is the length of
/// its longest prefix that is a Lyndon word; `None` as soon as some
/// `b_i < b_{i-p}`.
pub fn necklace_scan(s: &BinaryString) -> Option<usize> {
    let mut p = 1;
    for i in 2..=s.len() {
        match s.bit(i).cmp(&s.bit(i - p)) {
            Ordering::Less => return None,
            Ordering::Greater => p = i,
            Ordering::Equal => {}
        }
    }
    Some(p)
}

pub fn is_prenecklace(s: &BinaryString) -> bool {
    necklace_scan(s).is_some()
}

/// Smallest rotation representative.
pub fn is_necklace(s: &BinaryString) -> bool {
    necklace_scan(s).is_some_and(|p| s.len().is_multiple_of(p))
}

pub fn is_lyndon(s: &BinaryString) -> bool {
    necklace_scan(s) == Some(s.len())
}

/// Number of index pairs `i < j` with `b_i = 1` and `b_j = 0`.
pub fn inversions(s: &BinaryString) -> u64 {
    let mut ones = 0u64;
    let mut count = 0u64;
    for b in s.iter() {
        if b {
            ones += 1;
        } else {
            count += ones;
        }
    }
    count
}

/// Minimum number of arbitrary swaps taking `s` to `0^(n-w) 1^w`: the ones
/// sitting among the first `n - w` positions.
pub fn transpositions(s: &BinaryString) -> usize {
    let zeros = s.len() - s.weight();
    if zeros == 0 {
        return 0;
    }
    s.weight_between(1, zeros)
}

/// Lexicographic comparison of `s` against its reversal, optionally
/// complemented.
pub fn compare_with_reversal(s: &BinaryString, complemented: bool) -> Ordering {
    let n = s.len();
    for i in 1..=n {
        let a = s.bit(i);
        let b = s.bit(n + 1 - i) ^ complemented;
        match a.cmp(&b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// True when `s` contains a 1 followed by at least `t` zeros.
pub fn contains_one_then_zeros(s: &BinaryString, t: usize) -> bool {
    let mut seen_one = false;
    let mut run = 0;
    for b in s.iter() {
        if b {
            seen_one = true;
            run = 0;
        } else if seen_one {
            run += 1;
            if run >= t {
                return true;
            }
        }
    }
    false
}

/// True when `s` starts with `1` followed by `gamma`.
pub fn has_prefix_one_then(s: &BinaryString, gamma: &[bool]) -> bool {
    if gamma.len() + 1 > s.len() || !s.bit(1) {
        return false;
    }
    gamma.iter().enumerate().all(|(k, &g)| s.bit(k + 2) == g)
}

/// No length-`l` substring has more zeros than the length-`l` prefix.
///
/// Quadratic: for each window length the prefix-sum differences are
/// scanned once.
pub fn is_prefix_normal_zero(s: &BinaryString) -> bool {
    let n = s.len();
    let mut zeros = Vec::with_capacity(n + 1);
    zeros.push(0usize);
    for b in s.iter() {
        let last = *zeros.last().unwrap();
        zeros.push(last + usize::from(!b));
    }
    for len in 1..n {
        let prefix = zeros[len];
        for start in 1..=n - len {
            if zeros[start + len] - zeros[start] > prefix {
                return false;
            }
        }
    }
    true
}

/// A maximal `0^s 1^t` factor.
///
/// Blocks are ordered as the strings `0^s 1^t` they spell, so more leading
/// zeros is smaller, and with equal zeros fewer ones is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    /// Zero-run length.
    pub s: usize,
    /// One-run length.
    pub t: usize,
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.s.cmp(&other.s) {
            Ordering::Equal => self.t.cmp(&other.t),
            // The block with fewer zeros shows a 1 first, unless it ends.
            Ordering::Less if self.t == 0 => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Greater if other.t == 0 => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
        }
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Decomposition into maximal `0^*1^*` blocks, leftmost block first.
pub fn blocks(s: &BinaryString) -> Vec<Block> {
    let mut out = Vec::new();
    let mut cur = Block { s: 0, t: 0 };
    for b in s.iter() {
        if b {
            cur.t += 1;
        } else {
            if cur.t > 0 {
                out.push(cur);
                cur = Block { s: 0, t: 0 };
            }
            cur.s += 1;
        }
    }
    out.push(cur);
    out
}

/// The leftmost block is no larger than any other block.
pub fn is_pseudo_necklace(s: &BinaryString) -> bool {
    let bl = blocks(s);
    bl.iter().skip(1).all(|b| bl[0] <= *b)
}

/// Every prefix has at most `(k - 1) * up` occurrences of the "down" symbol,
/// where `up` counts occurrences of `up_bit`.
pub fn balanced_prefixes(s: &BinaryString, k: usize, up_bit: bool) -> bool {
    let mut up = 0usize;
    let mut down = 0usize;
    for b in s.iter() {
        if b == up_bit {
            up += 1;
        } else {
            down += 1;
            if down > (k - 1) * up {
                return false;
            }
        }
    }
    true
}

/// Complete `k`-ary Dyck word with `1` as the up symbol when `up_bit` is set.
pub fn is_dyck_word(s: &BinaryString, k: usize, up_bit: bool) -> bool {
    let n = s.len();
    if !n.is_multiple_of(k) {
        return false;
    }
    let ups = if up_bit { s.weight() } else { n - s.weight() };
    ups == n / k && balanced_prefixes(s, k, up_bit)
}

/// Subset weight of the ones in `s` with item `i` weighing `weights[i-1]`.
pub fn subset_weight(s: &BinaryString, weights: &[u64]) -> u64 {
    weights
        .iter()
        .enumerate()
        .filter(|(k, _)| s.bit(k + 1))
        .fold(0u64, |acc, (_, &w)| acc.saturating_add(w))
}
