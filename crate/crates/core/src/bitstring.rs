//! Fixed-length binary strings with 1-based positions.
//!
//! Position 1 is the leftmost character as written, so `"0011"` has its
//! leftmost one at position 3. Bits are packed into `u64` words; strings of
//! length at most 64 occupy a single word and can be converted to and from
//! integers with [`BinaryString::from_u64`] / [`BinaryString::to_u64`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A binary string `b1 b2 ... bn` with its weight and leftmost-one position
/// cached.
///
/// Every mutation keeps the caches in step with the bits; the cached values
/// always equal a from-scratch recomputation (see
/// [`BinaryString::caches_consistent`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryString {
    len: usize,
    words: Vec<u64>,
    weight: usize,
    ell1: usize,
}

impl BinaryString {
    /// The all-zeros string `0^n`.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        Ok(BinaryString {
            len: n,
            words: vec![0; n.div_ceil(WORD)],
            weight: 0,
            ell1: n + 1,
        })
    }

    /// The all-ones string `1^n`.
    pub fn ones(n: usize) -> Result<Self> {
        let mut s = Self::zeros(n)?;
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_padding();
        s.recompute_caches();
        Ok(s)
    }

    /// Builds a string from bits listed left to right.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut s = Self::zeros(bits.len())?;
        for (idx, &b) in bits.iter().enumerate() {
            if b {
                s.words[idx / WORD] |= 1 << (idx % WORD);
            }
        }
        s.recompute_caches();
        Ok(s)
    }

    /// Integer view for `n <= 64`: bit `j - 1` of `value` is position `j`.
    pub fn from_u64(value: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if n > WORD {
            return Err(Error::LengthMismatch {
                left: n,
                right: WORD,
            });
        }
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let mut s = Self::zeros(n)?;
        s.words[0] = value & mask;
        s.recompute_caches();
        Ok(s)
    }

    /// Inverse of [`BinaryString::from_u64`]; `None` when `n > 64`.
    pub fn to_u64(&self) -> Option<u64> {
        (self.len <= WORD).then(|| self.words[0])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; strings have positive length.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Position of the leftmost 1, or `n + 1` for `0^n`.
    pub fn leftmost_one(&self) -> usize {
        self.ell1
    }

    /// Position of the leftmost 0, or `n + 1` for `1^n`.
    pub fn leftmost_zero(&self) -> usize {
        for (wi, &w) in self.words.iter().enumerate() {
            let mut inv = !w;
            if wi == self.words.len() - 1 {
                inv &= self.last_word_mask();
            }
            if inv != 0 {
                return wi * WORD + inv.trailing_zeros() as usize + 1;
            }
        }
        self.len + 1
    }

    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }

    /// True for `0^(n-1) 1`.
    pub fn is_last_unit(&self) -> bool {
        self.weight == 1 && self.ell1 == self.len
    }

    /// Bit at 1-based position `i`.
    ///
    /// Panics when `i` is outside `1..=n`; use [`BinaryString::get`] for a
    /// checked lookup.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "position {i} out of range");
        let idx = i - 1;
        (self.words[idx / WORD] >> (idx % WORD)) & 1 == 1
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i >= 1 && i <= self.len).then(|| self.bit(i))
    }

    /// Bits from position 1 to position n.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        (0..self.len).map(move |i| self.bit(i + 1))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Complements bit `i` in place, maintaining the caches.
    pub fn toggle(&mut self, i: usize) -> Result<()> {
        self.check(i)?;
        self.toggle_unchecked(i);
        Ok(())
    }

    /// Sets bit `i` in place, maintaining the caches.
    pub fn set(&mut self, i: usize, value: bool) -> Result<()> {
        self.check(i)?;
        if self.bit(i) != value {
            self.toggle_unchecked(i);
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn toggle_unchecked(&mut self, i: usize) {
        let idx = i - 1;
        let word = &mut self.words[idx / WORD];
        *word ^= 1 << (idx % WORD);
        if (*word >> (idx % WORD)) & 1 == 1 {
            self.weight += 1;
            if i < self.ell1 {
                self.ell1 = i;
            }
        } else {
            self.weight -= 1;
            if i == self.ell1 {
                self.ell1 = self.first_one_from(i);
            }
        }
    }

    /// Copy with bit `i` complemented.
    pub fn flip(&self, i: usize) -> Result<Self> {
        let mut s = self.clone();
        s.toggle(i)?;
        Ok(s)
    }

    /// Copy with bits `i < j` both complemented.
    pub fn flip2(&self, i: usize, j: usize) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut s = self.clone();
        s.toggle_unchecked(i);
        s.toggle_unchecked(j);
        Ok(s)
    }

    /// Copy with bits `i < j` exchanged.
    pub fn swap(&self, i: usize, j: usize) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut s = self.clone();
        if s.bit(i) != s.bit(j) {
            s.toggle_unchecked(i);
            s.toggle_unchecked(j);
        }
        Ok(s)
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.clear_padding();
        s.recompute_caches();
        s
    }

    pub fn reverse(&self) -> Self {
        let mut s = BinaryString::zeros(self.len).expect("positive length");
        for i in 1..=self.len {
            if self.bit(i) {
                let idx = self.len - i;
                s.words[idx / WORD] |= 1 << (idx % WORD);
            }
        }
        s.weight = self.weight;
        s.ell1 = s.first_one_from(1);
        s
    }

    /// Rotation starting at position `k + 1`: `b_{k+1} ... b_n b_1 ... b_k`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let k = k % self.len;
        BinaryString::from_bits((0..self.len).map(|j| self.bit((j + k) % self.len + 1)))
            .expect("positive length")
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BinaryString) -> Self {
        BinaryString::from_bits(self.iter().chain(other.iter())).expect("positive length")
    }

    /// Lexicographic comparison of two equal-length strings.
    pub fn lex_compare(&self, other: &BinaryString) -> Result<Ordering> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self.lex_cmp_unchecked(other))
    }

    pub(crate) fn lex_cmp_unchecked(&self, other: &BinaryString) -> Ordering {
        for (&a, &b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                // The lowest set bit of the difference is the leftmost
                // differing position within this word.
                let low = diff & diff.wrapping_neg();
                return if a & low == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Rightmost position where the two strings differ, if any.
    pub fn rightmost_difference(&self, other: &BinaryString) -> Result<Option<usize>> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        for wi in (0..self.words.len()).rev() {
            let diff = self.words[wi] ^ other.words[wi];
            if diff != 0 {
                return Ok(Some(wi * WORD + (WORD - diff.leading_zeros() as usize)));
            }
        }
        Ok(None)
    }

    /// Number of positions where the strings differ.
    pub fn hamming(&self, other: &BinaryString) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Positions where the strings differ, in increasing order.
    pub fn differing_positions(&self, other: &BinaryString) -> Result<Vec<usize>> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok((1..=self.len)
            .filter(|&i| self.bit(i) != other.bit(i))
            .collect())
    }

    /// Number of ones among positions `from..=to`.
    pub fn weight_between(&self, from: usize, to: usize) -> usize {
        (from..=to.min(self.len)).filter(|&i| self.bit(i)).count()
    }

    /// Recomputes weight and leftmost-one by a full scan.
    pub fn recompute_caches(&mut self) {
        self.weight = self.words.iter().map(|w| w.count_ones() as usize).sum();
        self.ell1 = self.first_one_from(1);
    }

    /// True when the cached weight and leftmost-one agree with a rescan.
    pub fn caches_consistent(&self) -> bool {
        let weight = (1..=self.len).filter(|&i| self.bit(i)).count();
        let ell1 = (1..=self.len)
            .find(|&i| self.bit(i))
            .unwrap_or(self.len + 1);
        weight == self.weight && ell1 == self.ell1
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len {
            return Err(Error::PositionOutOfRange {
                position: i,
                len: self.len,
            });
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        if i >= j {
            return Err(Error::PositionOrder {
                first: i,
                second: j,
            });
        }
        Ok(())
    }

    /// First 1 at a position `>= from`, or `n + 1`.
    fn first_one_from(&self, from: usize) -> usize {
        if from > self.len {
            return self.len + 1;
        }
        let start = from - 1;
        let mut wi = start / WORD;
        let mut word = self.words[wi] & (u64::MAX << (start % WORD));
        loop {
            if word != 0 {
                return wi * WORD + word.trailing_zeros() as usize + 1;
            }
            wi += 1;
            if wi == self.words.len() {
                return self.len + 1;
            }
            word = self.words[wi];
        }
    }

    fn last_word_mask(&self) -> u64 {
        match self.len % WORD {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    fn clear_padding(&mut self) {
        let mask = self.last_word_mask();
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryString({self})")
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<bool>>>()?;
        BinaryString::from_bits(bits)
    }
}

impl Serialize for BinaryString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a string literal, panicking on malformed input. Test and fixture
/// helper.
pub fn bs(s: &str) -> BinaryString {
    s.parse()
        .unwrap_or_else(|e| panic!("bad literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn flip_examples() {
        assert_eq!(bs("0000").flip(1).unwrap(), bs("1000"));
        assert_eq!(bs("001011").flip(4).unwrap(), bs("001111"));
        let a = bs("10110");
        assert_eq!(a.flip(3).unwrap().flip(3).unwrap(), a);
        assert_eq!(
            bs("0000").flip(5),
            Err(Error::PositionOutOfRange {
                position: 5,
                len: 4
            })
        );
        assert!(bs("0000").flip(0).is_err());
    }

    #[test]
    fn flip2_examples() {
        assert_eq!(bs("000000").flip2(5, 6).unwrap(), bs("000011"));
        assert_eq!(bs("010101").flip2(2, 3).unwrap(), bs("001101"));
        let a = bs("110010");
        assert_eq!(a.flip2(1, 4).unwrap().flip2(1, 4).unwrap(), a);
        assert!(matches!(a.flip2(2, 2), Err(Error::PositionOrder { .. })));
        assert!(a.flip2(3, 7).is_err());
    }

    #[test]
    fn swap_examples() {
        assert_eq!(bs("001011").swap(3, 4).unwrap(), bs("000111"));
        assert_eq!(bs("0110").swap(2, 3).unwrap(), bs("0110"));
        let a = bs("100101");
        assert_eq!(a.swap(1, 6).unwrap().swap(1, 6).unwrap(), a);
        assert!(a.swap(0, 2).is_err());
    }

    #[test]
    fn queries() {
        assert_eq!(bs("000101").leftmost_one(), 4);
        assert_eq!(bs("0000").leftmost_one(), 5);
        assert_eq!(bs("1101").leftmost_zero(), 3);
        assert_eq!(bs("1111").leftmost_zero(), 5);
        assert_eq!(bs("10110").weight(), 3);
        assert_eq!(bs("1000").complement().reverse(), bs("1110"));
        assert_eq!(bs("1001").lex_compare(&bs("1010")), Ok(Ordering::Less));
        assert_eq!(bs("1010").lex_compare(&bs("1010")), Ok(Ordering::Equal));
        assert!(bs("101").lex_compare(&bs("1010")).is_err());
        assert!(bs("0001").is_last_unit());
        assert!(!bs("0010").is_last_unit());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(bs("0110").to_string(), "0110");
        assert_eq!("".parse::<BinaryString>(), Err(Error::ZeroLength));
        assert_eq!("01a".parse::<BinaryString>(), Err(Error::InvalidBit('a')));
        let json = serde_json::to_string(&bs("0101")).unwrap();
        assert_eq!(json, "\"0101\"");
        let back: BinaryString = serde_json::from_str(&json).unwrap();
        assert_eq!(back, bs("0101"));
    }

    #[test]
    fn word_boundaries() {
        let mut s = BinaryString::zeros(130).unwrap();
        s.toggle(129).unwrap();
        assert_eq!(s.leftmost_one(), 129);
        s.toggle(64).unwrap();
        s.toggle(65).unwrap();
        assert_eq!(s.leftmost_one(), 64);
        s.toggle(64).unwrap();
        assert_eq!(s.leftmost_one(), 65);
        assert_eq!(s.weight(), 2);
        assert_eq!(s.complement().weight(), 128);
        assert_eq!(BinaryString::ones(130).unwrap().leftmost_zero(), 131);
        assert_eq!(s.reverse().leftmost_one(), 2);
        assert!(s.caches_consistent());
        let t = s.flip(1).unwrap();
        assert_eq!(s.rightmost_difference(&t).unwrap(), Some(1));
        assert_eq!(
            s.rightmost_difference(&s.flip(130).unwrap()).unwrap(),
            Some(130)
        );
        assert_eq!(s.lex_compare(&t).unwrap(), Ordering::Less);
    }

    #[test]
    fn integer_view_roundtrip() {
        let s = BinaryString::from_u64(0b1011, 4).unwrap();
        assert_eq!(s, bs("1101"));
        assert_eq!(s.to_u64(), Some(0b1011));
        assert!(BinaryString::zeros(65).unwrap().to_u64().is_none());
    }

    #[test]
    fn rotation() {
        assert_eq!(bs("0011").rotate_left(1), bs("0110"));
        assert_eq!(bs("0011").rotate_left(4), bs("0011"));
    }

    #[derive(Debug, Clone)]
    enum Edit {
        Flip(usize),
        Flip2(usize, usize),
        Swap(usize, usize),
    }

    fn edit(n: usize) -> impl Strategy<Value = Edit> {
        prop_oneof![
            (1..=n).prop_map(Edit::Flip),
            (1..n, 1..=n).prop_map(move |(i, d)| Edit::Flip2(i, (i + d - 1) % n + 1)),
            (1..n, 1..=n).prop_map(move |(i, d)| Edit::Swap(i, (i + d - 1) % n + 1)),
        ]
    }

    proptest! {
        #[test]
        fn caches_survive_edit_sequences(
            (n, edits) in (2usize..150).prop_flat_map(|n| (Just(n), prop::collection::vec(edit(n), 0..60)))
        ) {
            let mut s = BinaryString::zeros(n).unwrap();
            for e in edits {
                let next = match e {
                    Edit::Flip(i) => s.flip(i),
                    Edit::Flip2(i, j) if i < j => s.flip2(i, j),
                    Edit::Swap(i, j) if i < j => s.swap(i, j),
                    _ => continue,
                };
                s = next.unwrap();
                prop_assert_eq!(s.len(), n);
                prop_assert!(s.caches_consistent());
            }
        }

        #[test]
        fn complement_reverse_involutions(bits in prop::collection::vec(any::<bool>(), 1..100)) {
            let s = BinaryString::from_bits(bits).unwrap();
            prop_assert_eq!(s.complement().complement(), s.clone());
            prop_assert_eq!(s.reverse().reverse(), s.clone());
            prop_assert!(s.complement().caches_consistent());
            prop_assert!(s.reverse().caches_consistent());
        }

        #[test]
        fn lex_matches_char_comparison(a in "[01]{1,90}", b in "[01]{1,90}") {
            let (sa, sb) = (bs(&a), bs(&b));
            if a.len() == b.len() {
                prop_assert_eq!(sa.lex_compare(&sb).unwrap(), a.cmp(&b));
            } else {
                prop_assert!(sa.lex_compare(&sb).is_err());
            }
        }
    }
}
