use serde::{Deserialize, Serialize};

use crate::bitstring::BinaryString;

/// An ordered sequence of distinct length-`n` strings.
///
/// `cyclic` records whether the listing is meant to wrap from its last
/// string back to its first; it does not by itself assert a distance bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Listing {
    pub n: usize,
    pub strings: Vec<BinaryString>,
    pub cyclic: bool,
}

impl Listing {
    pub fn new(n: usize, strings: Vec<BinaryString>, cyclic: bool) -> Self {
        debug_assert!(strings.iter().all(|s| s.len() == n));
        Listing { n, strings, cyclic }
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BinaryString> {
        self.strings.iter()
    }

    /// Canonical text form: one string per line, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.strings.len() * (self.n + 1));
        for s in &self.strings {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    /// True when no string appears twice.
    pub fn all_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.strings.len());
        self.strings.iter().all(|s| seen.insert(s))
    }
}

impl<'a> IntoIterator for &'a Listing {
    type Item = &'a BinaryString;
    type IntoIter = std::slice::Iter<'a, BinaryString>;

    fn into_iter(self) -> Self::IntoIter {
        self.strings.iter()
    }
}
