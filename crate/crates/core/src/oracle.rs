//! Brute-force ground truth.
//!
//! Everything here enumerates the whole of `B(n)` and so is limited to
//! `n <= ENUMERATION_BOUND`. The naive testers re-implement each language
//! definition directly on `0`/`1` text, sharing no code with the fast
//! predicates, and exist for differential testing.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::bitstring::BinaryString;
use crate::brgc::brgc_words;
use crate::engine::{self, check_flip_swap, check_ideal};
use crate::error::{Error, Result};
use crate::languages::{CostClass, Language, LanguageSpec, MembershipTester, Params, Pivot};
use crate::listing::Listing;
use crate::ENUMERATION_BOUND;

/// Largest `n` accepted by [`naive_tester`].
pub const NAIVE_BOUND: usize = 14;

/// Largest `n` accepted by [`prenecklace_by_extension`].
pub const EXTENSION_SEARCH_BOUND: usize = 8;

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n > bound {
        return Err(Error::EnumerationBound { n, bound });
    }
    Ok(())
}

/// BRGC order restricted to the tester's members. The listing is marked
/// cyclic when the origin (after pivot normalization) is a member.
///
/// For a pivot-0 tester the roles of 0 and 1 are interchanged throughout,
/// so the order used is BRGC order with every string complemented.
pub fn filtered_brgc(tester: &MembershipTester) -> Result<Listing> {
    let n = tester.n();
    check_bound(n, ENUMERATION_BOUND)?;
    let pivot = tester.pivot();
    let strings = brgc_words(n)?
        .map(|w| pivot.orient(&BinaryString::from_u64(w, n).expect("n within bound")))
        .filter(|s| tester.accepts(s))
        .collect();
    Ok(Listing::new(n, strings, tester.contains_origin()))
}

/// Hamming distances along a listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrayStats {
    pub len: usize,
    /// `distances[i]` is between entries `i` and `i + 1`.
    pub distances: Vec<usize>,
    pub max_distance: usize,
    /// Last-to-first distance; `None` for fewer than two strings.
    pub wrap_distance: Option<usize>,
    /// Wrap distance at most 2 (trivially true for fewer than two strings).
    pub cyclic: bool,
    pub histogram: BTreeMap<usize, usize>,
}

impl GrayStats {
    pub fn is_two_gray(&self) -> bool {
        self.max_distance <= 2
    }
}

pub fn gray_stats(listing: &Listing) -> GrayStats {
    let s = &listing.strings;
    let distances: Vec<usize> = s
        .windows(2)
        .map(|w| w[0].hamming(&w[1]).expect("equal lengths"))
        .collect();
    let mut histogram = BTreeMap::new();
    for &d in &distances {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let wrap_distance =
        (s.len() >= 2).then(|| s[s.len() - 1].hamming(&s[0]).expect("equal lengths"));
    GrayStats {
        len: s.len(),
        max_distance: distances.iter().copied().max().unwrap_or(0),
        cyclic: wrap_distance.is_none_or(|d| d <= 2),
        wrap_distance,
        distances,
        histogram,
    }
}

// ---- naive definitions over text ----

fn text(s: &BinaryString) -> Vec<u8> {
    s.to_string().into_bytes()
}

fn rotations(s: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (1..s.len()).map(move |r| {
        let mut v = s[r..].to_vec();
        v.extend_from_slice(&s[..r]);
        v
    })
}

pub fn naive_is_necklace(s: &[u8]) -> bool {
    rotations(s).all(|r| s <= r.as_slice())
}

pub fn naive_is_lyndon(s: &[u8]) -> bool {
    rotations(s).all(|r| s < r.as_slice())
}

/// Prefix of some necklace of length at most `2n`, found by trying every
/// extension of length at most `n`.
pub fn prenecklace_by_extension(s: &BinaryString) -> Result<bool> {
    check_bound(s.len(), EXTENSION_SEARCH_BOUND)?;
    let base = text(s);
    for ext_len in 0..=s.len() {
        for w in 0u64..1 << ext_len {
            let mut candidate = base.clone();
            candidate.extend((0..ext_len).map(|j| if w >> j & 1 == 1 { b'1' } else { b'0' }));
            if naive_is_necklace(&candidate) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Every suffix is at least the prefix of the same length.
pub fn naive_is_prenecklace(s: &[u8]) -> bool {
    (1..s.len()).all(|i| s[i..] >= s[..s.len() - i])
}

/// Counts zeros in every window of every length.
pub fn naive_is_prefix_normal_zero(s: &[u8]) -> bool {
    let zeros = |w: &[u8]| w.iter().filter(|&&c| c == b'0').count();
    (1..=s.len()).all(|l| {
        let prefix = zeros(&s[..l]);
        s.windows(l).all(|w| zeros(w) <= prefix)
    })
}

pub fn naive_inversions(s: &[u8]) -> u64 {
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] == b'1' && s[j] == b'0' {
                count += 1;
            }
        }
    }
    count
}

/// Swap distances to `0^(n-w) 1^w` for every string of length `n`, by one
/// breadth-first search per weight over arbitrary transpositions.
pub fn transposition_distances(n: usize) -> Result<HashMap<Vec<u8>, usize>> {
    check_bound(n, NAIVE_BOUND)?;
    let mut dist = HashMap::new();
    for w in 0..=n {
        let mut target = vec![b'0'; n - w];
        target.extend(std::iter::repeat_n(b'1', w));
        dist.insert(target.clone(), 0);
        let mut queue = VecDeque::from([target]);
        while let Some(cur) = queue.pop_front() {
            let d = dist[&cur];
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] != cur[j] {
                        let mut next = cur.clone();
                        next.swap(i, j);
                        if !dist.contains_key(&next) {
                            dist.insert(next.clone(), d + 1);
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    Ok(dist)
}

/// Maximal `0^*1^*` factors as text, leftmost first.
fn naive_blocks(s: &[u8]) -> Vec<&[u8]> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..s.len() {
        if s[i - 1] == b'1' && s[i] == b'0' {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

/// The leftmost block, read as a string, is at most every other block.
pub fn naive_is_pseudo_necklace(s: &[u8]) -> bool {
    let b = naive_blocks(s);
    b.iter().all(|x| b[0] <= *x)
}

/// Complete `k`-ary Dyck word with `1` as the up symbol, by repeatedly
/// cancelling `1 0^(k-1)` factors.
pub fn naive_is_dyck_word(s: &[u8], k: usize) -> bool {
    let mut factor = vec![b'1'];
    factor.extend(std::iter::repeat_n(b'0', k - 1));
    let mut cur = s.to_vec();
    loop {
        if cur.is_empty() {
            return true;
        }
        match cur.windows(k).position(|w| w == factor.as_slice()) {
            Some(i) => {
                cur.drain(i..i + k);
            }
            None => return false,
        }
    }
}

/// Prefix of a `k`-ary Dyck word: the only sensible completion appends
/// down symbols until the counts balance.
pub fn naive_is_dyck_left_factor(s: &[u8], k: usize) -> bool {
    let ups = s.iter().filter(|&&c| c == b'1').count();
    let downs = s.len() - ups;
    if downs > (k - 1) * ups {
        return false;
    }
    let mut completed = s.to_vec();
    completed.extend(std::iter::repeat_n(b'0', (k - 1) * ups - downs));
    naive_is_dyck_word(&completed, k)
}

fn complement_text(s: &[u8]) -> Vec<u8> {
    s.iter()
        .map(|&c| if c == b'0' { b'1' } else { b'0' })
        .collect()
}

type TextPredicate = Arc<dyn Fn(&[u8]) -> bool + Send + Sync>;

/// Definition-literal predicate for a language in its natural orientation.
fn naive_predicate(lang: &Language, n: usize) -> Result<TextPredicate> {
    let ones = |s: &[u8]| s.iter().filter(|&&c| c == b'1').count() as u64;
    Ok(match lang.clone() {
        Language::All => Arc::new(|_| true),
        Language::WeightLe { k } => Arc::new(move |s| ones(s) <= k),
        Language::LexLe { gamma } => {
            let g = text(&gamma);
            Arc::new(move |s| s <= g.as_slice())
        }
        Language::InversionsLe { k } => Arc::new(move |s| naive_inversions(s) <= k),
        Language::TranspositionsLe { k } => {
            let table = transposition_distances(n)?;
            Arc::new(move |s| table[s] as u64 <= k)
        }
        Language::Reversal {
            strict,
            complemented,
        } => Arc::new(move |s| {
            let mut r: Vec<u8> = s.iter().rev().copied().collect();
            if complemented {
                r = complement_text(&r);
            }
            if strict {
                s < r.as_slice()
            } else {
                s <= r.as_slice()
            }
        }),
        Language::ForbiddenRun { t } => {
            let mut pat = vec![b'1'];
            pat.extend(std::iter::repeat_n(b'0', t));
            Arc::new(move |s| !s.windows(pat.len()).any(|w| w == pat.as_slice()))
        }
        Language::ForbiddenPrefix { gamma } => {
            let mut pat = vec![b'1'];
            pat.extend(gamma.iter().map(|&b| if b { b'1' } else { b'0' }));
            Arc::new(move |s| !s.starts_with(&pat))
        }
        Language::PrefixNormal => Arc::new(naive_is_prefix_normal_zero),
        Language::Necklace => Arc::new(naive_is_necklace),
        Language::Lyndon => Arc::new(naive_is_lyndon),
        Language::Prenecklace => Arc::new(naive_is_prenecklace),
        Language::PseudoNecklace => Arc::new(naive_is_pseudo_necklace),
        Language::DyckLeftFactor { k_ary } => {
            Arc::new(move |s| naive_is_dyck_left_factor(s, k_ary))
        }
        Language::DyckWords { k_ary } => Arc::new(move |s| naive_is_dyck_word(s, k_ary)),
        Language::Knapsack { weights, capacity } => {
            let mut sorted = weights;
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            Arc::new(move |s| {
                let total: u128 = s
                    .iter()
                    .zip(&sorted)
                    .filter(|(&c, _)| c == b'1')
                    .map(|(_, &w)| u128::from(w))
                    .sum();
                total <= u128::from(capacity)
            })
        }
    })
}

/// Slow definition-literal tester for `lang` at `n` and `pivot`, for
/// `n <= NAIVE_BOUND`. The opposite pivot is handled the same way as the
/// fast catalog: complemented parameters, then a pivot wrap.
pub fn naive_tester(lang: &Language, n: usize, pivot: Pivot) -> Result<MembershipTester> {
    check_bound(n, NAIVE_BOUND)?;
    let natural = lang.natural_pivot();
    let base = if pivot == natural {
        lang.clone()
    } else {
        lang.counterpart_base(n)?
    };
    // Reject bad parameters exactly as the fast catalog does.
    base.tester(n)?;
    let pred = naive_predicate(&base, n)?;
    let spec = LanguageSpec {
        name: format!("naive:{}", lang.name()),
        n,
        pivot,
        params: Params::default(),
    };
    let wrapped = pivot != natural;
    MembershipTester::from_normalized(
        spec,
        CostClass::Exhaustive,
        Arc::new(move |image: &BinaryString| {
            let mut t = text(image);
            // Back to the requested orientation, then into the base's.
            if (pivot == Pivot::Zero) != wrapped {
                t = complement_text(&t);
            }
            pred(&t)
        }),
    )
}

// ---- verification harness ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub language: String,
    pub n: usize,
    pub pivot: Pivot,
    pub members: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check: `PASS name detail`.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} n={} pivot={} members={}\n",
            self.language, self.n, self.pivot, self.members
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {} {:<10} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        out
    }
}

fn check(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Closure, ideal, oracle equivalence, Gray distance and last-string checks.
pub fn verify(tester: &MembershipTester) -> Result<VerifyReport> {
    let n = tester.n();
    check_bound(n, ENUMERATION_BOUND)?;
    let mut checks = Vec::new();

    let closure = check_flip_swap(tester)?;
    let detail = match closure.counterexamples.first() {
        None => format!("{} members closed", closure.members),
        Some(c) => format!(
            "{} violations, e.g. {} of {} is {}",
            closure.violations, c.operation, c.member, c.image
        ),
    };
    checks.push(check("closure", closure.is_flip_swap(), detail));

    let ideal = check_ideal(tester)?;
    let detail = match ideal.orphans.first() {
        None => "rooted subtree".to_string(),
        Some(o) => format!("{} orphans, e.g. {o}", ideal.orphan_count),
    };
    checks.push(check("ideal", ideal.orphan_count == 0, detail));

    let expected = filtered_brgc(tester)?;
    let generated = engine::generate_listing(tester);
    let (equiv, detail, listing) = match generated {
        Err(e) => (false, format!("generation failed: {e}"), None),
        Ok(l) if l == expected => (true, format!("{} strings match", l.len()), Some(l)),
        Ok(l) => {
            let at = l
                .strings
                .iter()
                .zip(&expected.strings)
                .position(|(a, b)| a != b)
                .unwrap_or(l.len().min(expected.len()));
            (
                false,
                format!(
                    "first mismatch at index {at} (generated {}, expected {})",
                    l.len(),
                    expected.len()
                ),
                Some(l),
            )
        }
    };
    checks.push(check("oracle", equiv, detail));

    match &listing {
        Some(l) => {
            let stats = gray_stats(l);
            let ok = stats.is_two_gray() && (!l.cyclic || stats.cyclic);
            checks.push(check(
                "gray",
                ok,
                format!(
                    "max distance {}, wrap {}",
                    stats.max_distance,
                    stats.wrap_distance.map_or("-".into(), |d| d.to_string())
                ),
            ));
            if l.cyclic && l.len() > 1 {
                let last = l.strings.last().expect("nonempty");
                let want = tester
                    .pivot()
                    .orient(&BinaryString::from_bits((1..=n).map(|i| i == n))?);
                checks.push(check("last", *last == want, format!("ends with {last}")));
            }
        }
        None => checks.push(check("gray", false, "no listing".into())),
    }

    Ok(VerifyReport {
        language: tester.name().to_string(),
        n,
        pivot: tester.pivot(),
        members: expected.len(),
        checks,
    })
}
