//! The generic successor rule and the generation loop.
//!
//! For a flip-swap language `S` containing `0^n` with `|S| > 1`, the string
//! after `a` in the cyclic BRGC order of `S` is
//!
//! * `f1`: `0^n` when `a = 0^(n-1) 1`;
//! * even weight, with `t` the leftmost position whose flip stays in `S`:
//!   `f3` flips `t-1` and `t` when `t > 1` and that stays in `S`, otherwise
//!   `f2` flips `t`;
//! * odd weight, with `l` the leftmost 1: `f5` flips `l+1` when that stays
//!   in `S`, otherwise `f4` flips `l` and `l+1`.
//!
//! When `0^n` is not a member the rule runs over `S ∪ {0^n}` and `0^n` is
//! left out of the output. Pivot-0 testers are walked in their complemented
//! form and every string is complemented back on the way out.

pub mod poset;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitstring::BinaryString;
use crate::error::{Error, Result};
use crate::languages::{MembershipTester, Pivot};
use crate::listing::Listing;

pub use poset::{
    check_flip_swap, check_ideal, poset_tree, tau, ClosureOp, ClosureReport, Counterexample,
    IdealReport, PosetNode, PosetTree,
};

/// Which branch of the successor rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    F1,
    F2,
    F3,
    F4,
    F5,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::F1 => "f1",
            Case::F2 => "f2",
            Case::F3 => "f3",
            Case::F4 => "f4",
            Case::F5 => "f5",
        })
    }
}

/// One or two increasing positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Changed {
    positions: [usize; 2],
    len: u8,
}

impl Changed {
    fn one(i: usize) -> Self {
        Changed {
            positions: [i, 0],
            len: 1,
        }
    }

    fn two(i: usize, j: usize) -> Self {
        Changed {
            positions: [i, j],
            len: 2,
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.positions[..self.len as usize]
    }

    pub fn rightmost(&self) -> usize {
        self.positions[self.len as usize - 1]
    }
}

impl Serialize for Changed {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(serializer)
    }
}

/// The operation that produced the successor, in the rule's own notation:
/// `flip(i)` or `flip2(i, j)`.
impl fmt::Display for Changed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_slice() {
            [i] => write!(f, "flip({i})"),
            [i, j] => write!(f, "flip2({i},{j})"),
            _ => unreachable!(),
        }
    }
}

/// Result of applying the successor rule once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuccessorStep {
    pub next: BinaryString,
    pub case: Case,
    /// Only computed for even-weight strings.
    pub t_alpha: Option<usize>,
    pub changed: Changed,
    /// Membership calls made by the `t` search loop.
    pub probes: usize,
    /// All membership calls made while computing this step.
    pub membership_calls: usize,
}

#[derive(Debug, Clone, Copy)]
struct StepInfo {
    case: Case,
    t_alpha: Option<usize>,
    changed: Changed,
    probes: usize,
    calls: usize,
}

/// Searches for `t` on the pivot-1 image `cur`, probing in place.
///
/// Starts at the leftmost 1 (or `n + 1` for `0^n`) and moves left while
/// flipping the position to the left stays in `S ∪ {0^n}`.
fn search_t(cur: &mut BinaryString, tester: &MembershipTester) -> Result<(usize, usize)> {
    let mut t = cur.leftmost_one();
    let mut probes = 0;
    while t > 1 {
        cur.toggle_unchecked(t - 1);
        probes += 1;
        let ok = tester.accepts_normalized_or_zero(cur);
        cur.toggle_unchecked(t - 1);
        if !ok {
            break;
        }
        t -= 1;
    }
    if t > cur.len() {
        return Err(Error::LanguageTooSmall);
    }
    Ok((t, probes))
}

/// Applies the rule to the pivot-1 image `cur` in place.
fn apply(cur: &mut BinaryString, tester: &MembershipTester) -> Result<StepInfo> {
    let n = cur.len();
    if cur.is_last_unit() {
        cur.toggle_unchecked(n);
        return Ok(StepInfo {
            case: Case::F1,
            t_alpha: None,
            changed: Changed::one(n),
            probes: 0,
            calls: 0,
        });
    }
    if cur.weight().is_multiple_of(2) {
        let (t, probes) = search_t(cur, tester)?;
        let mut calls = probes;
        if t > 1 {
            cur.toggle_unchecked(t - 1);
            cur.toggle_unchecked(t);
            calls += 1;
            if tester.accepts_normalized_or_zero(cur) {
                return Ok(StepInfo {
                    case: Case::F3,
                    t_alpha: Some(t),
                    changed: Changed::two(t - 1, t),
                    probes,
                    calls,
                });
            }
            cur.toggle_unchecked(t - 1);
        } else {
            cur.toggle_unchecked(t);
        }
        Ok(StepInfo {
            case: Case::F2,
            t_alpha: Some(t),
            changed: Changed::one(t),
            probes,
            calls,
        })
    } else {
        // Odd weight and not 0^(n-1)1, so the leftmost 1 is left of n.
        let l = cur.leftmost_one();
        cur.toggle_unchecked(l + 1);
        if tester.accepts_normalized_or_zero(cur) {
            return Ok(StepInfo {
                case: Case::F5,
                t_alpha: None,
                changed: Changed::one(l + 1),
                probes: 0,
                calls: 1,
            });
        }
        cur.toggle_unchecked(l);
        Ok(StepInfo {
            case: Case::F4,
            t_alpha: None,
            changed: Changed::two(l, l + 1),
            probes: 0,
            calls: 1,
        })
    }
}

fn oriented_member(alpha: &BinaryString, tester: &MembershipTester) -> Result<BinaryString> {
    if alpha.len() != tester.n() {
        return Err(Error::LengthMismatch {
            left: tester.n(),
            right: alpha.len(),
        });
    }
    let image = tester.pivot().orient(alpha);
    if !tester.accepts_normalized_or_zero(&image) {
        return Err(Error::NotAMember(alpha.to_string()));
    }
    Ok(image)
}

/// The `t` search on its own: returns `(t, probes)`.
///
/// `alpha` must be a member (or `0^n` after pivot normalization). Fails with
/// [`Error::LanguageTooSmall`] when the search runs off the right end, which
/// only happens when `0^(n-1) 1` is not a member.
pub fn compute_t(alpha: &BinaryString, tester: &MembershipTester) -> Result<(usize, usize)> {
    let mut image = oriented_member(alpha, tester)?;
    search_t(&mut image, tester)
}

/// The string following `alpha` in the cyclic BRGC order of the tester's
/// language (with `0^n` adjoined).
pub fn successor(alpha: &BinaryString, tester: &MembershipTester) -> Result<SuccessorStep> {
    let mut image = oriented_member(alpha, tester)?;
    let info = apply(&mut image, tester).map_err(|e| match e {
        Error::LanguageTooSmall => Error::NoSuccessor,
        other => other,
    })?;
    Ok(SuccessorStep {
        next: tester.pivot().orient(&image),
        case: info.case,
        t_alpha: info.t_alpha,
        changed: info.changed,
        probes: info.probes,
        membership_calls: info.calls,
    })
}

/// Counters collected over a generation run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeStats {
    /// Strings emitted, i.e. `|S|` after a complete run.
    pub strings: u64,
    /// Applications of the successor rule.
    pub steps: u64,
    /// Membership calls inside the `t` search loop.
    pub loop_probes: u64,
    /// All membership calls.
    pub membership_calls: u64,
}

impl ProbeStats {
    /// `loop_probes / strings`; zero for an empty run.
    pub fn loop_ratio(&self) -> f64 {
        if self.strings == 0 {
            0.0
        } else {
            self.loop_probes as f64 / self.strings as f64
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GenerateOptions {
    /// Recompute weight and leftmost-one by a full rescan after every step
    /// instead of relying on incremental maintenance.
    pub rescan_caches: bool,
    /// Override for the step limit (default `2^n`).
    pub step_limit: Option<u128>,
}

/// One emitted string and the rule application that leads away from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub value: BinaryString,
    /// `None` only when the language has a single string.
    pub step: Option<SuccessorStep>,
}

struct Walk {
    tester: MembershipTester,
    cursor: BinaryString,
    options: GenerateOptions,
    limit: u128,
    done: bool,
    stats: ProbeStats,
}

enum Advance {
    /// The cursor moved; `emit` says whether the string it left is output.
    Moved { emit: bool, info: StepInfo },
    /// `S ∪ {0^n} = {0^n}`; `emit` says whether `0^n` itself is a member.
    Singleton { emit: bool },
}

impl Walk {
    fn new(tester: &MembershipTester, options: GenerateOptions) -> Self {
        let n = tester.n();
        let limit = options
            .step_limit
            .unwrap_or(if n < 128 { 1u128 << n } else { u128::MAX });
        Walk {
            tester: tester.clone(),
            cursor: BinaryString::zeros(n).expect("positive length"),
            options,
            limit,
            done: false,
            stats: ProbeStats::default(),
        }
    }

    fn advance(&mut self) -> Option<Result<Advance>> {
        if self.done {
            return None;
        }
        let was_zero = self.cursor.is_zero();
        let emit = !was_zero || self.tester.accepts_normalized(&self.cursor);
        let info = match apply(&mut self.cursor, &self.tester) {
            Ok(info) => info,
            Err(Error::LanguageTooSmall) if was_zero => {
                self.done = true;
                self.stats.strings += u64::from(emit);
                return Some(Ok(Advance::Singleton { emit }));
            }
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        if self.options.rescan_caches {
            self.cursor.recompute_caches();
        }
        self.stats.steps += 1;
        self.stats.loop_probes += info.probes as u64;
        self.stats.membership_calls += info.calls as u64;
        self.stats.strings += u64::from(emit);
        if self.cursor.is_zero() {
            self.done = true;
        } else if u128::from(self.stats.steps) >= self.limit {
            self.done = true;
            return Some(Err(Error::NonTerminating {
                steps: u128::from(self.stats.steps),
            }));
        }
        Some(Ok(Advance::Moved { emit, info }))
    }
}

/// Pull-based generation of a flip-swap language in BRGC order.
///
/// Yields `Err` at most once, after which the iterator is exhausted.
pub struct Generator {
    walk: Walk,
}

impl Generator {
    pub fn stats(&self) -> ProbeStats {
        self.walk.stats
    }

    pub fn tester(&self) -> &MembershipTester {
        &self.walk.tester
    }

    /// Runs to completion without materializing strings.
    pub fn run_to_end(mut self) -> Result<ProbeStats> {
        while let Some(adv) = self.walk.advance() {
            adv?;
        }
        Ok(self.walk.stats)
    }
}

impl Iterator for Generator {
    type Item = Result<Entry>;

    fn next(&mut self) -> Option<Result<Entry>> {
        let pivot = self.walk.tester.pivot();
        let out = |s: BinaryString| match pivot {
            Pivot::One => s,
            Pivot::Zero => s.complement(),
        };
        loop {
            let value = self.walk.cursor.clone();
            match self.walk.advance()? {
                Err(e) => return Some(Err(e)),
                Ok(Advance::Singleton { emit }) => {
                    return emit.then(|| {
                        Ok(Entry {
                            value: out(value),
                            step: None,
                        })
                    });
                }
                Ok(Advance::Moved { emit: false, .. }) => continue,
                Ok(Advance::Moved { emit: true, info }) => {
                    let step = SuccessorStep {
                        next: out(self.walk.cursor.clone()),
                        case: info.case,
                        t_alpha: info.t_alpha,
                        changed: info.changed,
                        probes: info.probes,
                        membership_calls: info.calls,
                    };
                    return Some(Ok(Entry {
                        value: out(value),
                        step: Some(step),
                    }));
                }
            }
        }
    }
}

/// Generates the tester's language starting from `0^n`.
pub fn generate(tester: &MembershipTester) -> Generator {
    generate_with(tester, GenerateOptions::default())
}

pub fn generate_with(tester: &MembershipTester, options: GenerateOptions) -> Generator {
    Generator {
        walk: Walk::new(tester, options),
    }
}

/// Collects a full run into a [`Listing`]; cyclic when `0^n` (after pivot
/// normalization) is a member.
pub fn generate_listing(tester: &MembershipTester) -> Result<Listing> {
    let strings = generate(tester)
        .map(|e| e.map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(Listing::new(tester.n(), strings, tester.contains_origin()))
}

/// Runs generation and returns only the counters.
pub fn count(tester: &MembershipTester) -> Result<ProbeStats> {
    generate(tester).run_to_end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::bs;
    use crate::languages::{all, dyck_left_factor, necklace, vs_reversal, weight_le};

    #[test]
    fn t_search_on_necklaces() {
        let t = necklace(6).unwrap();
        assert_eq!(compute_t(&bs("000000"), &t).unwrap().0, 6);
        assert_eq!(compute_t(&bs("000011"), &t).unwrap().0, 3);
        assert_eq!(compute_t(&bs("111111"), &t).unwrap().0, 1);
        assert_eq!(compute_t(&bs("000011"), &t).unwrap().1, 3);
        assert!(matches!(
            compute_t(&bs("100000"), &t),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn successor_cases() {
        let t = necklace(6).unwrap();
        let s = successor(&bs("000000"), &t).unwrap();
        assert_eq!((s.next.clone(), s.case), (bs("000011"), Case::F3));
        assert_eq!(s.changed.as_slice(), [5, 6]);
        let s = successor(&bs("010101"), &t).unwrap();
        assert_eq!((s.next.clone(), s.case), (bs("001101"), Case::F4));
        assert_eq!(s.changed.to_string(), "flip2(2,3)");
        let s = successor(&bs("000001"), &t).unwrap();
        assert_eq!((s.next, s.case), (bs("000000"), Case::F1));
        assert!(matches!(
            successor(&bs("110000"), &t),
            Err(Error::NotAMember(_))
        ));
        assert_eq!(
            successor(&bs("00000"), &weight_le(5, 0).unwrap()),
            Err(Error::NoSuccessor)
        );
    }

    #[test]
    fn successor_respects_pivot_zero() {
        let t = dyck_left_factor(4, 2).unwrap();
        // Pivot-0 origin is 1^n.
        let s = successor(&bs("1111"), &t).unwrap();
        assert!(t.accepts(&s.next));
        assert_eq!(
            s.next.hamming(&bs("1111")).unwrap(),
            s.changed.as_slice().len()
        );
    }

    #[test]
    fn all_strings_in_brgc_order() {
        let listing = generate_listing(&all(4).unwrap()).unwrap();
        assert_eq!(listing, crate::brgc::brgc_list(4).unwrap());
    }

    #[test]
    fn singleton_and_empty_languages() {
        let only_zero = generate_listing(&weight_le(5, 0).unwrap()).unwrap();
        assert_eq!(only_zero.strings, [bs("00000")]);
        let entries: Vec<_> = generate(&weight_le(5, 0).unwrap()).collect();
        assert_eq!(entries.len(), 1);
        assert!(entries[0].as_ref().unwrap().step.is_none());
        // Nothing is strictly smaller than its reversal at n = 1.
        let empty = generate_listing(&vs_reversal(1, true, false).unwrap()).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn zero_suppressed_when_not_member() {
        let ly = crate::languages::lyndon(5).unwrap();
        let listing = generate_listing(&ly).unwrap();
        assert!(!listing.cyclic);
        assert!(listing.iter().all(|s| !s.is_zero()));
        assert_eq!(listing.len(), 6);
    }

    #[test]
    fn step_guard_fires() {
        let opts = GenerateOptions {
            step_limit: Some(3),
            ..Default::default()
        };
        let out: Vec<_> = generate_with(&all(4).unwrap(), opts).collect();
        assert!(matches!(
            out.last(),
            Some(Err(Error::NonTerminating { steps: 3 }))
        ));
    }

    #[test]
    fn incremental_caches_match_rescan() {
        for n in 1..=10 {
            for t in crate::languages::registry(n) {
                let a: Vec<_> = generate(&t).collect::<Result<_>>().unwrap();
                let opts = GenerateOptions {
                    rescan_caches: true,
                    ..Default::default()
                };
                let b: Vec<_> = generate_with(&t, opts).collect::<Result<_>>().unwrap();
                assert_eq!(a, b, "{}", t.spec());
                for e in &a {
                    assert!(e.value.caches_consistent());
                }
            }
        }
    }

    #[test]
    fn non_flip_swap_detected_or_bounded() {
        // Exactly-weight-2 strings: not closed under flip-first.
        let t = MembershipTester::custom(
            "weight_eq(2)",
            6,
            Pivot::One,
            crate::languages::CostClass::Constant,
            |s| s.weight() == 2,
        )
        .unwrap();
        let results: Vec<_> = generate(&t).collect();
        assert!(results.len() as u128 <= 1 << 6);
    }
}
