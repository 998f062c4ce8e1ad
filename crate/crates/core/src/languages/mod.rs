//! Membership testers for flip-swap languages and the combinators that
//! build new ones.
//!
//! A tester stores its predicate in *normalized* form: the predicate over the
//! pivot-1 image of a string. For a pivot-1 tester that is the string itself;
//! for a pivot-0 tester it is the complement. The engine only ever walks the
//! normalized language and complements its output for pivot-0 testers, so a
//! single successor rule serves both pivots.

mod catalog;
pub mod predicates;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitstring::BinaryString;
use crate::error::{Error, Result};

pub use catalog::{
    all, dyck_left_factor, dyck_words, forbidden_prefix, forbidden_run, inversions_le, knapsack,
    lex_le, lyndon, necklace, prefix_normal_zero, prenecklace, pseudo_necklace, registry,
    registry_languages, sort_items, transpositions_le, vs_reversal, weight_le, Language,
};
pub use predicates::Block;

/// Which symbol plays the role of "1" in the closure operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pivot {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl Pivot {
    pub fn flipped(self) -> Pivot {
        match self {
            Pivot::Zero => Pivot::One,
            Pivot::One => Pivot::Zero,
        }
    }

    /// Maps a string between this pivot's orientation and the pivot-1 view.
    pub fn orient(self, s: &BinaryString) -> BinaryString {
        match self {
            Pivot::One => s.clone(),
            Pivot::Zero => s.complement(),
        }
    }
}

impl fmt::Display for Pivot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pivot::Zero => "0",
            Pivot::One => "1",
        })
    }
}

/// Documented per-call cost of a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostClass {
    Constant,
    Linear,
    Quadratic,
    /// Definition-literal oracles; only used for testing.
    Exhaustive,
}

/// Parameters a named language may carry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    /// Bit pattern as `0`/`1` text; may be empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_ary: Option<usize>,
    /// Item weights, sorted non-increasing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<u64>,
}

/// A named, parameterized language over strings of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub name: String,
    pub n: usize,
    pub pivot: Pivot,
    pub params: Params,
}

impl fmt::Display for LanguageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [n={}, pivot {}]", self.name, self.n, self.pivot)
    }
}

pub type Predicate = Arc<dyn Fn(&BinaryString) -> bool + Send + Sync>;

/// A language together with its membership predicate.
///
/// Testers are immutable and cheap to clone; the predicate is shared.
#[derive(Clone)]
pub struct MembershipTester {
    spec: LanguageSpec,
    cost: CostClass,
    normalized: Predicate,
}

impl fmt::Debug for MembershipTester {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MembershipTester")
            .field("spec", &self.spec)
            .field("cost", &self.cost)
            .finish_non_exhaustive()
    }
}

impl MembershipTester {
    /// Builds a tester from a predicate over pivot-1 images.
    pub fn from_normalized(
        spec: LanguageSpec,
        cost: CostClass,
        normalized: Predicate,
    ) -> Result<Self> {
        if spec.n == 0 {
            return Err(Error::ZeroLength);
        }
        Ok(MembershipTester {
            spec,
            cost,
            normalized,
        })
    }

    /// Builds a tester from a predicate over strings as the caller sees them.
    pub fn custom<F>(
        name: &str,
        n: usize,
        pivot: Pivot,
        cost: CostClass,
        predicate: F,
    ) -> Result<Self>
    where
        F: Fn(&BinaryString) -> bool + Send + Sync + 'static,
    {
        let spec = LanguageSpec {
            name: name.to_string(),
            n,
            pivot,
            params: Params::default(),
        };
        let normalized: Predicate = match pivot {
            Pivot::One => Arc::new(predicate),
            Pivot::Zero => Arc::new(move |s: &BinaryString| predicate(&s.complement())),
        };
        Self::from_normalized(spec, cost, normalized)
    }

    pub fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn pivot(&self) -> Pivot {
        self.spec.pivot
    }

    pub fn cost(&self) -> CostClass {
        self.cost
    }

    /// Membership of `s` as written. Strings of the wrong length are rejected.
    pub fn accepts(&self, s: &BinaryString) -> bool {
        if s.len() != self.spec.n {
            return false;
        }
        match self.spec.pivot {
            Pivot::One => (self.normalized)(s),
            Pivot::Zero => (self.normalized)(&s.complement()),
        }
    }

    /// Membership of a pivot-1 image.
    #[inline]
    pub fn accepts_normalized(&self, s: &BinaryString) -> bool {
        s.len() == self.spec.n && (self.normalized)(s)
    }

    /// The normalized set with `0^n` adjoined.
    #[inline]
    pub(crate) fn accepts_normalized_or_zero(&self, s: &BinaryString) -> bool {
        s.is_zero() || (self.normalized)(s)
    }

    /// Whether `0^n`, after pivot normalization, is a member.
    pub fn contains_origin(&self) -> bool {
        let zero = BinaryString::zeros(self.spec.n).expect("positive length");
        self.accepts_normalized(&zero)
    }

    /// Interchanges the roles of 0 and 1: the result accepts `a` exactly
    /// when `self` accepts `complement(a)`. Applying it twice gives back an
    /// equivalent tester.
    pub fn pivot_wrap(&self) -> MembershipTester {
        let mut spec = self.spec.clone();
        spec.pivot = spec.pivot.flipped();
        spec.name = match spec
            .name
            .strip_prefix("wrap(")
            .and_then(|s| s.strip_suffix(')'))
        {
            Some(inner) => inner.to_string(),
            None => format!("wrap({})", spec.name),
        };
        MembershipTester {
            spec,
            cost: self.cost,
            normalized: self.normalized.clone(),
        }
    }

    /// Same predicate, relabelled.
    pub(crate) fn with_spec(mut self, spec: LanguageSpec) -> Self {
        self.spec = spec;
        self
    }
}

fn compatible(a: &MembershipTester, b: &MembershipTester) -> Result<()> {
    if a.n() != b.n() || a.pivot() != b.pivot() {
        return Err(Error::IncompatibleTesters {
            left: a.spec.to_string(),
            right: b.spec.to_string(),
        });
    }
    Ok(())
}

fn combined_spec(name: String, n: usize, pivot: Pivot) -> LanguageSpec {
    LanguageSpec {
        name,
        n,
        pivot,
        params: Params::default(),
    }
}

/// Pointwise OR.
pub fn union(a: &MembershipTester, b: &MembershipTester) -> Result<MembershipTester> {
    compatible(a, b)?;
    let (pa, pb) = (a.normalized.clone(), b.normalized.clone());
    MembershipTester::from_normalized(
        combined_spec(format!("({} | {})", a.name(), b.name()), a.n(), a.pivot()),
        a.cost.max(b.cost),
        Arc::new(move |s| pa(s) || pb(s)),
    )
}

/// Pointwise AND.
pub fn intersection(a: &MembershipTester, b: &MembershipTester) -> Result<MembershipTester> {
    compatible(a, b)?;
    let (pa, pb) = (a.normalized.clone(), b.normalized.clone());
    MembershipTester::from_normalized(
        combined_spec(format!("({} & {})", a.name(), b.name()), a.n(), a.pivot()),
        a.cost.max(b.cost),
        Arc::new(move |s| pa(s) && pb(s)),
    )
}

/// `S / gamma = { a : a·gamma in S }`, a language of length `n - |gamma|`.
pub fn quotient(a: &MembershipTester, gamma: &BinaryString) -> Result<MembershipTester> {
    if gamma.len() >= a.n() {
        return Err(Error::LengthMismatch {
            left: a.n(),
            right: gamma.len(),
        });
    }
    // The suffix is appended to pivot-1 images, so it must be oriented too.
    let suffix = a.pivot().orient(gamma);
    let pa = a.normalized.clone();
    let mut spec = combined_spec(
        format!("({} / {})", a.name(), gamma),
        a.n() - gamma.len(),
        a.pivot(),
    );
    spec.params.gamma = Some(gamma.to_string());
    MembershipTester::from_normalized(spec, a.cost, Arc::new(move |s| pa(&s.concat(&suffix))))
}

/// Set complement within `B(n)`. The result is generally *not* a flip-swap
/// language; it exists for building filtered-listing fixtures.
pub fn negate(a: &MembershipTester) -> MembershipTester {
    let pa = a.normalized.clone();
    MembershipTester {
        spec: combined_spec(format!("!{}", a.name()), a.n(), a.pivot()),
        cost: a.cost,
        normalized: Arc::new(move |s| !pa(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::bs;
    use crate::brgc::brgc_list;

    fn accepted(t: &MembershipTester) -> Vec<String> {
        brgc_list(t.n())
            .unwrap()
            .iter()
            .filter(|s| t.accepts(s))
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn intersection_of_necklace_and_weight() {
        let t = intersection(&necklace(4).unwrap(), &weight_le(4, 2).unwrap()).unwrap();
        assert_eq!(accepted(&t), ["0000", "0011", "0101", "0001"]);
    }

    #[test]
    fn quotient_of_lex_bound() {
        let t = quotient(&lex_le(4, &bs("1001")).unwrap(), &bs("01")).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(accepted(&t), ["00", "10", "01"]);
        assert!(quotient(&t, &bs("01")).is_err());
    }

    #[test]
    fn union_is_idempotent() {
        let a = prenecklace(6).unwrap();
        let u = union(&a, &a).unwrap();
        assert_eq!(accepted(&u), accepted(&a));
    }

    #[test]
    fn combinators_reject_mismatches() {
        let a = necklace(4).unwrap();
        assert!(matches!(
            union(&a, &necklace(5).unwrap()),
            Err(Error::IncompatibleTesters { .. })
        ));
        assert!(intersection(&a, &a.pivot_wrap()).is_err());
    }

    #[test]
    fn pivot_wrap_complements_membership() {
        let t1 = weight_le(5, 2).unwrap();
        let t0 = t1.pivot_wrap();
        assert_eq!(t0.pivot(), Pivot::Zero);
        for s in brgc_list(5).unwrap().iter() {
            assert_eq!(t0.accepts(s), t1.accepts(&s.complement()));
            assert_eq!(t0.accepts(s), s.weight() >= 3);
        }
        let back = t0.pivot_wrap();
        assert_eq!(back.spec(), t1.spec());
    }

    #[test]
    fn quotient_of_pivot_zero_tester() {
        // Strings >= 0110 with pivot 0; quotient by "10".
        let t = Language::LexLe { gamma: bs("0110") }
            .tester_with_pivot(4, Pivot::Zero)
            .unwrap();
        let q = quotient(&t, &bs("10")).unwrap();
        for s in brgc_list(2).unwrap().iter() {
            let full = s.concat(&bs("10"));
            assert_eq!(q.accepts(s), full.lex_compare(&bs("0110")).unwrap().is_ge());
        }
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!(!all(4).unwrap().accepts(&bs("000")));
    }
}
