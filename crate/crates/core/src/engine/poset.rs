//! The parent map `tau`, the tree it induces on `B(n)`, and closure checks.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitstring::BinaryString;
use crate::error::{Error, Result};
use crate::languages::{MembershipTester, Pivot};
use crate::ENUMERATION_BOUND;

/// Parent of `a` in the flip-swap poset.
///
/// `0^n` is its own parent. Otherwise, with `l` the leftmost 1, the parent
/// flips `l` when `l = n` or `b_(l+1) = 1`, and swaps `l` and `l+1` when
/// `b_(l+1) = 0`.
pub fn tau(a: &BinaryString) -> BinaryString {
    let n = a.len();
    let l = a.leftmost_one();
    let mut out = a.clone();
    if l > n {
        return out;
    }
    if l == n || a.bit(l + 1) {
        out.toggle_unchecked(l);
    } else {
        out.toggle_unchecked(l);
        out.toggle_unchecked(l + 1);
    }
    out
}

fn check_bound(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            n,
            bound: ENUMERATION_BOUND,
        });
    }
    Ok(())
}

fn all_strings(n: usize) -> impl Iterator<Item = BinaryString> {
    (0..1u64 << n).map(move |w| BinaryString::from_u64(w, n).expect("n within bound"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetNode {
    pub value: BinaryString,
    /// `None` for the root.
    pub parent: Option<BinaryString>,
}

/// The tree on `B(n)` rooted at `0^n` with `tau` as the parent map.
#[derive(Debug, Clone)]
pub struct PosetTree {
    n: usize,
    nodes: Vec<PosetNode>,
}

/// Builds the poset tree; `n` is limited to [`ENUMERATION_BOUND`].
pub fn poset_tree(n: usize) -> Result<PosetTree> {
    check_bound(n)?;
    let nodes = all_strings(n)
        .map(|value| {
            let parent = (!value.is_zero()).then(|| tau(&value));
            PosetNode { value, parent }
        })
        .collect();
    Ok(PosetTree { n, nodes })
}

impl PosetTree {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nodes indexed by the integer whose bit `j - 1` is position `j`.
    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    /// `(child, parent)` pairs, one per non-root string.
    pub fn edges(&self) -> impl Iterator<Item = (&BinaryString, &BinaryString)> {
        self.nodes
            .iter()
            .filter_map(|node| node.parent.as_ref().map(|p| (&node.value, p)))
    }

    /// Number of `tau` applications from `s` to the root.
    pub fn depth(&self, s: &BinaryString) -> usize {
        let mut cur = s.clone();
        let mut depth = 0;
        while !cur.is_zero() {
            cur = tau(&cur);
            depth += 1;
        }
        depth
    }

    /// One `child parent` line per edge.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (child, parent) in self.edges() {
            let _ = writeln!(out, "{child} {parent}");
        }
        out
    }

    /// Graphviz rendering with edges pointing from child to parent. When a
    /// tester is supplied its members are drawn filled.
    pub fn to_dot(&self, highlight: Option<&MembershipTester>) -> String {
        let mut out = format!(
            "digraph flipswap_{} {{\n  rankdir=BT;\n  node [shape=box, fontname=monospace];\n",
            self.n
        );
        for node in &self.nodes {
            let member = highlight.is_some_and(|t| t.accepts(&node.value));
            if member {
                let _ = writeln!(
                    out,
                    "  \"{}\" [style=filled, fillcolor=lightblue];",
                    node.value
                );
            } else {
                let _ = writeln!(out, "  \"{}\";", node.value);
            }
        }
        for (child, parent) in self.edges() {
            let _ = writeln!(out, "  \"{child}\" -> \"{parent}\";");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureOp {
    FlipFirst,
    SwapFirst,
}

impl std::fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClosureOp::FlipFirst => "flip-first",
            ClosureOp::SwapFirst => "swap-first",
        })
    }
}

/// A member whose image under a closure operation leaves the language.
/// Both strings are in the tester's orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub member: BinaryString,
    pub operation: ClosureOp,
    pub image: BinaryString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub language: String,
    pub n: usize,
    pub pivot: Pivot,
    pub members: u64,
    pub violations: u64,
    /// The first few violations in integer order.
    pub counterexamples: Vec<Counterexample>,
}

impl ClosureReport {
    pub const MAX_COUNTEREXAMPLES: usize = 8;

    pub fn is_flip_swap(&self) -> bool {
        self.violations == 0
    }
}

/// Exhaustively checks that the language with the origin adjoined is closed
/// under flip-first and swap-first with respect to the tester's pivot.
pub fn check_flip_swap(tester: &MembershipTester) -> Result<ClosureReport> {
    let n = tester.n();
    check_bound(n)?;
    let pivot = tester.pivot();
    let mut report = ClosureReport {
        language: tester.name().to_string(),
        n,
        pivot,
        members: 0,
        violations: 0,
        counterexamples: Vec::new(),
    };
    for s in all_strings(n) {
        if !tester.accepts_normalized(&s) {
            continue;
        }
        report.members += 1;
        let l = s.leftmost_one();
        if l > n {
            continue;
        }
        let mut images = vec![(ClosureOp::FlipFirst, s.flip(l)?)];
        if l < n {
            images.push((ClosureOp::SwapFirst, s.swap(l, l + 1)?));
        }
        for (operation, image) in images {
            if !tester.accepts_normalized_or_zero(&image) {
                report.violations += 1;
                if report.counterexamples.len() < ClosureReport::MAX_COUNTEREXAMPLES {
                    report.counterexamples.push(Counterexample {
                        member: pivot.orient(&s),
                        operation,
                        image: pivot.orient(&image),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub language: String,
    pub n: usize,
    /// Whether the origin is a member; without it the language cannot be a
    /// rooted subtree.
    pub contains_origin: bool,
    pub members: u64,
    /// Members whose `tau` parent lies outside the language with the origin
    /// adjoined, in the tester's orientation. Capped like closure
    /// counterexamples.
    pub orphans: Vec<BinaryString>,
    pub orphan_count: u64,
}

impl IdealReport {
    pub fn is_rooted_subtree(&self) -> bool {
        self.contains_origin && self.orphan_count == 0
    }
}

/// Checks whether the members form a subtree of the poset that contains the
/// root.
pub fn check_ideal(tester: &MembershipTester) -> Result<IdealReport> {
    let n = tester.n();
    check_bound(n)?;
    let mut report = IdealReport {
        language: tester.name().to_string(),
        n,
        contains_origin: tester.contains_origin(),
        members: 0,
        orphans: Vec::new(),
        orphan_count: 0,
    };
    for s in all_strings(n) {
        if !tester.accepts_normalized(&s) {
            continue;
        }
        report.members += 1;
        if !s.is_zero() && !tester.accepts_normalized_or_zero(&tau(&s)) {
            report.orphan_count += 1;
            if report.orphans.len() < ClosureReport::MAX_COUNTEREXAMPLES {
                report.orphans.push(tester.pivot().orient(&s));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::bs;
    use crate::languages::{dyck_words, necklace, CostClass};

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&bs("0000")), bs("0000"));
        assert_eq!(tau(&bs("0001")), bs("0000"));
        assert_eq!(tau(&bs("0110")), bs("0010"));
        assert_eq!(tau(&bs("0100")), bs("0010"));
        assert_eq!(tau(&bs("1000")), bs("0100"));
        assert_eq!(tau(&bs("001011")), bs("000111"));
        assert_eq!(tau(&bs("0111")), bs("0011"));
    }

    #[test]
    fn tree_reaches_root() {
        for n in 1..=10 {
            let tree = poset_tree(n).unwrap();
            assert_eq!(tree.edges().count(), (1 << n) - 1);
            for node in tree.nodes() {
                // Depth is bounded, so no cycles.
                assert!(tree.depth(&node.value) <= 2 * n);
            }
        }
        assert!(matches!(
            poset_tree(ENUMERATION_BOUND + 1),
            Err(Error::EnumerationBound { .. })
        ));
    }

    #[test]
    fn dot_and_edges() {
        let tree = poset_tree(2).unwrap();
        assert_eq!(tree.edge_list(), "10 01\n01 00\n11 01\n");
        let dot = tree.to_dot(Some(&necklace(2).unwrap()));
        assert!(dot.contains("\"11\" [style=filled"));
        assert!(dot.contains("\"10\";"));
        assert!(dot.contains("\"10\" -> \"01\";"));
    }

    #[test]
    fn dyck_words_fail_closure() {
        let report = check_flip_swap(&dyck_words(6, 2).unwrap()).unwrap();
        assert!(!report.is_flip_swap());
        assert!(report
            .counterexamples
            .iter()
            .any(|c| c.member == bs("110100")
                && c.operation == ClosureOp::FlipFirst
                && c.image == bs("111100")));
    }

    #[test]
    fn necklaces_are_ideals() {
        let t = necklace(8).unwrap();
        assert!(check_flip_swap(&t).unwrap().is_flip_swap());
        assert!(check_ideal(&t).unwrap().is_rooted_subtree());
    }

    #[test]
    fn orphan_reported() {
        let t = MembershipTester::custom("odd", 3, Pivot::One, CostClass::Constant, |s| {
            s.is_zero() || s == &bs("110")
        })
        .unwrap();
        let r = check_ideal(&t).unwrap();
        assert_eq!(r.orphans, [bs("110")]);
        assert!(!check_flip_swap(&t).unwrap().is_flip_swap());
    }
}
