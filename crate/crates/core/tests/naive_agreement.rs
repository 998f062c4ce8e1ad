use flipswap::languages::{predicates, registry_languages, Language};
use flipswap::oracle::{
    naive_inversions, naive_is_lyndon, naive_is_necklace, naive_is_prenecklace, naive_tester,
    prenecklace_by_extension, transposition_distances, EXTENSION_SEARCH_BOUND,
};
use flipswap::{BinaryString, Pivot};

fn every_string(n: usize) -> impl Iterator<Item = BinaryString> {
    (0..1u64 << n).map(move |w| BinaryString::from_u64(w, n).unwrap())
}

#[test]
fn registry_agrees_with_naive_testers() {
    for n in 1..=11 {
        for (lang, pivot) in registry_languages(n) {
            let fast = lang.tester_with_pivot(n, pivot).unwrap();
            let slow = naive_tester(&lang, n, pivot).unwrap();
            for s in every_string(n) {
                assert_eq!(fast.accepts(&s), slow.accepts(&s), "{} on {s}", fast.spec());
            }
        }
    }
}

#[test]
fn boundary_strings_agree_at_larger_n() {
    for n in 12..=14 {
        for (lang, pivot) in registry_languages(n) {
            let fast = lang.tester_with_pivot(n, pivot).unwrap();
            let slow = naive_tester(&lang, n, pivot).unwrap();
            for s in [
                BinaryString::zeros(n).unwrap(),
                BinaryString::ones(n).unwrap(),
            ] {
                assert_eq!(fast.accepts(&s), slow.accepts(&s), "{} on {s}", fast.spec());
            }
        }
    }
}

#[test]
fn necklace_scans_agree_up_to_fourteen() {
    for n in 1..=14 {
        for s in every_string(n) {
            let t = s.to_string().into_bytes();
            assert_eq!(predicates::is_necklace(&s), naive_is_necklace(&t), "{s}");
            assert_eq!(predicates::is_lyndon(&s), naive_is_lyndon(&t), "{s}");
            assert_eq!(
                predicates::is_prenecklace(&s),
                naive_is_prenecklace(&t),
                "{s}"
            );
        }
    }
}

#[test]
fn prefix_normal_agrees_up_to_fourteen() {
    for n in [12, 13, 14] {
        let fast = Language::PrefixNormal.tester(n).unwrap();
        let slow = naive_tester(&Language::PrefixNormal, n, Pivot::One).unwrap();
        for s in every_string(n) {
            assert_eq!(fast.accepts(&s), slow.accepts(&s), "{s}");
        }
    }
}

#[test]
fn extension_search_agrees_with_both_prenecklace_tests() {
    for n in 1..=EXTENSION_SEARCH_BOUND {
        for s in every_string(n) {
            let by_extension = prenecklace_by_extension(&s).unwrap();
            assert_eq!(by_extension, predicates::is_prenecklace(&s), "{s}");
            assert_eq!(
                by_extension,
                naive_is_prenecklace(s.to_string().as_bytes()),
                "{s}"
            );
        }
    }
}

#[test]
fn counters_agree() {
    for n in 1..=12 {
        let table = transposition_distances(n).unwrap();
        for s in every_string(n) {
            let t = s.to_string().into_bytes();
            assert_eq!(predicates::inversions(&s), naive_inversions(&t));
            assert_eq!(predicates::transpositions(&s), table[&t], "{s}");
        }
    }
}
