use flipswap::engine::{check_flip_swap, check_ideal, generate, Case};
use flipswap::languages::{registry, registry_languages, MembershipTester};
use flipswap::oracle::{filtered_brgc, gray_stats};
use flipswap::{BinaryString, Listing, Pivot};

fn last_unit(n: usize, pivot: Pivot) -> BinaryString {
    pivot.orient(&BinaryString::from_bits((1..=n).map(|i| i == n)).unwrap())
}

/// The oracle listing of `S ∪ {origin}`, so every step of the walk has a
/// ground-truth successor.
fn adjoined_listing(t: &MembershipTester) -> Listing {
    let origin = t.pivot().orient(&BinaryString::zeros(t.n()).unwrap());
    let with_origin = MembershipTester::custom("adjoined", t.n(), t.pivot(), t.cost(), {
        let t = t.clone();
        move |s| *s == origin || t.accepts(s)
    })
    .unwrap();
    filtered_brgc(&with_origin).unwrap()
}

#[test]
fn generation_matches_filtered_brgc() {
    for n in 1..=12 {
        for t in registry(n) {
            let entries: Vec<_> = generate(&t).collect::<Result<_, _>>().unwrap();
            let got: Vec<_> = entries.iter().map(|e| e.value.clone()).collect();
            let want = filtered_brgc(&t).unwrap();
            assert_eq!(got, want.strings, "{}", t.spec());

            let listing = Listing::new(n, got, t.contains_origin());
            let stats = gray_stats(&listing);
            assert!(stats.max_distance <= 2, "{}", t.spec());
            if t.contains_origin() {
                assert!(stats.cyclic, "{}", t.spec());
            }
            if t.contains_origin() && listing.len() > 1 {
                assert_eq!(listing.strings.last().unwrap(), &last_unit(n, t.pivot()));
            }
        }
    }
}

#[test]
fn rightmost_change_matches_oracle_successor() {
    for n in 1..=10 {
        for t in registry(n) {
            let truth = adjoined_listing(&t);
            if truth.len() < 2 {
                continue;
            }
            let index: std::collections::HashMap<_, _> = truth
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect();
            for e in generate(&t) {
                let e = e.unwrap();
                let step = e.step.expect("more than one string");
                let next = &truth.strings[(index[&e.value] + 1) % truth.len()];
                assert_eq!(&step.next, next, "{} at {}", t.spec(), e.value);
                let image = t.pivot().orient(&e.value);
                let r = e.value.rightmost_difference(next).unwrap().unwrap();
                assert_eq!(r, step.changed.rightmost());
                match step.case {
                    Case::F2 | Case::F3 => {
                        assert_eq!(image.weight() % 2, 0);
                        assert_eq!(Some(r), step.t_alpha, "{} at {}", t.spec(), e.value);
                    }
                    Case::F4 | Case::F5 => {
                        assert_eq!(image.weight() % 2, 1);
                        assert_eq!(r, image.leftmost_one() + 1);
                    }
                    Case::F1 => assert_eq!(image, last_unit(n, Pivot::One)),
                }
            }
        }
    }
}

#[test]
fn registered_languages_are_closed() {
    for n in 1..=12 {
        for t in registry(n) {
            let report = check_flip_swap(&t).unwrap();
            assert!(
                report.is_flip_swap(),
                "{}: {:?}",
                t.spec(),
                report.counterexamples
            );
        }
    }
}

#[test]
fn registered_languages_with_origin_are_rooted_subtrees() {
    for n in 1..=10 {
        for (lang, pivot) in registry_languages(n) {
            let t = lang.tester_with_pivot(n, pivot).unwrap();
            let report = check_ideal(&t).unwrap();
            assert_eq!(report.orphan_count, 0, "{}", t.spec());
            if t.contains_origin() {
                assert!(report.is_rooted_subtree());
            }
        }
    }
}
