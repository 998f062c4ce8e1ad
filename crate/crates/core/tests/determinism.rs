use flipswap::engine::{count, generate, generate_listing};
use flipswap::languages::{dyck_left_factor, necklace, registry_languages};
use flipswap::BinaryString;

#[test]
fn repeated_runs_are_identical() {
    let t = necklace(14).unwrap();
    let a: Vec<_> = generate(&t).collect::<Result<_, _>>().unwrap();
    let b: Vec<_> = generate(&t).collect::<Result<_, _>>().unwrap();
    assert_eq!(a, b);
    assert_eq!(count(&t).unwrap(), count(&t).unwrap());
}

#[test]
fn pivot_zero_listing_is_complement_of_its_wrap() {
    for n in 1..=9 {
        for (lang, pivot) in registry_languages(n) {
            let t = lang.tester_with_pivot(n, pivot).unwrap();
            let wrapped = t.pivot_wrap();
            let a = generate_listing(&t).unwrap();
            let b = generate_listing(&wrapped).unwrap();
            let complemented: Vec<BinaryString> = b.iter().map(|s| s.complement()).collect();
            assert_eq!(a.strings, complemented, "{}", t.spec());
        }
    }
}

#[test]
fn counts_match_listing_lengths() {
    for n in [4, 8, 12] {
        let t = dyck_left_factor(n, 2).unwrap();
        let stats = count(&t).unwrap();
        assert_eq!(stats.strings as usize, generate_listing(&t).unwrap().len());
        assert!(stats.loop_probes <= stats.strings);
    }
}

#[test]
fn long_strings_generate_lazily() {
    // Weight at most 1 at n = 200: the origin, every unit string, and back.
    let t = flipswap::languages::weight_le(200, 1).unwrap();
    let stats = count(&t).unwrap();
    assert_eq!(stats.strings, 201);
}
