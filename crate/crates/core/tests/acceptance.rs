//! Runs every acceptance criterion and prints one line per criterion.
//!
//! Criterion 4 lists `C(10, −6)` with `γ₄ ∈ {1, 2, 3}`, but the engine
//! certifies `γ₄ ≤ 2` through two band moves ending at the slice knot
//! `C(8, 6)`. That single mismatch is expected; anything else fails.

use dtwist::acceptance::{run, Level, Options};
use dtwist::surgery::{band_search_upper, is_slice_canonical, recognize_double_twist};
use dtwist::DoubleTwist;

#[test]
fn acceptance_criteria() {
    let outcomes = run(Options { level: Level::Full, ..Options::default() });
    for o in &outcomes {
        println!("{}", o.line());
    }
    assert_eq!(outcomes.len(), 9);
    for o in &outcomes {
        if o.id == 4 {
            assert!(!o.passed);
            assert!(o.detail.starts_with("1 mismatch(es): C(10,-6): engine 1..2"), "{}", o.detail);
        } else {
            assert!(o.passed, "{}", o.line());
        }
    }
}

#[test]
fn ten_minus_six_certificate_is_sound() {
    let (bound, cert) = band_search_upper(DoubleTwist::new(10, -6), 2).unwrap().unwrap();
    assert_eq!(bound, 2);
    assert_eq!(cert.moves.len(), 2);
    let end = recognize_double_twist(&cert.result).expect("end knot is a double twist knot");
    assert!(is_slice_canonical(&end));
    assert_eq!(cert.result.p(), 49);
}

#[test]
fn fast_level_runs_its_subset() {
    let ids: Vec<u8> = run(Options { level: Level::Fast, ..Options::default() }).iter().map(|o| o.id).collect();
    assert_eq!(ids, vec![1, 2, 4, 5, 8]);
}

#[test]
fn murakami_yasuhara_comparison_at_full_range() {
    let o = dtwist::acceptance::criterion7(300);
    println!("{}", o.line());
    assert!(o.passed, "{}", o.line());
}
