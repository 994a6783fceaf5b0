use dtwist::diophantine::condition_a;
use dtwist::bridge::parameterizations;
use dtwist::invariants::crosscap3;
use dtwist::obstructions::{ge2_verdict, lower_bound, murakami_yasuhara_ge2};
use dtwist::surgery::{is_slice_double_twist, upper_bound};
use dtwist::twist::{j_set, twist_gamma2_member, value_set, Variant};
use dtwist::{canonicalize, DoubleTwist, GenusReport};
use proptest::prelude::*;

fn knot() -> impl Strategy<Value = DoubleTwist> {
    (2i64..80, -40i64..40)
        .prop_filter("n even, nonzero", |(_, h)| *h != 0)
        .prop_map(|(m, h)| DoubleTwist::new(m, 2 * h))
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::A), Just(Variant::B)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonicalization_is_idempotent(k in knot()) {
        let c = canonicalize(k).unwrap();
        let again = canonicalize(DoubleTwist::new(c.m(), c.n())).unwrap();
        prop_assert_eq!(again.fraction(), c.fraction());
        prop_assert_eq!((again.m(), again.n()), (c.m(), c.n()));
    }

    #[test]
    fn parameterizations_present_the_same_knot(k in knot()) {
        let c = canonicalize(k).unwrap();
        prop_assume!(c.is_generic());
        for p in parameterizations(&c) {
            prop_assert!(p.is_standard());
            let other = canonicalize(p).unwrap();
            prop_assert_eq!(other.fraction().canonical(), c.fraction().canonical());
            prop_assert_eq!((p.m * p.n + 1).abs(), c.determinant());
        }
    }

    #[test]
    fn bounds_are_ordered(k in knot()) {
        let lo = lower_bound(k).unwrap().bound;
        let hi = upper_bound(k).unwrap().bound;
        prop_assert!(lo <= hi, "{} : {} > {}", k, lo, hi);
        prop_assert!(hi <= crosscap3(&canonicalize(k).unwrap()));
    }

    #[test]
    fn bounds_do_not_depend_on_the_parameterization(k in knot()) {
        let r = GenusReport::of(k).unwrap();
        for p in parameterizations(&canonicalize(k).unwrap()) {
            let s = GenusReport::of(p).unwrap();
            prop_assert_eq!((s.lower, s.upper), (r.lower, r.upper), "{} vs {}", p, k);
        }
    }

    #[test]
    fn slice_knots_are_never_obstructed(k in knot()) {
        if is_slice_double_twist(k).unwrap() {
            prop_assert_eq!(lower_bound(k).unwrap().bound, 0);
            prop_assert_eq!(upper_bound(k).unwrap().bound, 0);
            prop_assert!(ge2_verdict(k).unwrap().is_none());
            prop_assert!(!murakami_yasuhara_ge2(k).unwrap());
        }
    }

    #[test]
    fn value_sets_reduce_modulo_divisors(t in 1u64..120, f in 2u64..6, v in variant()) {
        let small = value_set(t, v).unwrap();
        let big = value_set(t * f, v).unwrap();
        for (r, &hit) in big.iter().enumerate() {
            if hit {
                prop_assert!(small[r % t as usize]);
            }
        }
    }

    #[test]
    fn j_sets_lift_to_multiples(t in 3u64..150, f in 2u64..5, v in variant()) {
        let small = j_set(t, v).unwrap();
        let big = j_set(t * f, v).unwrap();
        for &j in &small {
            for i in 0..f {
                prop_assert!(big.contains(&(j + i * t)), "t={} j={} i={}", t, j, i);
            }
        }
    }

    #[test]
    fn twist_certificates_imply_condition_a(m in 4i64..4000) {
        if let Some(cert) = twist_gamma2_member(m) {
            prop_assert!(condition_a(m, 2).unwrap(), "m={} cert={:?}", m, cert);
        }
    }
}

#[test]
fn grid_soundness_chain() {
    for m in 2..=40 {
        for n in (-40..=40).filter(|n| n % 2 == 0 && *n != 0) {
            let k = DoubleTwist::new(m, n);
            let r = GenusReport::of(k).unwrap();
            assert!(r.lower <= r.upper && r.upper <= r.crosscap3, "{k}");
            if ge2_verdict(k).unwrap().is_some() {
                assert!(r.lower >= 2, "{k}");
            }
            if r.lower >= 1 {
                assert!(!is_slice_double_twist(k).unwrap(), "{k}");
            }
        }
    }
}

#[test]
fn every_family_member_satisfies_condition_a() {
    use dtwist::twist::primitive_t_search;
    for v in [Variant::A, Variant::B] {
        for r in primitive_t_search(1000, v).unwrap() {
            for &j in &r.j_set {
                for k in 0..=5 {
                    let m = v.offset() + 4 * j as i64 + 4 * r.t as i64 * k;
                    assert!(condition_a(m, 2).unwrap(), "t={} j={j} k={k} {v}", r.t);
                }
            }
        }
    }
}
