use liegrowth::counting::word_count_histogram;
use liegrowth::field::rational_to_f64;
use liegrowth::series::{exponential_base, greedy_base_sequence, SeriesSpec};
use liegrowth::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #[test]
    fn base_certificate_brackets_the_root(k in prop::collection::vec(0u64..4, 1..5)) {
        prop_assume!(k.iter().sum::<u64>() > 0);
        let b = exponential_base(&k, &q(1, 1_000_000_000_000)).unwrap();
        prop_assert!(b.verify(&k));
        prop_assert!(b.lo <= b.hi);
        let (lo, hi) = (rational_to_f64(&b.lo), rational_to_f64(&b.hi));
        prop_assert!(lo <= b.z0 + 1e-12 && b.z0 <= hi + 1e-12);
    }

    #[test]
    fn base_matches_word_growth(k in prop::collection::vec(0u64..3, 1..4)) {
        prop_assume!(k.iter().sum::<u64>() > 1);
        let b = exponential_base(&k, &q(1, 1_000_000_000)).unwrap();
        // consecutive word counts grow like z0 in the long run
        let t = word_count_histogram(&k, 120);
        let f = |n: usize| t.d(n).unwrap().to_string().parse::<f64>().unwrap();
        let (a, c) = (f(100), f(120));
        prop_assume!(a > 0.0 && c > 0.0);
        let est = (c / a).powf(1.0 / 20.0);
        prop_assert!((est - b.z0).abs() < 0.05 * b.z0, "estimate {} vs {}", est, b.z0);
    }

    #[test]
    fn greedy_remainders_stay_below_the_bound(num in 101i64..199) {
        let m0 = q(num, 100);
        let seq = greedy_base_sequence(&m0, 30).unwrap();
        let mut bound = q(1, 1);
        for (j, a) in seq.remainders.iter().enumerate() {
            prop_assert!(*a >= q(0, 1));
            if j > 0 {
                prop_assert!(*a < bound);
            }
            bound /= m0.clone();
        }
        prop_assert!(seq.k.iter().all(|&k| k <= 1));
    }
}

#[test]
fn series_evaluation_examples() {
    let s = SeriesSpec::finite(&[2]);
    assert_eq!(s.eval_f(&q(2, 1), &q(0, 1)).unwrap(), q(1, 1));
    let tail = SeriesSpec::constant(1);
    // Σ_{i>=1} z^-i at z = 2 is 1
    assert_eq!(tail.eval_f(&q(2, 1), &q(0, 1)).unwrap(), q(1, 1));
    assert!(tail.eval_f(&q(1, 1), &q(0, 1)).is_err());
    assert!(SeriesSpec::finite(&[1]).condition_g());
    assert!(!SeriesSpec::finite(&[1, 1]).condition_g());
    assert!(SeriesSpec::constant(1).condition_g());
}
