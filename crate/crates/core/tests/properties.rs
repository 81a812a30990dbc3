//! Randomized properties: fast counters vs naive references, pattern
//! invariance, structural bounds, and exactness of the truncation bounds.

use geomword::closed::{
    alpha, knuth_second_factorial_moment, mean_knuth, variance_knuth, Stage,
};
use geomword::oracle::{distribution, truncated_moments, weak_order_moments};
use geomword::{
    count_inversions, count_inversions_naive, count_knuth_a, count_knuth_a_naive, Exact,
    GeometricLaw, Scalar, Statistic, Word,
};
use num::{One, Zero};
use proptest::prelude::*;

fn exact_q(num: i64, den: i64) -> GeometricLaw<Exact> {
    GeometricLaw::new(Exact::ratio(num, den)).unwrap()
}

proptest! {
    #[test]
    fn fast_inversion_counter_matches_naive(xs in prop::collection::vec(1u64..=8, 0..200)) {
        prop_assert_eq!(count_inversions(&xs), count_inversions_naive(&xs));
    }

    #[test]
    fn fast_knuth_counter_matches_naive(xs in prop::collection::vec(1u64..=8, 0..200)) {
        prop_assert_eq!(count_knuth_a(&xs), count_knuth_a_naive(&xs));
    }

    #[test]
    fn tie_heavy_words_agree_too(xs in prop::collection::vec(1u64..=2, 0..60)) {
        prop_assert_eq!(count_inversions(&xs), count_inversions_naive(&xs));
        prop_assert_eq!(count_knuth_a(&xs), count_knuth_a_naive(&xs));
    }

    #[test]
    fn statistics_only_depend_on_the_weak_order_pattern(
        xs in prop::collection::vec(1u64..=10, 1..40)
    ) {
        let word = Word::new(xs).unwrap();
        let pattern_word = word.weak_order_pattern().as_word();
        for stat in Statistic::ALL {
            prop_assert_eq!(word.statistic(stat), pattern_word.statistic(stat));
        }
    }

    #[test]
    fn both_statistics_stay_under_the_pair_count(
        xs in prop::collection::vec(1u64..=6, 0..80)
    ) {
        let pairs = (xs.len() * xs.len().saturating_sub(1) / 2) as u64;
        prop_assert!(count_inversions(&xs) <= pairs);
        prop_assert!(count_knuth_a(&xs) <= pairs);
        // A constant word has no inversions and every pair is a tie-minimum.
        let constant = vec![3u64; xs.len()];
        prop_assert_eq!(count_inversions(&constant), 0);
        prop_assert_eq!(count_knuth_a(&constant), pairs);
    }

    #[test]
    fn closed_variance_decomposition_holds_for_random_rational_q(
        n in 0usize..=12,
        num in 0i64..=19,
        den in 20i64..=24,
    ) {
        let law = exact_q(num, den);
        for stat in Statistic::ALL {
            let report = geomword::closed::closed_moments(stat, n, &law);
            let recomputed = report.second_factorial_moment.clone()
                + report.mean.clone()
                - report.mean.clone() * report.mean.clone();
            prop_assert_eq!(report.variance.clone(), recomputed);
        }
        // Knuth-specific cross-checks while we hold a random law.
        prop_assert_eq!(mean_knuth(n, &law), geomword::closed::mean_knuth_pair_sum(n, &law));
        let fin = knuth_second_factorial_moment(n, &law, Stage::Final);
        prop_assert_eq!(knuth_second_factorial_moment(n, &law, Stage::Raw), fin.clone());
        let e = mean_knuth(n, &law);
        prop_assert_eq!(variance_knuth(n, &law), fin + e.clone() - e.clone() * e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn distribution_masses_sum_to_one(
        n in 0usize..=5,
        num in 0i64..=19,
        den in 20i64..=24,
    ) {
        let law = exact_q(num, den);
        for stat in Statistic::ALL {
            let table = distribution(stat, n, &law).unwrap();
            prop_assert_eq!(table.total(), Exact::one());
        }
    }

    #[test]
    fn closed_forms_match_the_enumeration_oracle(
        n in 0usize..=5,
        num in 0i64..=19,
        den in 20i64..=24,
    ) {
        let law = exact_q(num, den);
        for stat in Statistic::ALL {
            let oracle = weak_order_moments(stat, n, &law).unwrap();
            let closed = geomword::closed::closed_moments(stat, n, &law);
            prop_assert_eq!(oracle.mean, closed.mean);
            prop_assert_eq!(oracle.second_factorial_moment, closed.second_factorial_moment);
            prop_assert_eq!(oracle.variance, closed.variance);
        }
    }

    #[test]
    fn truncation_always_brackets_the_exact_moments(
        n in 1usize..=3,
        num in 1i64..=19,
        den in 20i64..=24,
        m_bound in 1usize..=24,
    ) {
        let law = exact_q(num, den);
        for stat in Statistic::ALL {
            let exact = weak_order_moments(stat, n, &law).unwrap();
            let bounds = truncated_moments(stat, n, &law, m_bound).unwrap();
            prop_assert!(bounds.mean.contains(&exact.mean));
            prop_assert!(bounds
                .second_factorial_moment
                .contains(&exact.second_factorial_moment));
        }
    }

    #[test]
    fn alpha_tail_bound_is_honest(num in 1i64..=17, den in 18i64..=22, k in 1u32..=6) {
        let law = exact_q(num, den);
        let tol = Exact::one() / Exact::from_count(10usize.pow(k));
        let coarse = alpha(&law, &tol).unwrap();
        let fine = alpha(&law, &(tol / Exact::from_count(1000))).unwrap();
        let gap = fine.value - coarse.value;
        prop_assert!(gap >= Exact::zero());
        prop_assert!(gap <= coarse.tail_bound);
    }
}
