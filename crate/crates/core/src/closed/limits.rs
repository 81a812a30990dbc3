//! q → 1 limits of the word moments. In that limit ties vanish and the word
//! behaves like a uniform random permutation, so both statistics admit the
//! classical permutation moments, expressed through harmonic numbers.

use crate::scalar::Scalar;
use crate::word::Statistic;

/// First- and second-order harmonic numbers H_n = Σ 1/k and
/// H_n^{(2)} = Σ 1/k².
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPair<S: Scalar> {
    pub h1: S,
    pub h2: S,
}

pub fn harmonic<S: Scalar>(n: usize) -> HarmonicPair<S> {
    let mut h1 = S::zero();
    let mut h2 = S::zero();
    for k in 1..=n {
        let term = S::one() / S::from_count(k);
        h1 = h1 + term.clone();
        h2 = h2 + term.clone() * term;
    }
    HarmonicPair { h1, h2 }
}

/// Exact (mean, variance) of a statistic over a uniform random permutation
/// of n letters — the q → 1 limit of the geometric-word model.
///
/// Inversions: E = n(n−1)/4, V = n(n−1)(2n+5)/72.
/// Knuth's parameter: E = (n+1)H_n − 2n,
/// V = 2n(n+2) − (n+1)H_n − (n+1)²H_n^{(2)}.
pub fn permutation_limit_moments<S: Scalar>(statistic: Statistic, n: usize) -> (S, S) {
    match statistic {
        Statistic::Inversions => {
            let nn = n as i128;
            let mean = S::from_int((nn * (nn - 1)) as i64) / S::from_int(4);
            let variance =
                S::from_int((nn * (nn - 1) * (2 * nn + 5)) as i64) / S::from_int(72);
            (mean, variance)
        }
        Statistic::Knuth => {
            let h = harmonic::<S>(n);
            let np1 = S::from_count(n + 1);
            let nn = S::from_count(n);
            let mean = np1.clone() * h.h1.clone() - S::from_int(2) * nn.clone();
            let variance = S::from_int(2) * nn.clone() * (nn + S::from_int(2))
                - np1.clone() * h.h1
                - np1.clone() * np1 * h.h2;
            (mean, variance)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;
    use num::Zero;

    #[test]
    fn harmonic_numbers_match_hand_values() {
        let h3 = harmonic::<Exact>(3);
        assert_eq!(h3.h1, Exact::ratio(11, 6));
        assert_eq!(h3.h2, Exact::ratio(49, 36));
        let h4 = harmonic::<Exact>(4);
        assert_eq!(h4.h1, Exact::ratio(25, 12));
        assert_eq!(h4.h2, Exact::ratio(205, 144));
        let h0 = harmonic::<Exact>(0);
        assert_eq!(h0.h1, Exact::zero());
    }

    #[test]
    fn permutation_moments_match_hand_values() {
        let (m, v) = permutation_limit_moments::<Exact>(Statistic::Inversions, 3);
        assert_eq!(m, Exact::ratio(3, 2));
        assert_eq!(v, Exact::ratio(11, 12));
        let (m, v) = permutation_limit_moments::<Exact>(Statistic::Knuth, 3);
        assert_eq!(m, Exact::ratio(4, 3));
        assert_eq!(v, Exact::ratio(8, 9));
    }

    #[test]
    fn single_letter_moments_vanish() {
        for stat in Statistic::ALL {
            let (m, v) = permutation_limit_moments::<Exact>(stat, 1);
            assert_eq!(m, Exact::zero());
            assert_eq!(v, Exact::zero());
        }
    }
}
