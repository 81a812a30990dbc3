//! Closed-form moments of the inversion count under a geometric law.

use crate::law::GeometricLaw;
use crate::scalar::{binom2, binom3, falling, Scalar};

/// E[inv] = C(n,2) · q/(1+q).
pub fn mean_inversions<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let q = law.q().clone();
    binom2::<S>(n as i128) * q.clone() / (S::one() + q)
}

/// V[inv] = n(n−1)/6 · q/((1+q)²(1+q+q²)) · (2(1−q+q²)n − q² + 7q − 1).
pub fn variance_inversions<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let one = S::one();
    let q = law.q().clone();
    let q2 = q.clone() * q.clone();
    let one_plus_q = one.clone() + q.clone();
    let cyclo3 = one.clone() + q.clone() + q2.clone(); // 1 + q + q²
    let bracket = S::from_int(2) * (one.clone() - q.clone() + q2.clone()) * S::from_count(n)
        - q2
        + S::from_int(7) * q.clone()
        - one;
    falling::<S>(n as i128, 2) * S::ratio(1, 6) * q * bracket
        / (one_plus_q.clone() * one_plus_q * cyclo3)
}

/// The four pair-overlap contributions to E[inv(inv−1)], in the order:
/// disjoint index pairs, shared left index, shared right index, chained.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionComponents<S: Scalar> {
    /// C(n,2)C(n−2,2) · q²/(1+q)².
    pub disjoint: S,
    /// 2C(n,3) · q(1+q²)/((1+q)(1+q+q²)).
    pub shared_left: S,
    /// 2C(n,3) · q²/(1+q+q²).
    pub shared_right: S,
    /// 2C(n,3) · q³/((1+q)(1+q+q²)).
    pub chained: S,
}

impl<S: Scalar> InversionComponents<S> {
    /// E[inv(inv−1)] as the sum of the four overlap classes.
    pub fn total(&self) -> S {
        self.disjoint.clone()
            + self.shared_left.clone()
            + self.shared_right.clone()
            + self.chained.clone()
    }
}

pub fn inversion_moment_components<S: Scalar>(
    n: usize,
    law: &GeometricLaw<S>,
) -> InversionComponents<S> {
    let one = S::one();
    let q = law.q().clone();
    let q2 = q.clone() * q.clone();
    let q3 = q2.clone() * q.clone();
    let one_plus_q = one.clone() + q.clone();
    let cyclo3 = one.clone() + q.clone() + q2.clone();
    let two_binom3 = S::from_int(2) * binom3::<S>(n as i128);
    InversionComponents {
        disjoint: binom2::<S>(n as i128) * binom2::<S>(n as i128 - 2) * q2.clone()
            / (one_plus_q.clone() * one_plus_q.clone()),
        shared_left: two_binom3.clone() * q.clone() * (one + q2.clone())
            / (one_plus_q.clone() * cyclo3.clone()),
        shared_right: two_binom3.clone() * q2 / cyclo3.clone(),
        chained: two_binom3 * q3 / (one_plus_q * cyclo3),
    }
}

/// E[inv(inv−1)] in fully reduced form:
/// n(n−1)(n−2)/12 · (3nq(1+q+q²) + 3q³ + 7q² − q + 4) · q/((1+q)²(1+q+q²)).
pub fn second_factorial_moment_inversions<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let one = S::one();
    let q = law.q().clone();
    let q2 = q.clone() * q.clone();
    let q3 = q2.clone() * q.clone();
    let one_plus_q = one.clone() + q.clone();
    let cyclo3 = one.clone() + q.clone() + q2.clone();
    let bracket = S::from_int(3) * S::from_count(n) * q.clone() * cyclo3.clone()
        + S::from_int(3) * q3
        + S::from_int(7) * q2
        - q.clone()
        + S::from_int(4) * one;
    falling::<S>(n as i128, 3) * S::ratio(1, 12) * bracket * q
        / (one_plus_q.clone() * one_plus_q * cyclo3)
}

/// Leading asymptotic terms (E ~ n²/2 · q/(1+q), V ~ n³/3 ·
/// q(1−q+q²)/((1+q)²(1+q+q²))), returned as (mean, variance).
pub fn asymptotic_inversions<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> (S, S) {
    let one = S::one();
    let q = law.q().clone();
    let q2 = q.clone() * q.clone();
    let one_plus_q = one.clone() + q.clone();
    let nn = S::from_count(n);
    let mean = nn.clone() * nn.clone() * S::ratio(1, 2) * q.clone() / one_plus_q.clone();
    let variance = nn.clone() * nn.clone() * nn * S::ratio(1, 3) * q.clone()
        * (one.clone() - q.clone() + q2.clone())
        / (one_plus_q.clone() * one_plus_q * (one + q + q2));
    (mean, variance)
}
