//! Closed-form moments of Knuth's parameter under a geometric law.
//!
//! The second factorial moment is kept in its three algebraic stages — the
//! original six-sum form, the partially simplified form, and the fully
//! collapsed form — precisely so tests can certify every simplification
//! step; the variance is a separate display with its own structure.

use crate::law::GeometricLaw;
use crate::scalar::{binom2, Scalar};

/// Algebraic stage of the second-factorial-moment expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// The six range sums, summed verbatim.
    Raw,
    /// After the first round of collapsing (single partial-fraction sum,
    /// square sum, and triangular double sum plus n(n+1)).
    Simplified,
    /// Fully collapsed form (no convolution sum left).
    Final,
}

impl Stage {
    pub const ALL: [Stage; 3] = [Stage::Raw, Stage::Simplified, Stage::Final];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Raw => "raw",
            Stage::Simplified => "simplified",
            Stage::Final => "final",
        }
    }
}

/// a_i = 1/(1 − q^i) for i = 1..=n (index 0 unused).
fn recip_table<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> Vec<S> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(S::zero());
    let mut q_pow = S::one();
    for _ in 1..=n {
        q_pow = q_pow * law.q().clone();
        table.push(S::one() / (S::one() - q_pow.clone()));
    }
    table
}

/// E[a] = p · Σ_{1≤i≤n} (n+1−i)/(1−q^i) − n.
pub fn mean_knuth<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let a = recip_table(n, law);
    let mut sum = S::zero();
    for i in 1..=n {
        sum = sum + S::from_count(n + 1 - i) * a[i].clone();
    }
    law.p().clone() * sum - S::from_count(n)
}

/// The same mean as a sum over pair gaps: E[a] = p · Σ_{2≤h≤n} (n+1−h)/(1−q^h).
/// (The h = 1 term of [`mean_knuth`] contributes exactly n, cancelling the
/// subtraction.)
pub fn mean_knuth_pair_sum<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let a = recip_table(n, law);
    let mut sum = S::zero();
    for h in 2..=n {
        sum = sum + S::from_count(n + 1 - h) * a[h].clone();
    }
    law.p().clone() * sum
}

/// E[a(a−1)] evaluated at the requested algebraic stage. All stages are
/// provably equal; keeping them separate lets tests certify each rewrite.
pub fn knuth_second_factorial_moment<S: Scalar>(
    n: usize,
    law: &GeometricLaw<S>,
    stage: Stage,
) -> S {
    match stage {
        Stage::Raw => raw_stage(n, law),
        Stage::Simplified => simplified_stage(n, law),
        Stage::Final => final_stage(n, law),
    }
}

/// Six-sum form; every sum is written exactly as displayed, over its own
/// index range, and the whole bracket carries the symmetry factor 2.
fn raw_stage<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let a = recip_table(n, law);
    let p = law.p().clone();
    let ni = n as i128;

    // Σ_{2≤i,j≤n−2, i+j≤n} a_i a_j C(n+2−i−j, 2): disjoint pairs.
    let mut t1 = S::zero();
    if n >= 4 {
        for i in 2..=n - 2 {
            for j in 2..=n - i {
                t1 = t1
                    + a[i].clone() * a[j].clone() * binom2::<S>(ni + 2 - i as i128 - j as i128);
            }
        }
    }

    // Σ_{2≤i<j≤n} a_i a_j (n+1−j)(j−i−1): nested pairs.
    let mut t2 = S::zero();
    // Σ_{3≤i<j≤n} a_i a_j (n+1−j)(i−2): overlapping pairs.
    let mut t3 = S::zero();
    // Two identical sums Σ_{2≤i<j≤n} a_i a_j (n+1−j): pairs sharing an
    // endpoint, each written out as displayed.
    let mut t4 = S::zero();
    let mut t5 = S::zero();
    for i in 2..=n {
        for j in i + 1..=n {
            let aij = a[i].clone() * a[j].clone();
            let weight = S::from_count(n + 1 - j);
            t2 = t2 + aij.clone() * weight.clone() * S::from_count(j - i - 1);
            if i >= 3 {
                t3 = t3 + aij.clone() * weight.clone() * S::from_count(i - 2);
            }
            t4 = t4 + aij.clone() * weight.clone();
            t5 = t5 + aij * weight;
        }
    }

    // Σ_{3≤i≤n} a_i (n+1−i)(i−2): the single-factor contribution.
    let mut t6 = S::zero();
    for i in 3..=n {
        t6 = t6 + a[i].clone() * S::from_count(n + 1 - i) * S::from_count(i - 2);
    }

    S::from_int(2) * (p.clone() * p.clone() * (t1 + t2 + t3 + t4 + t5) + p * t6)
}

/// Partially simplified form:
/// 2p² Σ_{1≤i<m≤n} a_i a_{m−i} C(n+2−m,2) − 2p Σ_j (n+1−j)² a_j
/// + 2p² Σ_{1≤i<j≤n} a_i a_j (n+1−j)(j−1) + n(n+1).
fn simplified_stage<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let a = recip_table(n, law);
    let p = law.p().clone();
    let p2 = p.clone() * p.clone();
    let ni = n as i128;

    let mut convolution = S::zero();
    for m in 2..=n {
        let mut inner = S::zero();
        for i in 1..m {
            inner = inner + a[i].clone() * a[m - i].clone();
        }
        convolution = convolution + inner * binom2::<S>(ni + 2 - m as i128);
    }

    let mut squares = S::zero();
    for j in 1..=n {
        squares = squares + S::from_count((n + 1 - j) * (n + 1 - j)) * a[j].clone();
    }

    // Σ_{i<j} a_i a_j (n+1−j)(j−1) via the prefix sums Σ_{i<j} a_i.
    let mut triangular = S::zero();
    let mut prefix = S::zero();
    for j in 2..=n {
        prefix = prefix + a[j - 1].clone();
        triangular =
            triangular + prefix.clone() * a[j].clone() * S::from_count((n + 1 - j) * (j - 1));
    }

    S::from_int(2) * p2.clone() * convolution - S::from_int(2) * p * squares
        + S::from_int(2) * p2 * triangular
        + S::from_count(n * (n + 1))
}

/// Fully collapsed form:
/// −2p² Σ_m (m−1) a_m C(n+2−m,2) − 2p Σ_j (n+1−j)² a_j
/// + 2p²(n+1) Σ_{1≤i<j≤n} a_i a_j (n+1−j) + n(n+1).
fn final_stage<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let a = recip_table(n, law);
    let p = law.p().clone();
    let p2 = p.clone() * p.clone();
    let ni = n as i128;

    let mut collapsed = S::zero();
    for m in 1..=n {
        collapsed = collapsed + S::from_count(m - 1) * a[m].clone() * binom2::<S>(ni + 2 - m as i128);
    }

    let mut squares = S::zero();
    for j in 1..=n {
        squares = squares + S::from_count((n + 1 - j) * (n + 1 - j)) * a[j].clone();
    }

    let mut triangular = S::zero();
    let mut prefix = S::zero();
    for j in 2..=n {
        prefix = prefix + a[j - 1].clone();
        triangular = triangular + prefix.clone() * a[j].clone() * S::from_count(n + 1 - j);
    }

    -S::from_int(2) * p2.clone() * collapsed - S::from_int(2) * p * squares
        + S::from_int(2) * p2 * S::from_count(n + 1) * triangular
        + S::from_count(n * (n + 1))
}

/// V[a] = −2p² Σ_m (m−1) a_m C(n+2−m,2) + 2p² Σ_{i<j} i(n+1−j) a_i a_j
/// − p² Σ_i (n+1−i)² a_i² + p Σ_i (n+1−i)(2i−1) a_i.
pub fn variance_knuth<S: Scalar>(n: usize, law: &GeometricLaw<S>) -> S {
    let a = recip_table(n, law);
    let p = law.p().clone();
    let p2 = p.clone() * p.clone();
    let ni = n as i128;

    let mut collapsed = S::zero();
    for m in 1..=n {
        collapsed = collapsed + S::from_count(m - 1) * a[m].clone() * binom2::<S>(ni + 2 - m as i128);
    }

    // Σ_{i<j} i(n+1−j) a_i a_j via prefix sums of i·a_i.
    let mut cross = S::zero();
    let mut prefix = S::zero();
    for j in 2..=n {
        prefix = prefix + S::from_count(j - 1) * a[j - 1].clone();
        cross = cross + prefix.clone() * a[j].clone() * S::from_count(n + 1 - j);
    }

    let mut square_recips = S::zero();
    let mut linear = S::zero();
    for i in 1..=n {
        let w = S::from_count(n + 1 - i);
        square_recips = square_recips + w.clone() * w.clone() * a[i].clone() * a[i].clone();
        linear = linear + w * S::from_count(2 * i - 1) * a[i].clone();
    }

    -S::from_int(2) * p2.clone() * collapsed + S::from_int(2) * p2.clone() * cross
        - p2 * square_recips
        + p * linear
}
