//! Rearrangement identities used to collapse the quadruple interval sums in
//! the second-moment analysis into short single and double sums.
//!
//! Identities 1–6 are pure summation rearrangements, valid for an arbitrary
//! sequence a_1, …, a_n. Each check recomputes the left side by brute force
//! over index tuples and the right side from the collapsed form, so a
//! passing report certifies the collapsed expressions used by the
//! closed-form evaluators. Identity 7 is the partial-fraction step that is
//! specific to a_i = 1/(1−q^i); it takes its sequence from `law`, ignoring
//! the caller-supplied one.

use crate::law::GeometricLaw;
use crate::scalar::{binom2, Scalar};

/// Outcome of checking the seven rearrangement identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// `holds[k]` is the verdict for identity k+1.
    pub holds: [bool; 7],
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

/// Checks the seven identities for the sequence `a[0..n]` (interpreted
/// 1-indexed: a_i = a[i−1]) and the given law. Comparisons are exact, so an
/// exact scalar type is expected; floating point may report spurious
/// failures from roundoff.
///
/// # Panics
/// If `a` has fewer than `n` entries.
pub fn check_rearrangement_identities<S: Scalar>(
    a: &[S],
    n: usize,
    law: &GeometricLaw<S>,
) -> IdentityReport {
    assert!(a.len() >= n, "need {n} sequence entries, got {}", a.len());
    let av = |i: usize| a[i - 1].clone();
    let mut holds = [false; 7];

    // 1: Σ_{j<k<l<m} a_{k+1−j} a_{m+1−l}
    //    = Σ_{2≤i,j≤n−2, i+j≤n} a_i a_j C(n+2−i−j, 2).
    let mut lhs = S::zero();
    for j in 1..=n {
        for k in j + 1..=n {
            for l in k + 1..=n {
                for m in l + 1..=n {
                    lhs = lhs + av(k + 1 - j) * av(m + 1 - l);
                }
            }
        }
    }
    let mut rhs = S::zero();
    if n >= 4 {
        for i in 2..=n - 2 {
            for j in 2..=n - 2 {
                if i + j <= n {
                    rhs = rhs + av(i) * av(j) * binom2::<S>((n + 2 - i - j) as i128);
                }
            }
        }
    }
    holds[0] = lhs == rhs;

    // 2: Σ_{j<l<m<k} a_{k+1−j} a_{m+1−l} = Σ_{i<j} a_i a_j (n+1−j)(j−i−1).
    let mut lhs = S::zero();
    for j in 1..=n {
        for l in j + 1..=n {
            for m in l + 1..=n {
                for k in m + 1..=n {
                    lhs = lhs + av(k + 1 - j) * av(m + 1 - l);
                }
            }
        }
    }
    let mut rhs = S::zero();
    for i in 2..=n {
        for j in i + 1..=n {
            rhs = rhs + av(i) * av(j) * S::from_count((n + 1 - j) * (j - i - 1));
        }
    }
    holds[1] = lhs == rhs;

    // 3: Σ_{j<l<m} a_{m+1−j} a_{m+1−l} (m−l−1)
    //    = Σ_{3≤i<j} a_i a_j (n+1−j)(i−2).
    let mut lhs = S::zero();
    for j in 1..=n {
        for l in j + 1..=n {
            for m in l + 1..=n {
                lhs = lhs + av(m + 1 - j) * av(m + 1 - l) * S::from_count(m - l - 1);
            }
        }
    }
    let mut rhs = S::zero();
    for i in 3..=n {
        for j in i + 1..=n {
            rhs = rhs + av(i) * av(j) * S::from_count((n + 1 - j) * (i - 2));
        }
    }
    holds[2] = lhs == rhs;

    // 4 and 5 are the same rearrangement written with two different inner
    // index names; both are checked against the shared collapsed form
    // Σ_{i<j} a_i a_j (n+1−j).
    let mut rhs45 = S::zero();
    for i in 2..=n {
        for j in i + 1..=n {
            rhs45 = rhs45 + av(i) * av(j) * S::from_count(n + 1 - j);
        }
    }
    let mut lhs = S::zero();
    for j in 1..=n {
        for k in j + 1..=n {
            for m in k + 1..=n {
                lhs = lhs + av(m + 1 - j) * av(m + 1 - k);
            }
        }
    }
    holds[3] = lhs == rhs45;
    let mut lhs = S::zero();
    for j in 1..=n {
        for l in j + 1..=n {
            for m in l + 1..=n {
                lhs = lhs + av(m + 1 - j) * av(m + 1 - l);
            }
        }
    }
    holds[4] = lhs == rhs45;

    // 6: Σ_{j<m} (m−j−1) a_{m+1−j} = Σ_{3≤i} a_i (i−2)(n+1−i).
    let mut lhs = S::zero();
    for j in 1..=n {
        for m in j + 1..=n {
            lhs = lhs + S::from_count(m - j - 1) * av(m + 1 - j);
        }
    }
    let mut rhs = S::zero();
    for i in 3..=n {
        rhs = rhs + av(i) * S::from_count((i - 2) * (n + 1 - i));
    }
    holds[5] = lhs == rhs;

    // 7: for every 2 ≤ m ≤ n, with r_i = 1/(1−q^i):
    //    Σ_{i<m} r_i r_{m−i} = −(m−1) r_m + 2 r_m Σ_{i<m} r_i.
    // Specific to the geometric reciprocal sequence, hence drawn from `law`.
    let q = law.q().clone();
    let mut q_pow = vec![S::one(); n + 1];
    for i in 1..=n {
        q_pow[i] = q_pow[i - 1].clone() * q.clone();
    }
    let r: Vec<S> = (0..=n)
        .map(|i| {
            if i == 0 {
                S::zero()
            } else {
                S::one() / (S::one() - q_pow[i].clone())
            }
        })
        .collect();
    let mut ok = true;
    for m in 2..=n {
        let mut conv = S::zero();
        let mut prefix = S::zero();
        for i in 1..m {
            conv = conv + r[i].clone() * r[m - i].clone();
            prefix = prefix + r[i].clone();
        }
        let rhs = (S::from_int(2) * prefix - S::from_count(m - 1)) * r[m].clone();
        if conv != rhs {
            ok = false;
        }
    }
    holds[6] = ok;

    IdentityReport { holds }
}
