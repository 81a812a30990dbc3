//! Independent brute-force oracles: exact enumeration over weak-order
//! patterns, truncated direct summation with rigorous tail intervals, and
//! permutation enumeration for the q → 1 limit.
//!
//! These deliberately use the quadratic reference statistics and share no
//! algebra with the closed forms they are used to check.

mod patterns;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::law::GeometricLaw;
use crate::moments::{MomentReport, Provenance};
use crate::scalar::{binom2, Scalar};
use crate::word::{count_inversions_naive, count_knuth_a_naive, Statistic, WeakOrderPattern};

pub(crate) use patterns::for_each_pattern;
use patterns::{stat_index, CompositionWeights, PatternTally};

/// Largest word length accepted by the weak-order enumeration (7,087,261
/// patterns at n = 9).
pub const MAX_ENUMERATION_LEN: usize = 9;
/// Largest word length accepted by the permutation enumeration (8! = 40,320).
pub const MAX_PERMUTATION_LEN: usize = 8;
/// Cap on Mⁿ for the truncated enumeration.
pub const MAX_TRUNCATED_WORDS: u128 = 100_000_000;

/// Exact probability that a word of n geometric letters realizes `pattern`:
/// p^n · q^(−n) · ∏_j q^(s_j) / (1 − q^(s_j)) over the suffix block sums
/// s_j = m_j + … + m_k.
pub fn pattern_probability<S: Scalar>(pattern: &WeakOrderPattern, law: &GeometricLaw<S>) -> S {
    CompositionWeights::new(pattern.len(), law).probability(pattern.block_sizes())
}

fn enumeration_guard(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_LEN {
        return Err(Error::Capacity {
            what: "weak-order enumeration",
            detail: format!("n = {n} exceeds the limit {MAX_ENUMERATION_LEN}"),
        });
    }
    Ok(())
}

/// Exact moments by full enumeration of weak-order patterns, weighting each
/// pattern by [`pattern_probability`]. Supports 0 ≤ n ≤ 9.
pub fn weak_order_moments<S: Scalar>(
    statistic: Statistic,
    n: usize,
    law: &GeometricLaw<S>,
) -> Result<MomentReport<S>> {
    enumeration_guard(n)?;
    let tally = PatternTally::build(n);
    let weights = CompositionWeights::new(n, law);
    let idx = stat_index(statistic);
    let mut mean = S::zero();
    let mut fact2 = S::zero();
    for (mask, cell) in tally.cells.iter().enumerate() {
        if cell.patterns == 0 {
            continue;
        }
        let prob = weights.probability(&patterns::mask_to_block_sizes(mask, n));
        if cell.stat_sum[idx] > 0 {
            mean = mean + prob.clone() * S::from_count(cell.stat_sum[idx] as usize);
        }
        if cell.fact2_sum[idx] > 0 {
            fact2 = fact2 + prob.clone() * S::from_count(cell.fact2_sum[idx] as usize);
        }
    }
    Ok(MomentReport::from_mean_and_factorial(
        mean,
        fact2,
        Provenance::OracleExact,
    ))
}

/// Exact distribution of a statistic by weak-order enumeration (0 ≤ n ≤ 9).
pub fn distribution<S: Scalar>(
    statistic: Statistic,
    n: usize,
    law: &GeometricLaw<S>,
) -> Result<DistributionTable<S>> {
    enumeration_guard(n)?;
    let max_value = n * n.saturating_sub(1) / 2;
    let cell_count = 1usize << n.saturating_sub(1);
    // counts[mask][y] = number of patterns in the composition class with
    // statistic value y.
    let mut counts = vec![vec![0u64; max_value + 1]; cell_count];
    let mut scratch = Vec::new();
    for_each_pattern(n, &mut |ranks, k| {
        let mask = patterns::composition_mask(ranks, k, &mut scratch);
        let y = match statistic {
            Statistic::Inversions => count_inversions_naive(ranks),
            Statistic::Knuth => count_knuth_a_naive(ranks),
        };
        counts[mask][y as usize] += 1;
    });
    let weights = CompositionWeights::new(n, law);
    let probs: Vec<S> = (0..cell_count)
        .map(|mask| weights.probability(&patterns::mask_to_block_sizes(mask, n)))
        .collect();
    let mut entries = BTreeMap::new();
    for y in 0..=max_value {
        let mut total = S::zero();
        let mut seen = false;
        for mask in 0..cell_count {
            if counts[mask][y] > 0 {
                seen = true;
                total = total + probs[mask].clone() * S::from_count(counts[mask][y] as usize);
            }
        }
        if seen {
            entries.insert(y as u64, total);
        }
    }
    Ok(DistributionTable {
        statistic,
        n,
        law: law.clone(),
        entries,
    })
}

/// Exact probability table of a statistic under a geometric law.
#[derive(Debug, Clone)]
pub struct DistributionTable<S: Scalar> {
    pub statistic: Statistic,
    pub n: usize,
    pub law: GeometricLaw<S>,
    /// value → exact probability, ascending by value.
    pub entries: BTreeMap<u64, S>,
}

impl<S: Scalar> DistributionTable<S> {
    /// Total probability mass (1 exactly in rational mode).
    pub fn total(&self) -> S {
        self.entries
            .values()
            .fold(S::zero(), |acc, p| acc + p.clone())
    }

    pub fn mean(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, (&y, p)| {
            acc + p.clone() * S::from_count(y as usize)
        })
    }

    pub fn second_factorial_moment(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, (&y, p)| {
            acc + p.clone() * S::from_count((y * y.saturating_sub(1)) as usize)
        })
    }

    /// Moments recomputed from the table.
    pub fn moment_report(&self) -> MomentReport<S> {
        MomentReport::from_mean_and_factorial(
            self.mean(),
            self.second_factorial_moment(),
            Provenance::OracleExact,
        )
    }
}

/// Closed interval [lower, upper] that provably contains a value.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds<S: Scalar> {
    pub lower: S,
    pub upper: S,
}

impl<S: Scalar> Bounds<S> {
    pub fn width(&self) -> S {
        self.upper.clone() - self.lower.clone()
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lower <= *x && *x <= self.upper
    }
}

/// Rigorous enclosures of the mean and second factorial moment produced by
/// truncated enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentEnclosure<S: Scalar> {
    pub mean: Bounds<S>,
    pub second_factorial_moment: Bounds<S>,
}

/// Truncated direct summation: enumerates every word in {1..M}^n with its
/// true (unnormalized) probability, then adds the closed tail bound
/// statistic_max · (1 − (1 − q^M)^n) on top of the lower sums.
///
/// The enclosure is independent of the weak-order product formula, which is
/// exactly why it can vouch for it.
pub fn truncated_moments<S: Scalar>(
    statistic: Statistic,
    n: usize,
    law: &GeometricLaw<S>,
    m_bound: usize,
) -> Result<MomentEnclosure<S>> {
    if m_bound == 0 {
        return Err(Error::Capacity {
            what: "truncated enumeration",
            detail: "letter bound M must be at least 1".into(),
        });
    }
    let words = (m_bound as u128).checked_pow(n as u32);
    match words {
        Some(w) if w <= MAX_TRUNCATED_WORDS => {}
        _ => {
            return Err(Error::Capacity {
                what: "truncated enumeration",
                detail: format!("M^n = {m_bound}^{n} exceeds {MAX_TRUNCATED_WORDS}"),
            });
        }
    }

    // Integer statistic sums grouped by the letter total s = Σ x_i, because
    // P(word) = p^n q^(s−n) depends on the word only through s.
    let mut stat_sums = vec![0u64; n * m_bound + 1];
    let mut fact2_sums = vec![0u64; n * m_bound + 1];
    if n > 0 {
        let mut letters = vec![1u64; n];
        let mut total = n;
        'words: loop {
            let y = match statistic {
                Statistic::Inversions => count_inversions_naive(&letters),
                Statistic::Knuth => count_knuth_a_naive(&letters),
            };
            stat_sums[total] += y;
            fact2_sums[total] += y * y.saturating_sub(1);
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'words;
                }
                pos -= 1;
                if letters[pos] < m_bound as u64 {
                    letters[pos] += 1;
                    total += 1;
                    break;
                }
                letters[pos] = 1;
                total -= m_bound - 1;
            }
        }
    }

    let p_pow_n = law.p().powu(n);
    let mut mean_lower = S::zero();
    let mut fact2_lower = S::zero();
    let mut q_pow = S::one(); // q^(s − n), starting at s = n
    for s in n..=n * m_bound {
        if stat_sums[s] > 0 {
            mean_lower = mean_lower + q_pow.clone() * S::from_count(stat_sums[s] as usize);
        }
        if fact2_sums[s] > 0 {
            fact2_lower = fact2_lower + q_pow.clone() * S::from_count(fact2_sums[s] as usize);
        }
        q_pow = q_pow * law.q().clone();
    }
    mean_lower = mean_lower * p_pow_n.clone();
    fact2_lower = fact2_lower * p_pow_n;

    // Mass outside {1..M}^n, with the statistic bounded by C(n,2) and the
    // factorial product by C(n,2)².
    let tail = S::one() - (S::one() - law.q().powu(m_bound)).powu(n);
    let stat_cap: S = binom2(n as i128);
    let mean_upper = mean_lower.clone() + stat_cap.clone() * tail.clone();
    let fact2_upper = fact2_lower.clone() + stat_cap.clone() * stat_cap * tail;

    Ok(MomentEnclosure {
        mean: Bounds {
            lower: mean_lower,
            upper: mean_upper,
        },
        second_factorial_moment: Bounds {
            lower: fact2_lower,
            upper: fact2_upper,
        },
    })
}

/// Exact moments of a statistic over uniformly random permutations of
/// {1..n}, by full enumeration (n ≤ 8). This is the q → 1 limit oracle.
pub fn permutation_enumeration_moments<S: Scalar>(
    statistic: Statistic,
    n: usize,
) -> Result<MomentReport<S>> {
    if n > MAX_PERMUTATION_LEN {
        return Err(Error::Capacity {
            what: "permutation enumeration",
            detail: format!("n = {n} exceeds the limit {MAX_PERMUTATION_LEN}"),
        });
    }
    let mut stat_sum = 0u64;
    let mut fact2_sum = 0u64;
    let mut perms = 0u64;
    let mut visit = |a: &[u64]| {
        let y = match statistic {
            Statistic::Inversions => count_inversions_naive(a),
            Statistic::Knuth => count_knuth_a_naive(a),
        };
        stat_sum += y;
        fact2_sum += y * y.saturating_sub(1);
        perms += 1;
    };

    // Heap's algorithm.
    let mut a: Vec<u64> = (1..=n as u64).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }

    let count = S::from_count(perms as usize);
    Ok(MomentReport::from_mean_and_factorial(
        S::from_count(stat_sum as usize) / count.clone(),
        S::from_count(fact2_sum as usize) / count,
        Provenance::OracleExact,
    ))
}
