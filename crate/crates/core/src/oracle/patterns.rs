//! Weak-order pattern enumeration and per-composition tallies.
//!
//! The probability of a pattern depends only on its ordered block sizes
//! (its composition of n), never on which positions fall in which block.
//! The enumeration therefore accumulates pure integer statistics per
//! composition, and rational arithmetic happens once per composition
//! (2^(n−1) cells) instead of once per pattern (Fubini(n) of them).

use crate::law::GeometricLaw;
use crate::scalar::Scalar;
use crate::word::{count_inversions_naive, count_knuth_a_naive, Statistic};

/// Visits every canonical weak-order pattern of length `n` exactly once, as
/// a rank slice plus its block count. Deterministic depth-first order:
/// position t+1 first joins each existing rank 1..=k ascending, then opens
/// a new rank at each slot 1..=k+1 ascending.
pub(crate) fn for_each_pattern<F: FnMut(&[usize], usize)>(n: usize, f: &mut F) {
    let mut ranks: Vec<usize> = Vec::with_capacity(n);
    descend(&mut ranks, 0, n, f);
}

fn descend<F: FnMut(&[usize], usize)>(ranks: &mut Vec<usize>, k: usize, n: usize, f: &mut F) {
    if ranks.len() == n {
        f(ranks, k);
        return;
    }
    for r in 1..=k {
        ranks.push(r);
        descend(ranks, k, n, f);
        ranks.pop();
    }
    for r in 1..=k + 1 {
        // Opening rank r pushes every existing rank ≥ r up by one.
        for x in ranks.iter_mut() {
            if *x >= r {
                *x += 1;
            }
        }
        ranks.push(r);
        descend(ranks, k + 1, n, f);
        ranks.pop();
        for x in ranks.iter_mut() {
            if *x > r {
                *x -= 1;
            }
        }
    }
}

/// Composition of n encoded as a bitmask: bit c−1 is set iff a block
/// boundary falls right after position c (1 ≤ c < n).
pub(crate) fn composition_mask(ranks: &[usize], k: usize, counts_scratch: &mut Vec<usize>) -> usize {
    counts_scratch.clear();
    counts_scratch.resize(k, 0);
    for &r in ranks {
        counts_scratch[r - 1] += 1;
    }
    let mut mask = 0usize;
    let mut cut = 0usize;
    for &m in counts_scratch.iter().take(k.saturating_sub(1)) {
        cut += m;
        mask |= 1 << (cut - 1);
    }
    mask
}

/// Inverse of [`composition_mask`]: ordered block sizes m_1..m_k.
pub(crate) fn mask_to_block_sizes(mask: usize, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut prev = 0usize;
    for c in 1..n {
        if mask & (1 << (c - 1)) != 0 {
            sizes.push(c - prev);
            prev = c;
        }
    }
    if n > 0 {
        sizes.push(n - prev);
    }
    sizes
}

/// Integer sums of both statistics over all patterns, grouped by
/// composition. All arithmetic is exact u64; values stay far below 2^63
/// for n ≤ 9 (≈7.1e6 patterns × statistic ≤ 36).
#[derive(Debug, Clone, Default)]
pub(crate) struct CompositionCell {
    pub patterns: u64,
    /// Σ y over patterns in the cell, per statistic.
    pub stat_sum: [u64; 2],
    /// Σ y(y−1) over patterns in the cell, per statistic.
    pub fact2_sum: [u64; 2],
}

pub(crate) fn stat_index(s: Statistic) -> usize {
    match s {
        Statistic::Inversions => 0,
        Statistic::Knuth => 1,
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PatternTally {
    /// Indexed by composition mask; length 2^(n−1) (one cell for n ≤ 1).
    pub cells: Vec<CompositionCell>,
}

impl PatternTally {
    pub fn build(n: usize) -> Self {
        let mut cells = vec![CompositionCell::default(); 1usize << n.saturating_sub(1)];
        let mut counts_scratch = Vec::new();
        for_each_pattern(n, &mut |ranks, k| {
            let mask = composition_mask(ranks, k, &mut counts_scratch);
            let cell = &mut cells[mask];
            cell.patterns += 1;
            let inv = count_inversions_naive(ranks);
            let knu = count_knuth_a_naive(ranks);
            cell.stat_sum[0] += inv;
            cell.fact2_sum[0] += inv * inv.saturating_sub(1);
            cell.stat_sum[1] += knu;
            cell.fact2_sum[1] += knu * knu.saturating_sub(1);
        });
        Self { cells }
    }
}

/// Per-(n, law) tables turning a composition into its exact probability:
/// prob(m_1..m_k) = p^n · q^(Σ s_j − n) / ∏_j (1 − q^(s_j)) with
/// s_j = m_j + … + m_k the suffix block sums.
pub(crate) struct CompositionWeights<S: Scalar> {
    p_pow_n: S,
    q_pow: Vec<S>,
    /// recip[s] = 1/(1 − q^s), s ≥ 1.
    recip: Vec<S>,
}

impl<S: Scalar> CompositionWeights<S> {
    pub fn new(n: usize, law: &GeometricLaw<S>) -> Self {
        // Σ s_j is at most n(n+1)/2 (all blocks singletons).
        let max_exp = n * (n + 1) / 2;
        let mut q_pow = Vec::with_capacity(max_exp + 1);
        q_pow.push(S::one());
        for s in 1..=max_exp {
            q_pow.push(q_pow[s - 1].clone() * law.q().clone());
        }
        let recip: Vec<S> = (0..=n)
            .map(|s| {
                if s == 0 {
                    S::one()
                } else {
                    S::one() / (S::one() - q_pow[s].clone())
                }
            })
            .collect();
        Self {
            p_pow_n: law.p().powu(n),
            q_pow,
            recip,
        }
    }

    pub fn probability(&self, block_sizes: &[usize]) -> S {
        let n: usize = block_sizes.iter().sum();
        let mut prob = self.p_pow_n.clone();
        let mut suffix = n;
        let mut exponent_sum = 0usize;
        for &m in block_sizes {
            exponent_sum += suffix;
            prob = prob * self.recip[suffix].clone();
            suffix -= m;
        }
        prob * self.q_pow[exponent_sum - n].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_counts_match_the_ordered_set_partition_numbers() {
        // 1, 1, 3, 13, 75, 541, 4683, 47293 patterns for n = 0..=7.
        let expected = [1u64, 1, 3, 13, 75, 541, 4683, 47293];
        for (n, &want) in expected.iter().enumerate() {
            let mut count = 0u64;
            for_each_pattern(n, &mut |_, _| count += 1);
            assert_eq!(count, want, "n = {n}");
        }
    }

    #[test]
    fn every_visited_pattern_is_canonical() {
        for_each_pattern(4, &mut |ranks, k| {
            let p = crate::word::WeakOrderPattern::from_ranks(ranks.to_vec()).unwrap();
            assert_eq!(p.block_count(), k);
        });
    }

    #[test]
    fn masks_round_trip_through_block_sizes() {
        let n = 6;
        let mut scratch = Vec::new();
        for_each_pattern(n, &mut |ranks, k| {
            let mask = composition_mask(ranks, k, &mut scratch);
            let sizes = mask_to_block_sizes(mask, n);
            let p = crate::word::WeakOrderPattern::from_ranks(ranks.to_vec()).unwrap();
            assert_eq!(sizes, p.block_sizes());
        });
    }

    #[test]
    fn tally_pattern_totals() {
        let tally = PatternTally::build(5);
        let total: u64 = tally.cells.iter().map(|c| c.patterns).sum();
        assert_eq!(total, 541);
        // Compositions of 5: every mask over 4 cut positions occurs.
        assert!(tally.cells.iter().all(|c| c.patterns > 0));
    }
}
