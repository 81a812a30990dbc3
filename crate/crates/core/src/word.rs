//! Words of positive integer letters and the two statistics studied by this
//! crate: the inversion count and Knuth's in-situ permutation parameter.
//!
//! Each statistic ships in two forms: an efficient algorithm used everywhere,
//! and a quadratic reference that follows the definition literally. The
//! references stay public so test suites and the enumeration oracles can
//! count against an implementation that shares no code with the fast path.

use crate::error::{Error, Result};

/// Which of the two word statistics is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Pairs i < j with x_i > x_j (ties do not count).
    Inversions,
    /// Pairs i < j with x_i = min(x_i, …, x_j) (ties do count).
    Knuth,
}

impl Statistic {
    pub const ALL: [Statistic; 2] = [Statistic::Inversions, Statistic::Knuth];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Inversions => "inversions",
            Statistic::Knuth => "knuth",
        }
    }
}

impl std::fmt::Display for Statistic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite word of positive integer letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u64>,
}

impl Word {
    /// Validates that every letter is ≥ 1.
    pub fn new(letters: Vec<u64>) -> Result<Self> {
        if let Some(position) = letters.iter().position(|&x| x == 0) {
            return Err(Error::NonPositiveLetter { position });
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[u64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of pairs i < j with x_i > x_j.
    pub fn inversions(&self) -> u64 {
        count_inversions(&self.letters)
    }

    /// Knuth's parameter a: pairs i < j with x_i minimal in x_i..=x_j.
    pub fn knuth_a(&self) -> u64 {
        count_knuth_a(&self.letters)
    }

    pub fn statistic(&self, s: Statistic) -> u64 {
        match s {
            Statistic::Inversions => self.inversions(),
            Statistic::Knuth => self.knuth_a(),
        }
    }

    /// Canonical tie-aware rank pattern of this word.
    pub fn weak_order_pattern(&self) -> WeakOrderPattern {
        let mut sorted: Vec<u64> = self.letters.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let ranks: Vec<usize> = self
            .letters
            .iter()
            .map(|x| sorted.partition_point(|v| v < x) + 1)
            .collect();
        let mut block_sizes = vec![0usize; sorted.len()];
        for &r in &ranks {
            block_sizes[r - 1] += 1;
        }
        WeakOrderPattern { ranks, block_sizes }
    }
}

/// Merge-based inversion count, O(n log n). Ties merge from the left run
/// first so equal letters never count.
pub fn count_inversions<T: Ord + Copy>(xs: &[T]) -> u64 {
    let mut buf = xs.to_vec();
    let mut scratch = buf.clone();
    count_inversions_in_place(&mut buf, &mut scratch)
}

/// Sorts `a` while counting inversions; `scratch` must have the same length.
pub(crate) fn count_inversions_in_place<T: Ord + Copy>(a: &mut [T], scratch: &mut [T]) -> u64 {
    let n = a.len();
    debug_assert_eq!(scratch.len(), n);
    let mut inv = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo + width < n {
            let mid = lo + width;
            let hi = usize::min(lo + 2 * width, n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if a[j] < a[i] {
                    inv += (mid - i) as u64;
                    scratch[k] = a[j];
                    j += 1;
                } else {
                    scratch[k] = a[i];
                    i += 1;
                }
                k += 1;
            }
            scratch[k..k + (mid - i)].copy_from_slice(&a[i..mid]);
            scratch[k + (mid - i)..hi].copy_from_slice(&a[j..hi]);
            a[lo..hi].copy_from_slice(&scratch[lo..hi]);
            lo += 2 * width;
        }
        width *= 2;
    }
    inv
}

/// Quadratic inversion count straight from the definition.
pub fn count_inversions_naive<T: Ord>(xs: &[T]) -> u64 {
    let mut inv = 0u64;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Knuth's parameter in O(n): a pair (i, j) counts exactly when j lies
/// before the next letter strictly smaller than x_i, so a monotone stack
/// that pops on strict decrease yields every i's boundary in one pass.
pub fn count_knuth_a<T: Ord>(xs: &[T]) -> u64 {
    let n = xs.len();
    let mut total = 0u64;
    let mut stack: Vec<usize> = Vec::new();
    for j in 0..n {
        while let Some(&i) = stack.last() {
            if xs[i] > xs[j] {
                total += (j - i - 1) as u64;
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(j);
    }
    while let Some(i) = stack.pop() {
        total += (n - i - 1) as u64;
    }
    total
}

/// Quadratic reference for Knuth's parameter: tracks the window minimum and
/// counts the pair while x_i still attains it.
pub fn count_knuth_a_naive<T: Ord>(xs: &[T]) -> u64 {
    let mut total = 0u64;
    for i in 0..xs.len() {
        let mut window_min = &xs[i];
        for j in i + 1..xs.len() {
            if xs[j] < *window_min {
                window_min = &xs[j];
            }
            if *window_min == xs[i] {
                total += 1;
            }
        }
    }
    total
}

/// Canonical weak-order pattern: order- and tie-preserving ranks 1..=k
/// (every rank occurring at least once) plus the block sizes m_1..m_k of
/// each rank class. Both word statistics depend on a word only through its
/// pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakOrderPattern {
    ranks: Vec<usize>,
    block_sizes: Vec<usize>,
}

impl WeakOrderPattern {
    /// Validates that `ranks` is surjective onto 1..=k.
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let k = ranks.iter().copied().max().unwrap_or(0);
        if ranks.iter().any(|&r| r == 0) {
            return Err(Error::InvalidPattern {
                reason: "ranks start at 1".into(),
            });
        }
        let mut block_sizes = vec![0usize; k];
        for &r in &ranks {
            block_sizes[r - 1] += 1;
        }
        if let Some(missing) = block_sizes.iter().position(|&m| m == 0) {
            return Err(Error::InvalidPattern {
                reason: format!("rank {} never occurs", missing + 1),
            });
        }
        Ok(Self { ranks, block_sizes })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// m_1..m_k: how many positions carry each rank.
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Number of distinct letter values k.
    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// The canonical representative word whose letters are the ranks.
    pub fn as_word(&self) -> Word {
        Word::new(self.ranks.iter().map(|&r| r as u64).collect())
            .expect("ranks are positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(xs: &[u64]) -> Word {
        Word::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn rejects_zero_letters() {
        assert!(matches!(
            Word::new(vec![2, 0, 1]),
            Err(Error::NonPositiveLetter { position: 1 })
        ));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(word(&[1, 2, 3]).inversions(), 0);
        assert_eq!(word(&[2, 1]).inversions(), 1);
        assert_eq!(word(&[2, 2]).inversions(), 0);
        assert_eq!(word(&[3, 1, 2]).inversions(), 2);
        assert_eq!(word(&[]).inversions(), 0);
        assert_eq!(word(&[7]).inversions(), 0);
    }

    #[test]
    fn knuth_examples() {
        assert_eq!(word(&[1, 1, 1]).knuth_a(), 3);
        assert_eq!(word(&[3, 2, 1]).knuth_a(), 0);
        assert_eq!(word(&[2, 1, 3]).knuth_a(), 1);
        assert_eq!(word(&[1, 2, 3]).knuth_a(), 3);
        assert_eq!(word(&[]).knuth_a(), 0);
        assert_eq!(word(&[5]).knuth_a(), 0);
    }

    #[test]
    fn fast_and_naive_agree_on_fixed_words() {
        let words: [&[u64]; 8] = [
            &[],
            &[4],
            &[2, 2, 2, 2],
            &[1, 5, 2, 5, 3],
            &[9, 8, 7, 6, 5, 4],
            &[1, 2, 1, 2, 1, 2],
            &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5],
            &[2, 7, 1, 8, 2, 8, 1, 8, 2, 8],
        ];
        for xs in words {
            assert_eq!(count_inversions(xs), count_inversions_naive(xs), "{xs:?}");
            assert_eq!(count_knuth_a(xs), count_knuth_a_naive(xs), "{xs:?}");
        }
    }

    #[test]
    fn extreme_words() {
        // Strictly decreasing: all pairs inverted, no left minima pairs.
        let dec: Vec<u64> = (1..=9).rev().collect();
        assert_eq!(word(&dec).inversions(), 36);
        assert_eq!(word(&dec).knuth_a(), 0);
        // Non-decreasing: no inversions, every pair counts for Knuth.
        let inc: Vec<u64> = vec![1, 1, 2, 3, 3, 3, 4];
        assert_eq!(word(&inc).inversions(), 0);
        assert_eq!(word(&inc).knuth_a(), 21);
    }

    #[test]
    fn weak_order_pattern_examples() {
        let p = word(&[5, 2, 5]).weak_order_pattern();
        assert_eq!(p.ranks(), &[2, 1, 2]);
        assert_eq!(p.block_sizes(), &[1, 2]);

        let p = word(&[4, 4, 9, 1]).weak_order_pattern();
        assert_eq!(p.ranks(), &[2, 2, 3, 1]);
        assert_eq!(p.block_sizes(), &[1, 2, 1]);

        let p = word(&[]).weak_order_pattern();
        assert_eq!(p.block_count(), 0);
        assert!(p.is_empty());
    }

    #[test]
    fn pattern_validation() {
        assert!(WeakOrderPattern::from_ranks(vec![2, 1, 2]).is_ok());
        assert!(WeakOrderPattern::from_ranks(vec![]).is_ok());
        // Rank 2 missing.
        assert!(WeakOrderPattern::from_ranks(vec![1, 3, 1]).is_err());
        assert!(WeakOrderPattern::from_ranks(vec![0, 1]).is_err());
    }

    #[test]
    fn statistics_are_pattern_invariant_on_samples() {
        let samples: [&[u64]; 4] = [
            &[5, 2, 5],
            &[4, 4, 9, 1],
            &[10, 20, 10, 30, 20],
            &[8, 3, 3, 8, 1, 9, 9],
        ];
        for xs in samples {
            let w = word(xs);
            let rep = w.weak_order_pattern().as_word();
            assert_eq!(w.inversions(), rep.inversions());
            assert_eq!(w.knuth_a(), rep.knuth_a());
        }
    }
}
