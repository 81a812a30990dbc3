//! Seeded Monte Carlo estimation of the moments of either word statistic.
//!
//! Reproducibility contract: a run is a pure function of the configuration.
//! Each sample owns a counter-based random stream derived from (seed, sample
//! index), samples are processed in fixed 2^16-sample chunks, each chunk is
//! accumulated sequentially, and chunk summaries are merged in chunk order.
//! Worker count only changes which thread computes a chunk, never the
//! result, so reports are bit-identical across any `workers` setting.

use rayon::prelude::*;

use crate::law::GeometricLaw;
use crate::word::{count_inversions_in_place, count_knuth_a, Statistic};

/// Default seed for simulations when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;

/// Samples per deterministic work unit.
const CHUNK: u64 = 1 << 16;

const GOLDEN: u64 = 0x9E3779B97F4A7C15;
const GAMMA: u64 = 0xD1B54A32D192ED03;

/// SplitMix64 finalizer; full-period bijective mixer on u64.
fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58476D1CE4E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Counter-based generator giving every sample index its own stateless
/// stream: no sequential dependence between samples, so any partition of the
/// index range draws identical values.
#[derive(Debug, Clone)]
pub struct CounterRng {
    base: u64,
    counter: u64,
}

impl CounterRng {
    pub fn for_sample(seed: u64, index: u64) -> Self {
        Self {
            base: mix64(seed ^ GOLDEN.wrapping_mul(index.wrapping_add(1))),
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix64(self.base ^ GAMMA.wrapping_mul(self.counter))
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Inverse-CDF draw: smallest k ≥ 1 with 1 − q^k ≥ u. The q = 0 case falls
/// out naturally (ln 0 = −∞ sends the ratio to 0, clamped up to 1).
pub fn sample_geometric(law: &GeometricLaw<f64>, u: f64) -> u64 {
    let k = ((1.0 - u).ln() / law.q().ln()).ceil();
    assert!(
        k < u64::MAX as f64,
        "geometric draw overflowed a u64 (q = {}, u = {u})",
        law.q()
    );
    (k as u64).max(1)
}

/// Streaming mean/M2 accumulator (Welford update, pairwise merge).
#[derive(Debug, Clone, Copy, PartialEq)]
struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    fn new() -> Self {
        Self {
            count: 0,
            mean: 0.0,
            m2: 0.0,
        }
    }

    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        Self {
            count: n,
            mean: self.mean + delta * (other.count as f64 / n as f64),
            m2: self.m2
                + other.m2
                + delta * delta * (self.count as f64 * other.count as f64 / n as f64),
        }
    }

    fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

/// What to simulate and how.
#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub statistic: Statistic,
    pub n: usize,
    pub law: GeometricLaw<f64>,
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; 0 lets the thread pool pick.
    pub workers: usize,
}

/// Estimated moments of the statistic, with the standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    pub samples: u64,
}

fn run_chunk(config: &SimulationConfig, chunk_index: u64) -> RunningMoments {
    let lo = chunk_index * CHUNK;
    let hi = (lo + CHUNK).min(config.samples);
    let mut letters = vec![0u64; config.n];
    let mut scratch = vec![0u64; config.n];
    let mut acc = RunningMoments::new();
    for sample in lo..hi {
        let mut rng = CounterRng::for_sample(config.seed, sample);
        for slot in letters.iter_mut() {
            *slot = sample_geometric(&config.law, rng.next_unit());
        }
        let value = match config.statistic {
            Statistic::Inversions => count_inversions_in_place(&mut letters, &mut scratch),
            Statistic::Knuth => count_knuth_a(&letters),
        };
        acc.push(value as f64);
    }
    acc
}

/// Runs the simulation described by `config` and reports estimated mean,
/// sample variance, and the standard error of the mean estimate.
pub fn estimate_moments(config: &SimulationConfig) -> EstimateReport {
    let chunks = config.samples.div_ceil(CHUNK);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .expect("failed to build simulation thread pool");
    let parts: Vec<RunningMoments> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(config, c))
            .collect()
    });
    // collect() preserves chunk order, so this fold is identical no matter
    // how chunks were scheduled across threads.
    let total = parts
        .into_iter()
        .fold(RunningMoments::new(), RunningMoments::merge);
    let variance = total.sample_variance();
    let std_error = if total.count == 0 {
        0.0
    } else {
        (variance / total.count as f64).sqrt()
    };
    EstimateReport {
        mean: total.mean,
        variance,
        std_error,
        samples: total.count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cdf_hand_values() {
        let half = GeometricLaw::new(0.5).unwrap();
        assert_eq!(sample_geometric(&half, 0.4), 1);
        assert_eq!(sample_geometric(&half, 0.6), 2);
        assert_eq!(sample_geometric(&half, 0.75), 2);
        assert_eq!(sample_geometric(&half, 0.0), 1);
        let degenerate = GeometricLaw::new(0.0).unwrap();
        for u in [0.0, 0.3, 0.999_999] {
            assert_eq!(sample_geometric(&degenerate, u), 1);
        }
    }

    #[test]
    fn first_letter_marginal_matches_pmf() {
        // P{X = 1} = 1/2 at q = 1/2; a million independent draws should
        // land within 5 standard deviations of it.
        let law = GeometricLaw::new(0.5).unwrap();
        let draws = 1_000_000u64;
        let mut ones = 0u64;
        for i in 0..draws {
            let mut rng = CounterRng::for_sample(DEFAULT_SEED, i);
            if sample_geometric(&law, rng.next_unit()) == 1 {
                ones += 1;
            }
        }
        let freq = ones as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 5.0 * (0.25f64 / draws as f64).sqrt());
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let base = SimulationConfig {
            statistic: Statistic::Knuth,
            n: 12,
            law: GeometricLaw::new(0.6).unwrap(),
            samples: 200_000,
            seed: DEFAULT_SEED,
            workers: 1,
        };
        let reference = estimate_moments(&base);
        for workers in [2, 3, 8] {
            let mut config = base.clone();
            config.workers = workers;
            assert_eq!(estimate_moments(&config), reference);
        }
        assert!(reference.samples == 200_000 && reference.std_error > 0.0);
    }

    #[test]
    fn single_letter_words_have_zero_statistics() {
        for statistic in Statistic::ALL {
            let config = SimulationConfig {
                statistic,
                n: 1,
                law: GeometricLaw::new(0.4).unwrap(),
                samples: 10_000,
                seed: 7,
                workers: 1,
            };
            let report = estimate_moments(&config);
            assert_eq!(report.mean, 0.0);
            assert_eq!(report.variance, 0.0);
        }
    }

    #[test]
    fn estimates_track_the_two_letter_expectations() {
        // Closed two-letter values at q = 1/2: mean 1/3, variance 2/9.
        let config = SimulationConfig {
            statistic: Statistic::Inversions,
            n: 2,
            law: GeometricLaw::new(0.5).unwrap(),
            samples: 300_000,
            seed: DEFAULT_SEED,
            workers: 2,
        };
        let report = estimate_moments(&config);
        assert!((report.mean - 1.0 / 3.0).abs() < 5.0 * report.std_error);
        assert!((report.variance - 2.0 / 9.0).abs() < 0.01);
    }
}
