//! Moments of order statistics on random words with independent,
//! identically geometrically distributed letters.
//!
//! A word is a finite sequence of positive integer letters. Two statistics
//! are covered:
//!
//! * **inversions** — pairs of positions holding letters in strictly
//!   decreasing order;
//! * **Knuth's permutation-in-situ parameter** — pairs (i, j), i < j, whose
//!   left letter is a minimum of the stretch between them (ties count).
//!
//! The crate provides, for both statistics:
//!
//! * exact counting on concrete words, with fast and naive reference
//!   implementations ([`count_inversions`], [`count_knuth_a`], [`Word`]);
//! * closed-form mean, variance, and second factorial moment under the
//!   geometric letter law, generic over the scalar type ([`closed`]);
//! * independent brute-force oracles: weak-order enumeration, truncated
//!   alphabet enclosures, and uniform-permutation enumeration ([`oracle`]);
//! * q-series constants and two-term asymptotic expansions
//!   ([`closed::asymptotic_knuth`], [`closed::asymptotic_inversions`]);
//! * q → 1 permutation limits ([`closed::permutation_limit_moments`]);
//! * reproducible seeded Monte Carlo estimation ([`montecarlo`]).
//!
//! All numeric routines are generic over [`Scalar`]; use [`Exact`] for
//! bit-for-bit rational arithmetic and `f64` for fast floating point.

pub mod closed;
mod error;
mod law;
pub mod montecarlo;
mod moments;
pub mod oracle;
mod scalar;
mod word;

pub use error::{Error, Result};
pub use law::GeometricLaw;
pub use moments::{MomentReport, Provenance};
pub use scalar::{binom2, binom3, falling, Scalar};
pub use word::{
    count_inversions, count_inversions_naive, count_knuth_a, count_knuth_a_naive, Statistic,
    WeakOrderPattern, Word,
};

pub use montecarlo::{estimate_moments, EstimateReport, SimulationConfig, DEFAULT_SEED};

/// Exact rational scalar; the arithmetic of choice for the oracles and any
/// place where answers must be reproduced digit for digit.
pub type Exact = num::BigRational;

/// Floating-point scalar alias, for symmetry with [`Exact`].
pub type Approx = f64;
