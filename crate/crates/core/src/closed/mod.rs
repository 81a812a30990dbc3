//! Closed-form moment evaluators for the two word statistics, their
//! asymptotic expansions, the q → 1 permutation limits, and the
//! rearrangement identities backing the second-moment algebra.

mod identities;
mod inversions;
mod knuth;
mod limits;
mod qseries;

pub use identities::{check_rearrangement_identities, IdentityReport};
pub use inversions::{
    asymptotic_inversions, inversion_moment_components, mean_inversions,
    second_factorial_moment_inversions, variance_inversions, InversionComponents,
};
pub use knuth::{
    knuth_second_factorial_moment, mean_knuth, mean_knuth_pair_sum, variance_knuth, Stage,
};
pub use limits::{harmonic, permutation_limit_moments, HarmonicPair};
pub use qseries::{alpha, asymptotic_knuth, beta, QSeriesConstants, SeriesValue};

use crate::law::GeometricLaw;
use crate::moments::{MomentReport, Provenance};
use crate::scalar::Scalar;
use crate::word::Statistic;

/// Full closed-form moment report for either statistic.
pub fn closed_moments<S: Scalar>(
    statistic: Statistic,
    n: usize,
    law: &GeometricLaw<S>,
) -> MomentReport<S> {
    match statistic {
        Statistic::Inversions => MomentReport::from_mean_and_factorial(
            mean_inversions(n, law),
            second_factorial_moment_inversions(n, law),
            Provenance::ClosedForm,
        ),
        Statistic::Knuth => MomentReport::from_mean_and_factorial(
            mean_knuth(n, law),
            knuth_second_factorial_moment(n, law, Stage::Final),
            Provenance::ClosedForm,
        ),
    }
}
