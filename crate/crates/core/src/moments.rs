use crate::scalar::Scalar;

/// How a numeric result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Evaluated closed-form expression.
    ClosedForm,
    /// Exact enumeration (weak-order patterns or permutations).
    OracleExact,
    /// Truncated enumeration with a rigorous tail interval.
    OracleEnclosure,
    /// Monte Carlo estimate.
    MonteCarlo,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::OracleExact => "oracle-exact",
            Provenance::OracleEnclosure => "oracle-enclosure",
            Provenance::MonteCarlo => "monte-carlo",
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Mean, second factorial moment E[Y(Y−1)] and variance of a statistic,
/// tagged with how the numbers were produced.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport<S: Scalar> {
    pub mean: S,
    pub second_factorial_moment: S,
    pub variance: S,
    pub provenance: Provenance,
    /// Width of the enclosing interval when the values are midpoints of an
    /// enclosure rather than exact.
    pub enclosure_width: Option<S>,
}

impl<S: Scalar> MomentReport<S> {
    /// Builds a report from mean and second factorial moment, deriving the
    /// variance through V = E[Y(Y−1)] + E[Y] − E[Y]² so the identity holds
    /// by construction.
    pub fn from_mean_and_factorial(mean: S, second_factorial_moment: S, provenance: Provenance) -> Self {
        let variance = second_factorial_moment.clone() + mean.clone() - mean.clone() * mean.clone();
        Self {
            mean,
            second_factorial_moment,
            variance,
            provenance,
            enclosure_width: None,
        }
    }
}
