use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Geometric letter distribution on {1, 2, 3, …}: P{X = k} = p·q^(k−1)
/// with p = 1 − q.
///
/// Valid parameters are 0 ≤ q < 1. q = 0 is the degenerate law (every
/// letter equals 1); q = 1 is rejected — the uniform-permutation limit is
/// served by [`crate::closed::permutation_limit_moments`] instead.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricLaw<S: Scalar> {
    q: S,
    p: S,
}

impl<S: Scalar> GeometricLaw<S> {
    pub fn new(q: S) -> Result<Self> {
        // NaN fails both comparisons, so it is rejected as well.
        if !(q >= S::zero() && q < S::one()) {
            return Err(Error::QOutOfRange { q: q.to_string() });
        }
        let p = S::one() - q.clone();
        Ok(Self { q, p })
    }

    /// Tail ratio q.
    pub fn q(&self) -> &S {
        &self.q
    }

    /// Success probability p = 1 − q.
    pub fn p(&self) -> &S {
        &self.p
    }

    /// P{X = k} for k ≥ 1.
    pub fn pmf(&self, k: u64) -> S {
        assert!(k >= 1, "letters start at 1");
        self.p.clone() * self.q.powu((k - 1) as usize)
    }

    /// P{X ≤ k} = 1 − q^k.
    pub fn cdf(&self, k: u64) -> S {
        S::one() - self.q.powu(k as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;

    #[test]
    fn accepts_the_half_open_unit_interval() {
        assert!(GeometricLaw::new(0.0).is_ok());
        assert!(GeometricLaw::new(0.999).is_ok());
        assert!(GeometricLaw::new(Exact::ratio(1, 2)).is_ok());
        assert!(matches!(
            GeometricLaw::new(1.0),
            Err(Error::QOutOfRange { .. })
        ));
        assert!(GeometricLaw::new(-0.25).is_err());
        assert!(GeometricLaw::new(f64::NAN).is_err());
        assert!(GeometricLaw::new(Exact::from_int(1)).is_err());
    }

    #[test]
    fn pmf_and_cdf_match_the_textbook_law() {
        let law = GeometricLaw::new(Exact::ratio(1, 2)).unwrap();
        assert_eq!(law.pmf(1), Exact::ratio(1, 2));
        assert_eq!(law.pmf(3), Exact::ratio(1, 8));
        assert_eq!(law.cdf(2), Exact::ratio(3, 4));

        let degenerate = GeometricLaw::new(Exact::from_int(0)).unwrap();
        assert_eq!(degenerate.pmf(1), Exact::from_int(1));
        assert_eq!(degenerate.pmf(2), Exact::from_int(0));
    }
}
