//! The two q-series constants entering the Knuth asymptotics,
//! α = Σ_{i≥1} 1/(q^{−i} − 1) and β = Σ_{i≥1} 1/(q^{−i} − 1)²,
//! summed to a caller-supplied tolerance with closed tail bounds, plus the
//! two-term asymptotic expansions that consume them.

use crate::error::{Error, Result};
use crate::law::GeometricLaw;
use crate::scalar::Scalar;

/// Upper bound on series terms before the truncation loop gives up (only
/// reachable for q extremely close to 1 with a tiny tolerance).
const MAX_TERMS: usize = 100_000_000;

/// A truncated series value together with the rigorous bound on what was
/// discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue<S: Scalar> {
    pub value: S,
    pub terms_used: usize,
    /// Proven bound on the omitted tail (≤ the requested tolerance).
    pub tail_bound: S,
}

fn check_tolerance<S: Scalar>(tol: &S) -> Result<()> {
    if !(*tol > S::zero()) {
        return Err(Error::NonPositiveTolerance {
            tol: tol.to_string(),
        });
    }
    Ok(())
}

/// α(q) = Σ_{i≥1} q^i/(1−q^i), truncated once the closed tail bound
/// q^{N+1}/((1−q)(1−q^{N+1})) drops to `tol`. Terms past N satisfy
/// 1−q^i ≥ 1−q^{N+1}, so the geometric majorant is rigorous.
pub fn alpha<S: Scalar>(law: &GeometricLaw<S>, tol: &S) -> Result<SeriesValue<S>> {
    check_tolerance(tol)?;
    if law.q().is_zero() {
        return Ok(SeriesValue {
            value: S::zero(),
            terms_used: 0,
            tail_bound: S::zero(),
        });
    }
    let q = law.q().clone();
    let mut value = S::zero();
    let mut q_pow = S::one();
    for i in 1..=MAX_TERMS {
        q_pow = q_pow * q.clone(); // q^i
        value = value + q_pow.clone() / (S::one() - q_pow.clone());
        let next_pow = q_pow.clone() * q.clone(); // q^{i+1}
        let tail = next_pow.clone() / (law.p().clone() * (S::one() - next_pow));
        if tail <= *tol {
            return Ok(SeriesValue {
                value,
                terms_used: i,
                tail_bound: tail,
            });
        }
    }
    Err(Error::Capacity {
        what: "alpha series",
        detail: format!("no convergence within {MAX_TERMS} terms at q = {}", law.q()),
    })
}

/// β(q) = Σ_{i≥1} (q^i/(1−q^i))², truncated once the squared majorant
/// q^{2(N+1)}/((1−q²)(1−q^{N+1})²) drops to `tol`.
pub fn beta<S: Scalar>(law: &GeometricLaw<S>, tol: &S) -> Result<SeriesValue<S>> {
    check_tolerance(tol)?;
    if law.q().is_zero() {
        return Ok(SeriesValue {
            value: S::zero(),
            terms_used: 0,
            tail_bound: S::zero(),
        });
    }
    let q = law.q().clone();
    let one_minus_q2 = S::one() - q.clone() * q.clone();
    let mut value = S::zero();
    let mut q_pow = S::one();
    for i in 1..=MAX_TERMS {
        q_pow = q_pow * q.clone();
        let term = q_pow.clone() / (S::one() - q_pow.clone());
        value = value + term.clone() * term;
        let next_pow = q_pow.clone() * q.clone();
        let denom = S::one() - next_pow.clone();
        let tail =
            next_pow.clone() * next_pow / (one_minus_q2.clone() * denom.clone() * denom);
        if tail <= *tol {
            return Ok(SeriesValue {
                value,
                terms_used: i,
                tail_bound: tail,
            });
        }
    }
    Err(Error::Capacity {
        what: "beta series",
        detail: format!("no convergence within {MAX_TERMS} terms at q = {}", law.q()),
    })
}

/// α and β evaluated to a common tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeriesConstants<S: Scalar> {
    pub alpha: S,
    pub beta: S,
    pub tolerance: S,
    /// Terms consumed by the slower of the two series.
    pub terms_used: usize,
}

impl<S: Scalar> QSeriesConstants<S> {
    pub fn compute(law: &GeometricLaw<S>, tolerance: S) -> Result<Self> {
        let a = alpha(law, &tolerance)?;
        let b = beta(law, &tolerance)?;
        // Termwise x ≥ x² whenever each term x ≤ 1, which holds for q ≤ 1/2.
        if *law.q() <= S::ratio(1, 2) {
            debug_assert!(a.value >= b.value && b.value >= S::zero());
        }
        Ok(Self {
            alpha: a.value,
            beta: b.value,
            tolerance,
            terms_used: a.terms_used.max(b.terms_used),
        })
    }
}

/// Two-term asymptotic expansions of the Knuth moments:
/// E ≈ p/2·n² + (p/2 − 1 + pα)n, V ≈ pq/3·n³ + (pq/2 − p²(α+β))n².
/// Returned as (mean, variance).
pub fn asymptotic_knuth<S: Scalar>(
    n: usize,
    law: &GeometricLaw<S>,
    constants: &QSeriesConstants<S>,
) -> (S, S) {
    let p = law.p().clone();
    let q = law.q().clone();
    let nn = S::from_count(n);
    let n2 = nn.clone() * nn.clone();
    let n3 = n2.clone() * nn.clone();
    let mean = p.clone() * S::ratio(1, 2) * n2.clone()
        + (p.clone() * S::ratio(1, 2) - S::one() + p.clone() * constants.alpha.clone()) * nn;
    let variance = p.clone() * q.clone() * S::ratio(1, 3) * n3
        + (p.clone() * q * S::ratio(1, 2)
            - p.clone() * p * (constants.alpha.clone() + constants.beta.clone()))
            * n2;
    (mean, variance)
}
