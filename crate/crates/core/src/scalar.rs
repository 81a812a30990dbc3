//! Scalar abstraction: every formula in this crate is written once, generic
//! over the number type, and evaluated either exactly (`Exact`, an
//! arbitrary-precision rational) or approximately (`f64`).

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num::traits::{FromPrimitive, Num, ToPrimitive};

/// Field-like scalar used by closed forms, oracles and series.
///
/// The two intended models are `f64` (float mode) and [`crate::Exact`]
/// (exact mode, authoritative for equality checks). Integer injection is
/// exact in both models for every count this crate produces (counts stay
/// far below 2^53).
pub trait Scalar:
    Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Clone
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Exact injection of a nonnegative count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }

    /// Exact injection of a signed integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar")
    }

    /// num / den as a scalar (exact in rational mode).
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    /// Nonnegative integer power by binary exponentiation (exact for
    /// rationals, reproducible for floats).
    fn powu(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Best-effort f64 view (used for display and diagnostics only).
    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// |self|.
    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {}
impl Scalar for num::BigRational {}

/// n(n−1)···(n−k+1) as a scalar; zero when the product crosses zero.
pub fn falling<S: Scalar>(n: i128, k: u32) -> S {
    let mut prod: i128 = 1;
    for t in 0..k {
        prod *= n - i128::from(t);
    }
    S::from_i128(prod).expect("falling factorial representable")
}

/// C(n, 2); zero for n < 2 (undersized or negative upper index).
pub fn binom2<S: Scalar>(n: i128) -> S {
    if n < 2 {
        S::zero()
    } else {
        S::from_i128(n * (n - 1) / 2).expect("binomial representable")
    }
}

/// C(n, 3); zero for n < 3.
pub fn binom3<S: Scalar>(n: i128) -> S {
    if n < 3 {
        S::zero()
    } else {
        S::from_i128(n * (n - 1) * (n - 2) / 6).expect("binomial representable")
    }
}
