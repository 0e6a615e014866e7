//! Scalar abstractions.
//!
//! Probability distributions are generic over [`Field`], which covers exact
//! rationals as well as `f64`/`f32`. Complex linear algebra is generic over
//! [`Real`], the real part of the complex entries.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// An ordered field that partition probabilities can live in.
pub trait Field: Clone + Debug + PartialOrd + Signed + Send + Sync + 'static {
    /// `num / den`, rounded if the field is inexact.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    fn as_f64(&self) -> f64;

    /// Slack allowed when checking that a distribution sums to one.
    /// Zero for exact fields.
    fn normalization_slack() -> f64;
}

impl Field for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn as_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn normalization_slack() -> f64 {
        0.0
    }
}

impl Field for f64 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        ratio_to_f64(&BigRational::new(num.clone(), den.clone()))
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn normalization_slack() -> f64 {
        1e-9
    }
}

impl Field for f32 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        ratio_to_f64(&BigRational::new(num.clone(), den.clone())) as f32
    }

    fn as_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn normalization_slack() -> f64 {
        1e-5
    }
}

/// Real scalar underlying complex matrices: `f32` or `f64`.
pub trait Real: nalgebra::RealField + Copy + Field {
    /// Tolerance used when validating Hermiticity, trace and positivity.
    const VALIDATION_TOL: f64;

    fn cast(x: f64) -> Self;
}

impl Real for f64 {
    const VALIDATION_TOL: f64 = 1e-12;

    fn cast(x: f64) -> Self {
        x
    }
}

impl Real for f32 {
    const VALIDATION_TOL: f64 = 1e-5;

    fn cast(x: f64) -> Self {
        x as f32
    }
}

pub fn complex<F: Real>(re: f64, im: f64) -> Complex<F> {
    Complex::new(F::cast(re), F::cast(im))
}

/// Converts a big rational to the nearest-ish `f64` without overflowing on
/// huge numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both sides down to 64 significant bits before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 64).max(0) as u64;
    let shift_d = (db - 64).max(0) as u64;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    (n / d) * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}
