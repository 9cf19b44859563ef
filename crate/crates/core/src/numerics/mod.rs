//! Precision handling, polynomials, number fields and small dense linear algebra.

pub mod factor;
pub mod linalg;
pub mod nf;
pub mod poly;
pub mod real;

pub use linalg::{min_eigenvalue, SymMatrix};
pub use nf::{NfElem, NumberField};
pub use poly::{eval_algebraic, real_roots, AlgebraicConstant, QPoly};
pub use real::Real;

use crate::error::{Error, Result};

/// Working precision in decimal digits plus hidden guard digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    pub decimal_digits: u32,
    pub guard_digits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            decimal_digits: 60,
            guard_digits: 10,
        }
    }
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        let mut bad = Vec::new();
        if decimal_digits < 30 {
            bad.push(format!("decimal_digits = {decimal_digits} is below 30"));
        }
        if guard_digits < 10 {
            bad.push(format!("guard_digits = {guard_digits} is below 10"));
        }
        if bad.is_empty() {
            Ok(PrecisionContext {
                decimal_digits,
                guard_digits,
            })
        } else {
            Err(Error::ConfigInvalid(bad))
        }
    }

    /// Context with `digits` significant digits (clamped to at least 30) and the default guard.
    pub fn digits(digits: u32) -> Self {
        PrecisionContext {
            decimal_digits: digits.max(30),
            guard_digits: 10,
        }
    }

    /// Binary precision covering the decimal digits plus guard.
    pub fn bits(&self) -> u32 {
        ((self.decimal_digits + self.guard_digits) as f64 * std::f64::consts::LOG2_10).ceil() as u32
    }

    pub fn doubled(&self) -> Self {
        PrecisionContext {
            decimal_digits: self.decimal_digits * 2,
            guard_digits: self.guard_digits,
        }
    }

    /// Absolute error target `10^-decimal_digits` as a real.
    pub fn epsilon(&self) -> Real {
        let b = self.bits();
        let q = num_rational::BigRational::new(
            1.into(),
            num_traits::pow(num_bigint::BigInt::from(10), self.decimal_digits as usize),
        );
        Real::from_ratio(&q, b)
    }
}
