//! Exact scalars of the form r + c·α with r, c ∈ ℚ.
//!
//! Measures of the sets this crate manipulates always have this shape, and
//! since α is irrational the representation is unique, so equality is plain
//! coefficient equality. Ordering needs the sign of a linear form in α and
//! is therefore fallible at extreme precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::alpha::Alpha;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaNum {
    rational: BigRational,
    alpha_coeff: BigRational,
}

impl AlphaNum {
    pub fn new(rational: BigRational, alpha_coeff: BigRational) -> Self {
        AlphaNum { rational, alpha_coeff }
    }

    pub fn zero() -> Self {
        AlphaNum::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        AlphaNum::from_rational(BigRational::from_integer(1.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        AlphaNum::new(r, BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        AlphaNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// k·α as a scalar.
    pub fn alpha_multiple(k: i64) -> Self {
        AlphaNum::new(BigRational::zero(), BigRational::from_integer(BigInt::from(k)))
    }

    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    pub fn alpha_coeff(&self) -> &BigRational {
        &self.alpha_coeff
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.alpha_coeff.is_zero()
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        AlphaNum::new(&self.rational * by, &self.alpha_coeff * by)
    }

    pub fn scale_int(&self, by: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(by)))
    }

    /// Exact sign, as an Ordering against zero.
    pub fn sign(&self, alpha: &Alpha) -> Result<Ordering> {
        alpha.sign_linear(&self.rational, &self.alpha_coeff)
    }

    pub fn cmp_in(&self, other: &Self, alpha: &Alpha) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        (self - other).sign(alpha)
    }

    pub fn le_in(&self, other: &Self, alpha: &Alpha) -> Result<bool> {
        Ok(self.cmp_in(other, alpha)? != Ordering::Greater)
    }

    pub fn to_f64(&self, alpha: &Alpha) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let c = self.alpha_coeff.to_f64().unwrap_or(f64::NAN);
        r + c * alpha.approx()
    }

    /// Exact rendering: `0`, `2/3`, `2a`, `1/3+4/75a`, `1-2a`.
    pub fn exact_string(&self) -> String {
        if self.alpha_coeff.is_zero() {
            return self.rational.to_string();
        }
        let coeff = if self.alpha_coeff.is_negative() {
            format!("-{}a", self.alpha_coeff.abs())
        } else {
            format!("{}a", self.alpha_coeff)
        };
        if self.rational.is_zero() {
            coeff
        } else if self.alpha_coeff.is_negative() {
            format!("{}{}", self.rational, coeff)
        } else {
            format!("{}+{}", self.rational, coeff)
        }
    }

    /// Decimal rendering with 12 significant digits.
    pub fn decimal_string(&self, alpha: &Alpha) -> String {
        decimal_12(self.to_f64(alpha))
    }
}

/// Formats a float with 12 significant digits, deterministically.
pub fn decimal_12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000000".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let digits_after_point = 11i32.saturating_sub(exp).max(0) as usize;
    format!("{x:.digits_after_point$}")
}

impl fmt::Display for AlphaNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exact_string())
    }
}

impl Add for &AlphaNum {
    type Output = AlphaNum;
    fn add(self, rhs: &AlphaNum) -> AlphaNum {
        AlphaNum::new(
            &self.rational + &rhs.rational,
            &self.alpha_coeff + &rhs.alpha_coeff,
        )
    }
}

impl Sub for &AlphaNum {
    type Output = AlphaNum;
    fn sub(self, rhs: &AlphaNum) -> AlphaNum {
        AlphaNum::new(
            &self.rational - &rhs.rational,
            &self.alpha_coeff - &rhs.alpha_coeff,
        )
    }
}

impl Neg for &AlphaNum {
    type Output = AlphaNum;
    fn neg(self) -> AlphaNum {
        AlphaNum::new(-&self.rational, -&self.alpha_coeff)
    }
}

impl From<BigRational> for AlphaNum {
    fn from(r: BigRational) -> Self {
        AlphaNum::from_rational(r)
    }
}
