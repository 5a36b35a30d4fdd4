//! Numeric substrate shared by every geometric routine.
//!
//! Two modes exist and are kept apart by the type system: [`Rational`] is the
//! exact mode used by oracles and audits, `f64` is the fast mode used by the
//! optimizers. There is no implicit float-to-rational conversion; the only way
//! across is the explicit [`snap_to_rational`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Relative tolerance used for float-mode tie detection.
pub const FLOAT_TIE_RTOL: f64 = 1e-12;

/// Scale-relative threshold a float cross product must exceed to count as a left turn.
pub const FLOAT_TURN_TOL: f64 = 1e-12;

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Explicit narrowing to double precision.
    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> Self;

    /// Whether a cross product counts as a strict left turn for a polygon whose
    /// largest coordinate magnitude is `scale`.
    fn is_left_turn(cross: &Self, scale: &Self) -> bool;

    /// Ties: exact equality for rationals, `FLOAT_TIE_RTOL` relative for floats.
    fn ties(a: &Self, b: &Self) -> bool;

    /// `a + b` without consuming either operand.
    fn add_ref(a: &Self, b: &Self) -> Self {
        a.clone() + b.clone()
    }

    /// `a` beats `b` by more than a tie.
    fn clearly_greater(a: &Self, b: &Self) -> bool {
        a > b && !Self::ties(a, b)
    }

    /// Parses a decimal (`"0.25"`) or, for rationals, a fraction (`"1/4"`).
    fn parse(s: &str) -> Result<Self>;

    /// JSON form: numbers in float mode, `"p/q"` strings in exact mode.
    fn to_json(&self) -> serde_json::Value;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn is_left_turn(cross: &Self, scale: &Self) -> bool {
        *cross > FLOAT_TURN_TOL * scale * scale
    }

    fn ties(a: &Self, b: &Self) -> bool {
        (a - b).abs() <= FLOAT_TIE_RTOL * a.abs().max(b.abs())
    }

    fn parse(s: &str) -> Result<Self> {
        let v = f64::from_str(s.trim()).map_err(|_| Error::ParseNumber(s.to_string()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::ParseNumber(s.to_string()))
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn is_left_turn(cross: &Self, _scale: &Self) -> bool {
        cross.is_positive()
    }

    fn add_ref(a: &Self, b: &Self) -> Self {
        a + b
    }

    fn ties(a: &Self, b: &Self) -> bool {
        a == b
    }

    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseNumber(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let num = BigInt::from_str(&digits).map_err(|_| err())?;
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Rounds `x` to the nearest multiple of `1/denominator`. This is the only
/// sanctioned way to move a float into exact mode.
pub fn snap_to_rational(x: f64, denominator: i64) -> Rational {
    assert!(x.is_finite(), "cannot snap non-finite value {x}");
    assert!(denominator > 0);
    let scaled = (x * denominator as f64).round();
    let num = BigInt::from(scaled as i128);
    Rational::new(num, BigInt::from(denominator))
}

/// Sign-exact comparison for numbers of the form `p + q·√5` with rational `p`, `q`.
/// Returns the sign of `p + q√5` as -1, 0 or 1.
pub fn sign_plus_sqrt5(p: &Rational, q: &Rational) -> i32 {
    let sp = signum(p);
    let sq = signum(q);
    if sp >= 0 && sq >= 0 {
        return if sp == 0 && sq == 0 { 0 } else { 1 };
    }
    if sp <= 0 && sq <= 0 {
        return -1;
    }
    // Opposite signs: compare p² with 5q².
    let five = Rational::from_integer(BigInt::from(5));
    let lhs = p * p;
    let rhs = five * q * q;
    match lhs.partial_cmp(&rhs).expect("rationals are totally ordered") {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => sp,
        std::cmp::Ordering::Less => sq,
    }
}

fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rationals_are_canonical() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn float_ties_are_relative() {
        assert!(f64::ties(&1.0, &(1.0 + 1e-13)));
        assert!(!f64::ties(&1.0, &(1.0 + 1e-9)));
        assert!(f64::ties(&1e6, &(1e6 + 1e-7)));
    }

    #[test]
    fn float_turn_threshold_scales() {
        assert!(!f64::is_left_turn(&1e-9, &1e3));
        assert!(f64::is_left_turn(&1e-9, &1.0));
        assert!(Rational::is_left_turn(&q(1, 1_000_000_000), &q(1000, 1)));
    }

    #[test]
    fn snapping_rounds_to_grid() {
        assert_eq!(snap_to_rational(0.3333333, 1_000_000), q(333_333, 1_000_000));
        assert_eq!(snap_to_rational(-1.5, 4), q(-3, 2));
    }

    #[test]
    fn sqrt5_sign() {
        assert_eq!(sign_plus_sqrt5(&q(1, 1), &q(-1, 2)), -1);
        assert_eq!(sign_plus_sqrt5(&q(3, 1), &q(-1, 1)), 1);
        assert_eq!(sign_plus_sqrt5(&q(-3, 1), &q(1, 1)), -1);
        assert_eq!(sign_plus_sqrt5(&q(-2, 1), &q(1, 1)), 1);
        assert_eq!(sign_plus_sqrt5(&q(0, 1), &q(0, 1)), 0);
        assert_eq!(sign_plus_sqrt5(&q(0, 1), &q(-1, 7)), -1);
    }
}
