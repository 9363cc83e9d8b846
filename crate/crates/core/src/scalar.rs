//! Numeric scalars carried by [`Value::Num`](crate::Value::Num).
//!
//! The engine itself never does arithmetic; numbers only matter to user
//! computations, to memo-key comparison, and to the spreadsheet. Anything
//! that implements [`Scalar`] can be plugged in: hardware floats, plain
//! integers, or exact rationals.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Zero};

/// A number usable inside [`Value`](crate::Value).
///
/// `key_eq`/`key_hash` define identity for memo keys. They must agree with
/// each other and be an equivalence relation; for floats this means bitwise
/// comparison (so `NaN` matches itself and `-0.0` differs from `0.0`).
pub trait Scalar:
    Num + FromPrimitive + PartialOrd + Clone + fmt::Debug + fmt::Display + 'static
{
    fn key_eq(&self, other: &Self) -> bool;

    fn key_hash<H: Hasher>(&self, state: &mut H);

    /// Parses an unsigned decimal literal such as `12` or `2.5`.
    fn parse_decimal(text: &str) -> Option<Self>;

    /// Normalizes a value for display (floats drop the sign of zero).
    fn canonical(self) -> Self {
        self
    }
}

fn is_decimal_literal(text: &str) -> bool {
    let mut parts = text.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    match frac {
        None => !int.is_empty() && digits(int),
        Some(frac) => (!int.is_empty() || !frac.is_empty()) && digits(int) && digits(frac),
    }
}

macro_rules! impl_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn key_eq(&self, other: &Self) -> bool {
                self.to_bits() == other.to_bits()
            }

            fn key_hash<H: Hasher>(&self, state: &mut H) {
                self.to_bits().hash(state);
            }

            fn parse_decimal(text: &str) -> Option<Self> {
                if !is_decimal_literal(text) {
                    return None;
                }
                text.parse().ok()
            }

            fn canonical(self) -> Self {
                if self == 0.0 {
                    0.0
                } else {
                    self
                }
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);

impl Scalar for i64 {
    fn key_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn key_hash<H: Hasher>(&self, state: &mut H) {
        self.hash(state);
    }

    fn parse_decimal(text: &str) -> Option<Self> {
        if !is_decimal_literal(text) || text.contains('.') {
            return None;
        }
        text.parse().ok()
    }
}

/// Splits `12.50` into numerator `1250` and the power of ten `2`.
fn decimal_parts(text: &str) -> Option<(BigInt, u32)> {
    if !is_decimal_literal(text) {
        return None;
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits = format!("{int}{frac}");
    let numer = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    Some((numer, frac.len() as u32))
}

impl Scalar for BigRational {
    fn key_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn key_hash<H: Hasher>(&self, state: &mut H) {
        self.hash(state);
    }

    fn parse_decimal(text: &str) -> Option<Self> {
        let (numer, scale) = decimal_parts(text)?;
        Some(BigRational::new(numer, BigInt::from(10u32).pow(scale)))
    }
}

impl Scalar for Rational64 {
    fn key_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn key_hash<H: Hasher>(&self, state: &mut H) {
        self.hash(state);
    }

    fn parse_decimal(text: &str) -> Option<Self> {
        let (numer, scale) = decimal_parts(text)?;
        let numer: i64 = numer.try_into().ok()?;
        let denom = 10i64.checked_pow(scale)?;
        (!denom.is_zero()).then(|| Rational64::new(numer, denom))
    }
}
