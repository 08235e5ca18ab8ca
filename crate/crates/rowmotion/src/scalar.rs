use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Exact field scalars the linear algebra and statistics are generic over.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    const KIND: ScalarKind;

    fn from_rational(v: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    /// Size estimate used to pick pivots; smaller is preferred.
    fn pivot_weight(&self) -> usize {
        0
    }

    /// The w in T⁺_p − w·T⁻_p: 1 over ℚ, q over ℚ(q).
    fn out_weight() -> Self {
        Self::one()
    }

    fn to_json(&self) -> serde_json::Value;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarKind {
    Rational,
    RationalFunction,
}

impl Field for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }

    fn pivot_weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }

    fn to_json(&self) -> serde_json::Value {
        format_rational(self).into()
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Always `num/den`, even for integers.
pub fn format_rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_positive(v: &Rational) -> bool {
    v.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(format_rational(&int(2)), "2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
