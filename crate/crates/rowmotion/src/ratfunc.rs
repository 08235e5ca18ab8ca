use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::poly::Polynomial;
use crate::scalar::{format_rational, Field, Rational, ScalarKind};

/// Element of ℚ(q), kept reduced with a monic denominator so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Polynomial::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn q() -> Self {
        Polynomial::q().into()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `None` at a pole.
    pub fn eval(&self, q: &Rational) -> Option<Rational> {
        let d = self.den.eval(q);
        (!d.is_zero()).then(|| self.num.eval(q) / d)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::one(), |acc, _| &acc * &base)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c).into()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Polynomial::one().into()
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        self * &o.inv()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Field for RationalFunction {
    const KIND: ScalarKind = ScalarKind::RationalFunction;

    fn from_rational(v: &Rational) -> Self {
        v.clone().into()
    }

    fn pivot_weight(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    fn out_weight() -> Self {
        Self::q()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rational functions serialize")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs = |p: &Polynomial| p.coeffs().iter().map(format_rational).collect::<Vec<_>>();
        let mut st = s.serialize_struct("RationalFunction", 2)?;
        st.serialize_field("num", &coeffs(&self.num))?;
        st.serialize_field("den", &coeffs(&self.den))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_number;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n), Polynomial::from_ints(d))
    }

    #[test]
    fn normalizes() {
        // (q^2 - 1)/(2q + 2) = (q - 1)/2
        let x = rf(&[-1, 0, 1], &[2, 2]);
        assert_eq!(x.numer(), &Polynomial::new(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(x.denom(), &Polynomial::one());
        assert_eq!(rf(&[0], &[3, 1]), RationalFunction::zero());
    }

    #[test]
    fn arithmetic() {
        let a = rf(&[1], &[1, 1]);
        let b = rf(&[0, 1], &[1, 1]);
        assert_eq!(&a + &b, RationalFunction::one());
        let two = RationalFunction::from(int(2));
        assert_eq!(&(&a * &two) / &two, a);
        assert_eq!(a.eval(&int(1)), Some(rat(1, 2)));
        assert_eq!(rf(&[1], &[-1, 1]).eval(&int(1)), None);
        assert_eq!(a.to_string(), "1/(1 + q)");
        let c = RationalFunction::new(q_number(6), q_number(3));
        assert_eq!(c.to_string(), "1 + q^3");
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        (
            proptest::collection::vec(-4i64..5, 0..4),
            proptest::collection::vec(-4i64..5, 1..4),
        )
            .prop_filter_map("zero denominator", |(n, d)| {
                let d = Polynomial::from_ints(&d);
                (!d.is_zero()).then(|| RationalFunction::new(Polynomial::from_ints(&n), d))
            })
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rf(), b in small_rf(), c in small_rf()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            prop_assert!(a.denom().leading().is_one());
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_rf(), b in small_rf(), x in 0i64..5) {
            let x = int(x);
            if let (Some(va), Some(vb)) = (a.eval(&x), b.eval(&x)) {
                prop_assert_eq!((&a * &b).eval(&x), Some(&va * &vb));
                prop_assert_eq!((&a + &b).eval(&x), Some(va + vb));
            }
        }
    }
}
