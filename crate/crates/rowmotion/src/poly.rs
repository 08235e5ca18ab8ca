use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Polynomial in `q` over ℚ, coefficients stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(
            cs.iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Integer primitive part, sign normalized so the leading coefficient is positive.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let ints = to_integer_multiple(&self.coeffs);
        primitive(ints)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let g = subresultant_gcd(a.primitive_integer(), b.primitive_integer());
        Self::new(g.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Rational roots that are >= 0, by the rational root theorem.
    pub fn nonnegative_rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return vec![];
        }
        let mut roots = vec![];
        let mut p = self.primitive_integer();
        if p[0].is_zero() {
            roots.push(Rational::zero());
            while p.first().is_some_and(|c| c.is_zero()) {
                p.remove(0);
            }
        }
        if p.len() <= 1 {
            return roots;
        }
        let poly = Self::new(p.iter().cloned().map(Rational::from_integer).collect());
        for n in divisors(&p[0].abs()) {
            for d in divisors(&p[p.len() - 1].abs()) {
                let r = Rational::new(n.clone(), d);
                if poly.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

fn to_integer_multiple(cs: &[Rational]) -> Vec<BigInt> {
    let l = cs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    cs.iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let mut c = content(&p);
    if c.is_zero() {
        return p;
    }
    if p.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    p.into_iter().map(|x| x / &c).collect()
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut steps = a.len() - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &c * bc;
        }
        trim(&mut r);
        steps -= 1;
    }
    let f = num_traits::pow(lc.clone(), steps);
    r.iter().map(|x| x * &f).collect()
}

fn subresultant_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive(b);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        let div = &g * num_traits::pow(h.clone(), delta as usize);
        a = b;
        b = r.into_iter().map(|x| x / &div).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h, delta as usize - 1)
        };
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

/// [n]_q = 1 + q + ... + q^(n-1).
pub fn q_number(n: usize) -> Polynomial {
    Polynomial::new(vec![Rational::one(); n])
}

pub fn q_factorial(n: usize) -> Polynomial {
    (1..=n).fold(Polynomial::one(), |acc, k| &acc * &q_number(k))
}

/// Gaussian binomial; `None` when k > n.
pub fn q_binomial(n: usize, k: usize) -> Option<Polynomial> {
    if k > n {
        return None;
    }
    let num = q_factorial(n);
    let den = &q_factorial(k) * &q_factorial(n - k);
    let out = num.div_exact(&den);
    assert!(out.is_some(), "q-binomial is not a polynomial");
    out
}
