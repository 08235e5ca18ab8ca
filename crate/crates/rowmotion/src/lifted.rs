//! Piecewise-linear and birational rowmotion over exact rationals, their toggleability
//! statistics, and lifts of combinatorial identities to both levels.
//!
//! Birational lifts may carry fractional exponents, so their values are kept as
//! [`PowerProduct`]s and compared exactly by factoring over a coprime base.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decompose::Decomposition;
use crate::dynamics::{orbit, Action};
use crate::error::{Error, Result};
use crate::poset::{OrderIdeal, Poset};
use crate::scalar::{int, Rational};
use crate::statistics::{ToggleCombination, ToggleKind};

/// π ∈ ℚ^P with π(0̂) = alpha, π(1̂) = omega.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLPoint {
    pub values: Vec<Rational>,
    pub alpha: Rational,
    pub omega: Rational,
}

/// π ∈ ℚ_{>0}^P with positive boundary values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPoint {
    values: Vec<Rational>,
    alpha: Rational,
    omega: Rational,
}

impl PLPoint {
    /// The indicator of P \ I, with α = 0 and ω = 1.
    pub fn vertex(p: &Poset, i: OrderIdeal) -> Self {
        PLPoint {
            values: (0..p.len()).map(|x| int(!i.contains(x) as i64)).collect(),
            alpha: int(0),
            omega: int(1),
        }
    }
}

impl BPoint {
    pub fn new(values: Vec<Rational>, alpha: Rational, omega: Rational) -> Result<Self> {
        if values
            .iter()
            .chain([&alpha, &omega])
            .any(|v| !v.is_positive())
        {
            return Err(Error::InvalidArgument(
                "birational points must be strictly positive".into(),
            ));
        }
        Ok(BPoint {
            values,
            alpha,
            omega,
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }
}

fn below<'a>(p: &Poset, x: usize, v: &'a [Rational], alpha: &'a Rational) -> Vec<&'a Rational> {
    let lc = p.lower_covers(x);
    if lc.is_empty() {
        vec![alpha]
    } else {
        lc.iter().map(|r| &v[r]).collect()
    }
}

fn above<'a>(p: &Poset, x: usize, v: &'a [Rational], omega: &'a Rational) -> Vec<&'a Rational> {
    let uc = p.upper_covers(x);
    if uc.is_empty() {
        vec![omega]
    } else {
        uc.iter().map(|r| &v[r]).collect()
    }
}

fn max_below(p: &Poset, x: usize, pi: &PLPoint) -> Rational {
    below(p, x, &pi.values, &pi.alpha)
        .into_iter()
        .max()
        .unwrap()
        .clone()
}

fn min_above(p: &Poset, x: usize, pi: &PLPoint) -> Rational {
    above(p, x, &pi.values, &pi.omega)
        .into_iter()
        .min()
        .unwrap()
        .clone()
}

fn sum_below(p: &Poset, x: usize, pi: &BPoint) -> Rational {
    below(p, x, &pi.values, &pi.alpha).into_iter().sum()
}

fn inv_sum_above(p: &Poset, x: usize, pi: &BPoint) -> Rational {
    above(p, x, &pi.values, &pi.omega)
        .into_iter()
        .map(|v| v.recip())
        .sum()
}

fn check_len(p: &Poset, n: usize) {
    assert_eq!(p.len(), n, "point and poset sizes differ");
}

pub fn pl_toggle(p: &Poset, x: usize, pi: &PLPoint) -> PLPoint {
    check_len(p, pi.values.len());
    let mut out = pi.clone();
    out.values[x] = min_above(p, x, pi) + max_below(p, x, pi) - &pi.values[x];
    out
}

pub fn b_toggle(p: &Poset, x: usize, pi: &BPoint) -> BPoint {
    check_len(p, pi.values.len());
    let mut out = pi.clone();
    out.values[x] = sum_below(p, x, pi) / (&pi.values[x] * inv_sum_above(p, x, pi));
    out
}

/// Apply `action` at the PL level, with the same toggle order as on J(P).
pub fn pl_apply(p: &Poset, action: &Action, pi: &PLPoint) -> PLPoint {
    action
        .toggle_sequence(p)
        .into_iter()
        .fold(pi.clone(), |acc, x| pl_toggle(p, x, &acc))
}

pub fn b_apply(p: &Poset, action: &Action, pi: &BPoint) -> BPoint {
    action
        .toggle_sequence(p)
        .into_iter()
        .fold(pi.clone(), |acc, x| b_toggle(p, x, &acc))
}

pub fn pl_rowmotion(p: &Poset, pi: &PLPoint) -> PLPoint {
    pl_apply(p, &Action::Rowmotion, pi)
}

pub fn b_rowmotion(p: &Poset, pi: &BPoint) -> BPoint {
    b_apply(p, &Action::Rowmotion, pi)
}

pub fn pl_rowmotion_sigma(
    p: &Poset,
    sigma: &crate::dynamics::RankPermutation,
    pi: &PLPoint,
) -> PLPoint {
    pl_apply(p, &Action::Sigma(sigma.clone()), pi)
}

pub fn b_rowmotion_sigma(
    p: &Poset,
    sigma: &crate::dynamics::RankPermutation,
    pi: &BPoint,
) -> BPoint {
    b_apply(p, &Action::Sigma(sigma.clone()), pi)
}

/// T⁺PL, T⁻PL or TPL at `x`.
pub fn t_pl(p: &Poset, kind: ToggleKind, x: usize, pi: &PLPoint) -> Rational {
    let tin = || &pi.values[x] - max_below(p, x, pi);
    let tout = || min_above(p, x, pi) - &pi.values[x];
    match kind {
        ToggleKind::In => tin(),
        ToggleKind::Out => tout(),
        ToggleKind::Signed => tin() - tout(),
    }
}

/// T⁺B, T⁻B or TB = T⁺B / T⁻B at `x`.
pub fn t_b(p: &Poset, kind: ToggleKind, x: usize, pi: &BPoint) -> Rational {
    let tin = || &pi.values[x] / sum_below(p, x, pi);
    let tout = || (&pi.values[x] * inv_sum_above(p, x, pi)).recip();
    match kind {
        ToggleKind::In => tin(),
        ToggleKind::Out => tout(),
        ToggleKind::Signed => tin() / tout(),
    }
}

/// Π base^exponent over positive rational bases and rational exponents.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PowerProduct {
    factors: Vec<(Rational, Rational)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn power(base: Rational, exp: Rational) -> Self {
        let mut p = Self::one();
        p.push(base, exp);
        p
    }

    pub fn push(&mut self, base: Rational, exp: Rational) {
        assert!(base.is_positive(), "power products need positive bases");
        if !exp.is_zero() && !base.is_one() {
            self.factors.push((base, exp));
        }
    }

    pub fn factors(&self) -> &[(Rational, Rational)] {
        &self.factors
    }

    pub fn mul(&mut self, o: &PowerProduct) {
        self.factors.extend(o.factors.iter().cloned());
    }

    pub fn inverse(&self) -> Self {
        PowerProduct {
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    /// The exact value, when every exponent is an integer.
    pub fn to_rational(&self) -> Option<Rational> {
        self.factors
            .iter()
            .try_fold(Rational::one(), |acc, (b, e)| {
                e.is_integer().then(|| {
                    acc * b.pow(i32::try_from(e.to_integer()).expect("exponent fits in i32"))
                })
            })
    }

    /// Exponent vector over a coprime base of all numerators and denominators.
    fn exponents(&self) -> (Vec<BigUint>, Vec<Rational>) {
        let mut merged: Vec<(Rational, Rational)> = vec![];
        for (b, e) in &self.factors {
            match merged.iter_mut().find(|(c, _)| c == b) {
                Some((_, f)) => *f += e,
                None => merged.push((b.clone(), e.clone())),
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        let parts: Vec<BigUint> = merged
            .iter()
            .flat_map(|(b, _)| [b.numer().magnitude().clone(), b.denom().magnitude().clone()])
            .collect();
        let base = coprime_base(parts);
        let mut exps = vec![Rational::zero(); base.len()];
        for (b, e) in &merged {
            for (k, q) in base.iter().enumerate() {
                let v = valuation(b.numer().magnitude(), q) as i64
                    - valuation(b.denom().magnitude(), q) as i64;
                if v != 0 {
                    exps[k] += e * int(v);
                }
            }
        }
        (base, exps)
    }

    pub fn is_one(&self) -> bool {
        self.exponents().1.iter().all(Zero::is_zero)
    }

    pub fn same_value(&self, o: &PowerProduct) -> bool {
        let mut d = self.clone();
        d.mul(&o.inverse());
        d.is_one()
    }
}

/// Pairwise coprime integers > 1 such that every input is a product of their powers.
pub fn coprime_base(nums: Vec<BigUint>) -> Vec<BigUint> {
    let mut work: Vec<BigUint> = nums.into_iter().filter(|n| *n > BigUint::one()).collect();
    work.sort();
    work.dedup();
    // Each split replaces b, x by b/g, x/g, g, so the product of all pending numbers drops.
    let mut base: Vec<BigUint> = vec![];
    while let Some(x) = work.pop() {
        if x.is_one() {
            continue;
        }
        match base.iter().position(|b| !b.gcd(&x).is_one()) {
            Some(k) => {
                let b = base.swap_remove(k);
                let g = b.gcd(&x);
                work.extend([&b / &g, &x / &g, g]);
            }
            None => base.push(x),
        }
    }
    base.sort();
    base
}

fn valuation(n: &BigUint, q: &BigUint) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % q).is_zero() {
        n /= q;
        v += 1;
    }
    v
}

/// Σ_p (a_p T⁺_p + a'_p T⁻_p + a''_p 1_p), ready for evaluation at the PL and birational levels.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedStatistic {
    pub t_in: Vec<Rational>,
    pub t_out: Vec<Rational>,
    pub ind: Vec<Rational>,
}

/// Lift a constant-free combination; needs every element to cover, and be covered by, at most two.
pub fn lift_statistic(p: &Poset, f: &ToggleCombination) -> Result<LiftedStatistic> {
    if !p.has_at_most_two_covers() {
        return Err(Error::Hypothesis(
            "lifting needs every element to cover at most two elements and be covered by at most two".into(),
        ));
    }
    if !f.constant.is_zero() {
        return Err(Error::InvalidArgument(
            "lifted statistics carry no constant term".into(),
        ));
    }
    check_len(p, f.len());
    Ok(LiftedStatistic {
        t_in: f.t_in.clone(),
        t_out: f.t_out.clone(),
        ind: f.ind.clone(),
    })
}

/// f − Σ c_p T_p: combinatorially the constant c of the certificate, with no constant term.
pub fn certificate_residual(
    f: &ToggleCombination,
    d: &Decomposition<Rational>,
) -> ToggleCombination {
    let mut g = f.clone();
    for (x, c) in d.coeffs.iter().enumerate() {
        g.add_signed(x, &-c);
    }
    g
}

impl LiftedStatistic {
    pub fn eval_pl(&self, p: &Poset, pi: &PLPoint) -> Rational {
        let mut v = Rational::zero();
        for x in 0..p.len() {
            if !self.t_in[x].is_zero() {
                v += &self.t_in[x] * t_pl(p, ToggleKind::In, x, pi);
            }
            if !self.t_out[x].is_zero() {
                v += &self.t_out[x] * t_pl(p, ToggleKind::Out, x, pi);
            }
            if !self.ind[x].is_zero() {
                v += &self.ind[x] * (&pi.omega - &pi.values[x]);
            }
        }
        v
    }

    /// Π (T⁺B)^{a} (T⁻B)^{a'} (ω/π(p))^{a''}.
    pub fn eval_b(&self, p: &Poset, pi: &BPoint) -> PowerProduct {
        let mut out = PowerProduct::one();
        for x in 0..p.len() {
            out.push(t_b(p, ToggleKind::In, x, pi), self.t_in[x].clone());
            out.push(t_b(p, ToggleKind::Out, x, pi), self.t_out[x].clone());
            out.push(&pi.omega / &pi.values[x], self.ind[x].clone());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    #[serde(rename = "pl")]
    PiecewiseLinear,
    Birational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedReport {
    /// `None` when the orbit did not close within the cap.
    pub period: Option<usize>,
    /// Whether the orbit sum (PL) or product (B) law holds; `None` if inconclusive.
    pub holds: Option<bool>,
}

/// A random PL point with entries num/den, |num| ≤ 100, 1 ≤ den ≤ 100.
pub fn random_pl_point(n: usize, alpha: Rational, omega: Rational, rng: &mut impl Rng) -> PLPoint {
    let values = (0..n)
        .map(|_| {
            Rational::new(
                rng.gen_range(-100..=100).into(),
                rng.gen_range(1..=100).into(),
            )
        })
        .collect();
    PLPoint {
        values,
        alpha,
        omega,
    }
}

pub fn random_positive(rng: &mut impl Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(1..=100)),
        BigInt::from(rng.gen_range(1..=100)),
    )
}

pub fn random_b_point(
    n: usize,
    alpha: Rational,
    omega: Rational,
    rng: &mut impl Rng,
) -> Result<BPoint> {
    BPoint::new((0..n).map(|_| random_positive(rng)).collect(), alpha, omega)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Orbit of a PL point; `Ok(None)` if it does not close within `cap` steps.
pub fn pl_orbit(
    p: &Poset,
    action: &Action,
    start: &PLPoint,
    cap: usize,
) -> Result<Option<Vec<PLPoint>>> {
    capped(orbit(|x| pl_apply(p, action, x), start.clone(), cap))
}

pub fn b_orbit(
    p: &Poset,
    action: &Action,
    start: &BPoint,
    cap: usize,
) -> Result<Option<Vec<BPoint>>> {
    capped(orbit(|x| b_apply(p, action, x), start.clone(), cap))
}

fn capped<S>(r: Result<crate::dynamics::Orbit<S>>) -> Result<Option<Vec<S>>> {
    match r {
        Ok(o) => Ok(Some(o.states)),
        Err(Error::ResourceCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Σ_O f^PL = #O·c(ω−α).
pub fn orbit_homomesy_pl(
    p: &Poset,
    f: &LiftedStatistic,
    c: &Rational,
    action: &Action,
    start: &PLPoint,
    cap: usize,
) -> Result<LiftedReport> {
    let Some(o) = pl_orbit(p, action, start, cap)? else {
        return Ok(LiftedReport {
            period: None,
            holds: None,
        });
    };
    let sum: Rational = o.iter().map(|x| f.eval_pl(p, x)).sum();
    let want = int(o.len() as i64) * c * (&start.omega - &start.alpha);
    Ok(LiftedReport {
        period: Some(o.len()),
        holds: Some(sum == want),
    })
}

/// Π_O f^B = (ω/α)^{#O·c}.
pub fn orbit_homomesy_b(
    p: &Poset,
    f: &LiftedStatistic,
    c: &Rational,
    action: &Action,
    start: &BPoint,
    cap: usize,
) -> Result<LiftedReport> {
    let Some(o) = b_orbit(p, action, start, cap)? else {
        return Ok(LiftedReport {
            period: None,
            holds: None,
        });
    };
    let mut prod = PowerProduct::one();
    for x in &o {
        prod.mul(&f.eval_b(p, x));
    }
    let want = PowerProduct::power(&start.omega / &start.alpha, int(o.len() as i64) * c);
    Ok(LiftedReport {
        period: Some(o.len()),
        holds: Some(prod.same_value(&want)),
    })
}
