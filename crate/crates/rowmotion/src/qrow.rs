//! q-rowmotion on flavored labelings: s flavors of 0 (symbols `0..s`) and r flavors of 1
//! (symbols `s..s+r`), with the zero-labeled elements forming an order ideal.

use std::collections::HashMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use crate::dynamics::orbit_partition;
use crate::error::{Error, Result};
use crate::lattice::IdealLattice;
use crate::poset::{ElementSet, LinearExtension, OrderIdeal, Poset};
use crate::ratfunc::RationalFunction;
use crate::scalar::{int, Field, Rational};
use crate::Stat;

pub const DEFAULT_LABELING_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlavorAlphabet {
    r: u8,
    s: u8,
    theta: Vec<u8>,
    local: Option<Vec<Vec<u8>>>,
}

fn check_cycle(theta: &[u8]) -> Result<()> {
    let n = theta.len();
    if theta.iter().any(|&t| t as usize >= n) {
        return Err(Error::InvalidPermutation(format!(
            "{theta:?} is not a permutation of 0..{n}"
        )));
    }
    let (mut k, mut steps) = (0u8, 0);
    loop {
        k = theta[k as usize];
        steps += 1;
        if k == 0 || steps > n {
            break;
        }
    }
    if k != 0 || steps != n {
        return Err(Error::InvalidPermutation(format!(
            "{theta:?} is not a single {n}-cycle"
        )));
    }
    Ok(())
}

impl FlavorAlphabet {
    /// θ = 0₁ → … → 0_s → 1₁ → … → 1_r → 0₁.
    pub fn new(r: usize, s: usize) -> Result<Self> {
        let n = Self::size_of(r, s)?;
        Self::with_theta(r, s, (0..n).map(|k| ((k + 1) % n) as u8).collect())
    }

    fn size_of(r: usize, s: usize) -> Result<usize> {
        if r == 0 || s == 0 || r + s > u8::MAX as usize {
            return Err(Error::InvalidArgument(format!(
                "need r, s ≥ 1 and r + s ≤ 255, got r={r}, s={s}"
            )));
        }
        Ok(r + s)
    }

    /// `theta[k]` is the image of symbol k.
    pub fn with_theta(r: usize, s: usize, theta: Vec<u8>) -> Result<Self> {
        let n = Self::size_of(r, s)?;
        if theta.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "θ must act on {n} symbols"
            )));
        }
        check_cycle(&theta)?;
        Ok(FlavorAlphabet {
            r: r as u8,
            s: s as u8,
            theta,
            local: None,
        })
    }

    /// A uniformly random (r+s)-cycle.
    pub fn random(r: usize, s: usize, rng: &mut impl Rng) -> Result<Self> {
        let n = Self::size_of(r, s)?;
        Self::with_theta(r, s, random_cycle(n, rng))
    }

    /// Give each element its own cycle.
    pub fn with_local(mut self, local: Vec<Vec<u8>>) -> Result<Self> {
        for t in &local {
            if t.len() != self.theta.len() {
                return Err(Error::InvalidPermutation(format!(
                    "θ must act on {} symbols",
                    self.theta.len()
                )));
            }
            check_cycle(t)?;
        }
        self.local = Some(local);
        Ok(self)
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn s(&self) -> usize {
        self.s as usize
    }

    pub fn theta(&self) -> &[u8] {
        &self.theta
    }

    /// q = r/s.
    pub fn q(&self) -> Rational {
        Rational::new(self.r.into(), self.s.into())
    }

    pub fn is_zero_flavor(&self, f: u8) -> bool {
        f < self.s
    }

    fn step(&self, p: usize, f: u8) -> u8 {
        match &self.local {
            Some(l) => l[p][f as usize],
            None => self.theta[f as usize],
        }
    }
}

fn random_cycle(n: usize, rng: &mut impl Rng) -> Vec<u8> {
    let mut order: Vec<u8> = (0..n as u8).collect();
    order.shuffle(rng);
    let mut theta = vec![0; n];
    for k in 0..n {
        theta[order[k] as usize] = order[(k + 1) % n];
    }
    theta
}

/// A labeling with its zero-set cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLabeling {
    ideal: OrderIdeal,
    labels: Vec<u8>,
}

impl QLabeling {
    pub fn new(p: &Poset, alphabet: &FlavorAlphabet, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != p.len() || labels.iter().any(|&f| f as usize >= alphabet.theta.len()) {
            return Err(Error::InvalidArgument(
                "labels do not fit the poset and alphabet".into(),
            ));
        }
        let zeros =
            ElementSet::from_elements((0..p.len()).filter(|&x| alphabet.is_zero_flavor(labels[x])));
        Ok(QLabeling {
            ideal: p.ideal(zeros)?,
            labels,
        })
    }

    /// L⁻¹(F₀).
    pub fn ideal(&self) -> OrderIdeal {
        self.ideal
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }
}

/// Σ_I r^{#(P∖I)} s^{#I}.
pub fn count_labelings(lat: &IdealLattice, alphabet: &FlavorAlphabet) -> num_bigint::BigUint {
    let n = lat.poset().len();
    lat.ideals()
        .iter()
        .map(|i| {
            num_bigint::BigUint::from(alphabet.r).pow((n - i.len()) as u32)
                * num_bigint::BigUint::from(alphabet.s).pow(i.len() as u32)
        })
        .sum()
}

/// All labelings, grouped by ideal in lattice order, labels in lexicographic order within each.
pub fn enumerate_labelings(
    lat: &IdealLattice,
    alphabet: &FlavorAlphabet,
    cap: usize,
) -> Result<Vec<QLabeling>> {
    let total = count_labelings(lat, alphabet);
    if total > num_bigint::BigUint::from(cap) {
        return Err(Error::ResourceCap {
            what: "labelings".into(),
            limit: cap,
        });
    }
    let n = lat.poset().len();
    let mut out = Vec::new();
    for &i in lat.ideals() {
        let choices: Vec<std::ops::Range<u8>> = (0..n)
            .map(|x| {
                if i.contains(x) {
                    0..alphabet.s
                } else {
                    alphabet.s..alphabet.s + alphabet.r
                }
            })
            .collect();
        let sizes: Vec<usize> = choices.iter().map(|c| c.len()).collect();
        for code in 0..sizes.iter().product::<usize>() {
            // mixed radix, last element fastest
            let mut rest = code;
            let mut labels = vec![0u8; n];
            for x in (0..n).rev() {
                labels[x] = choices[x].start + (rest % sizes[x]) as u8;
                rest /= sizes[x];
            }
            out.push(QLabeling { ideal: i, labels });
        }
    }
    Ok(out)
}

/// Whether `x` is maximal in L⁻¹(F₀) or minimal in L⁻¹(F₁).
pub fn is_active(p: &Poset, l: &QLabeling, x: usize) -> bool {
    if l.ideal.contains(x) {
        p.upper_covers(x).intersection(l.ideal.set()).is_empty()
    } else {
        p.lower_covers(x).is_subset(l.ideal.set())
    }
}

pub fn q_toggle(p: &Poset, alphabet: &FlavorAlphabet, x: usize, l: &QLabeling) -> QLabeling {
    if !is_active(p, l, x) {
        return l.clone();
    }
    let mut out = l.clone();
    let f = alphabet.step(x, l.labels[x]);
    out.labels[x] = f;
    let set = if alphabet.is_zero_flavor(f) {
        l.ideal.set().with(x)
    } else {
        l.ideal.set().without(x)
    };
    out.ideal = OrderIdeal::from_set_unchecked(set);
    out
}

/// Toggle the extension from its top element down.
pub fn q_rowmotion_by(
    p: &Poset,
    alphabet: &FlavorAlphabet,
    ext: &LinearExtension,
    l: &QLabeling,
) -> QLabeling {
    ext.order()
        .iter()
        .rev()
        .fold(l.clone(), |acc, &x| q_toggle(p, alphabet, x, &acc))
}

pub fn q_rowmotion(p: &Poset, alphabet: &FlavorAlphabet, l: &QLabeling) -> QLabeling {
    q_rowmotion_by(p, alphabet, &p.linear_extension(), l)
}

/// Orbits of q-rowmotion, as index lists into `space`.
pub fn q_orbits(
    p: &Poset,
    alphabet: &FlavorAlphabet,
    space: &[QLabeling],
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&QLabeling, usize> = space.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let ext = p.linear_extension();
    let orbits = orbit_partition(space, |l| q_rowmotion_by(p, alphabet, &ext, l))?;
    Ok(orbits
        .into_iter()
        .map(|o| o.states.iter().map(|l| index[l]).collect())
        .collect())
}

/// Per element, the number of toggle-in and toggle-out events along one orbit.
pub fn flavor_cycle_counts(p: &Poset, orbit: &[&QLabeling]) -> Vec<(usize, usize)> {
    (0..p.len())
        .map(|x| {
            let active = orbit.iter().filter(|l| is_active(p, l, x));
            let ins = active.clone().filter(|l| !l.ideal.contains(x)).count();
            (ins, active.count() - ins)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct QHomomesyReport {
    pub r: usize,
    pub s: usize,
    pub labelings: usize,
    pub orbit_sizes: Vec<usize>,
    pub is_homomesic: bool,
    pub global_average: Rational,
    pub per_orbit_averages: Vec<Rational>,
    /// c(r/s), when an expected value was given and has no pole there.
    pub expected: Option<Rational>,
    pub matches_expected: Option<bool>,
}

impl QHomomesyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let r = |v: &Rational| v.to_json();
        json!({
            "r": self.r,
            "s": self.s,
            "labelings": self.labelings,
            "orbit_sizes": self.orbit_sizes,
            "is_homomesic": self.is_homomesic,
            "global_average": r(&self.global_average),
            "per_orbit_averages": self.per_orbit_averages.iter().map(r).collect::<Vec<_>>(),
            "expected": self.expected.as_ref().map(r),
            "matches_expected": self.matches_expected,
        })
    }
}

/// Orbit averages of a statistic on J(P), read on labelings through their zero-sets.
pub fn q_homomesy_check(
    lat: &IdealLattice,
    alphabet: &FlavorAlphabet,
    f: &Stat,
    expected: Option<&RationalFunction>,
    cap: usize,
) -> Result<QHomomesyReport> {
    if f.len() != lat.len() {
        return Err(Error::Mismatch(format!(
            "statistic has {} values, lattice has {} ideals",
            f.len(),
            lat.len()
        )));
    }
    let space = enumerate_labelings(lat, alphabet, cap)?;
    let orbits = q_orbits(lat.poset(), alphabet, &space)?;
    let value = |k: usize| &f.values()[lat.index_of(space[k].ideal)];
    let avg =
        |o: &[usize]| o.iter().fold(Rational::zero(), |a, &k| a + value(k)) / int(o.len() as i64);
    let per: Vec<Rational> = orbits.iter().map(|o| avg(o)).collect();
    let all: Vec<usize> = (0..space.len()).collect();
    let global = avg(&all);
    let expected = expected.and_then(|c| c.eval(&alphabet.q()));
    Ok(QHomomesyReport {
        r: alphabet.r(),
        s: alphabet.s(),
        labelings: space.len(),
        orbit_sizes: orbits.iter().map(Vec::len).collect(),
        is_homomesic: per.iter().all(|a| *a == global),
        matches_expected: expected.as_ref().map(|e| per.iter().all(|a| a == e)),
        expected,
        global_average: global,
        per_orbit_averages: per,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ideal_orbits, rowmotion, Action};
    use crate::families::*;
    use crate::lifted::seeded_rng;
    use crate::poly::{q_binomial, q_number};
    use crate::statistics::{named_statistic, t_q, StatKind};

    fn lat(p: Poset) -> IdealLattice {
        IdealLattice::new(p).unwrap()
    }

    #[test]
    fn counts() {
        let a2 = lat(root_poset_a(2).unwrap());
        let al = FlavorAlphabet::new(1, 2).unwrap();
        assert_eq!(enumerate_labelings(&a2, &al, 100).unwrap().len(), 17);
        let sq = lat(rectangle(2, 2).unwrap());
        let all = enumerate_labelings(&sq, &al, 100).unwrap();
        assert_eq!(all.len(), 35);
        // s^{ab} qbinom(4,2) at q = 1/2
        assert_eq!(
            int(16) * q_binomial(4, 2).unwrap().eval(&crate::scalar::rat(1, 2)),
            int(35)
        );
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 35);
        assert!(matches!(
            enumerate_labelings(&sq, &al, 34),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn alphabets() {
        assert_eq!(FlavorAlphabet::new(1, 2).unwrap().theta(), &[1, 2, 0]);
        assert!(FlavorAlphabet::with_theta(2, 2, vec![1, 0, 3, 2]).is_err());
        assert!(FlavorAlphabet::with_theta(1, 1, vec![0, 1]).is_err());
        assert!(FlavorAlphabet::new(0, 2).is_err());
        let mut rng = seeded_rng(9);
        for _ in 0..20 {
            let a = FlavorAlphabet::random(3, 2, &mut rng).unwrap();
            assert!(check_cycle(a.theta()).is_ok());
        }
        assert!(FlavorAlphabet::new(1, 1)
            .unwrap()
            .with_local(vec![vec![0, 1]])
            .is_err());
    }

    #[test]
    fn r_equals_s_equals_one_is_classical() {
        for p in [root_poset_a(3).unwrap(), rectangle(2, 3).unwrap()] {
            let l = lat(p);
            let p = l.poset();
            let al = FlavorAlphabet::new(1, 1).unwrap();
            let space = enumerate_labelings(&l, &al, 1000).unwrap();
            assert_eq!(space.len(), l.len());
            for q in &space {
                assert_eq!(q_rowmotion(p, &al, q).ideal(), rowmotion(p, q.ideal()));
            }
            let mut a: Vec<usize> = q_orbits(p, &al, &space)
                .unwrap()
                .iter()
                .map(Vec::len)
                .collect();
            let mut b: Vec<usize> = ideal_orbits(&l, &Action::Rowmotion)
                .unwrap()
                .iter()
                .map(Vec::len)
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn toggles_cycle_and_stay_in_the_space() {
        let l = lat(shifted_staircase(3).unwrap());
        let p = l.poset();
        let al = FlavorAlphabet::random(2, 3, &mut seeded_rng(10)).unwrap();
        for lab in enumerate_labelings(&l, &al, 100_000)
            .unwrap()
            .iter()
            .step_by(7)
        {
            for x in 0..p.len() {
                let t = q_toggle(p, &al, x, lab);
                assert!(QLabeling::new(p, &al, t.labels().to_vec()).is_ok_and(|u| u == t));
                if is_active(p, lab, x) {
                    let back = (0..5).fold(lab.clone(), |acc, _| q_toggle(p, &al, x, &acc));
                    assert_eq!(&back, lab);
                } else {
                    assert_eq!(&t, lab);
                }
            }
        }
    }

    #[test]
    fn extension_independence() {
        let l = lat(rectangle(2, 2).unwrap());
        let p = l.poset();
        let al = FlavorAlphabet::new(2, 3).unwrap();
        let a = p.linear_extension();
        let mut swapped = a.order().to_vec();
        swapped.swap(1, 2);
        let other = p.check_linear_extension(swapped).unwrap();
        for lab in enumerate_labelings(&l, &al, 10_000).unwrap() {
            assert_eq!(
                q_rowmotion_by(p, &al, &a, &lab),
                q_rowmotion_by(p, &al, &other, &lab)
            );
        }
    }

    #[test]
    fn q_striker_and_flavor_counts() {
        let mut rng = seeded_rng(11);
        for p in [root_poset_a(2).unwrap(), rectangle(2, 2).unwrap()] {
            let l = lat(p);
            let p = l.poset();
            for (r, s) in [(1, 1), (1, 2), (2, 1), (2, 3)] {
                let al = FlavorAlphabet::random(r, s, &mut rng).unwrap();
                let space = enumerate_labelings(&l, &al, 100_000).unwrap();
                let orbits = q_orbits(p, &al, &space).unwrap();
                assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), space.len());
                for x in 0..p.len() {
                    let f = t_q(&l, x).specialize(&al.q()).unwrap();
                    let rep = q_homomesy_check(&l, &al, &f, None, 100_000).unwrap();
                    assert!(rep.is_homomesic && rep.global_average.is_zero());
                }
                for o in &orbits {
                    let states: Vec<&QLabeling> = o.iter().map(|&k| &space[k]).collect();
                    for (ins, outs) in flavor_cycle_counts(p, &states) {
                        let alpha = (ins + outs) / (r + s);
                        assert_eq!((ins, outs), (alpha * r, alpha * s));
                    }
                }
            }
        }
    }

    #[test]
    fn rectangle_antichains_at_r_over_s() {
        for (a, b) in [(1, 2), (2, 2), (2, 3)] {
            let l = lat(rectangle(a, b).unwrap());
            let f = named_statistic(l.poset(), &StatKind::AntichainCard)
                .unwrap()
                .evaluate(&l, "ac");
            let c = RationalFunction::new(q_number(a) * q_number(b), q_number(a + b));
            for (r, s) in [(1, 2), (2, 1), (3, 2)] {
                let rep = q_homomesy_check(
                    &l,
                    &FlavorAlphabet::new(r, s).unwrap(),
                    &f,
                    Some(&c),
                    1_000_000,
                )
                .unwrap();
                assert_eq!(rep.matches_expected, Some(true), "{a}x{b} r={r} s={s}");
            }
        }
    }

    #[test]
    fn local_cycles_keep_q_striker() {
        let l = lat(root_poset_a(2).unwrap());
        let mut rng = seeded_rng(12);
        let local = (0..3).map(|_| random_cycle(3, &mut rng)).collect();
        let al = FlavorAlphabet::new(1, 2)
            .unwrap()
            .with_local(local)
            .unwrap();
        for x in 0..3 {
            let f = t_q(&l, x).specialize(&al.q()).unwrap();
            assert!(q_homomesy_check(&l, &al, &f, None, 100)
                .unwrap()
                .global_average
                .is_zero());
        }
    }
}
