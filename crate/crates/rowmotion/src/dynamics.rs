use std::collections::HashSet;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::lattice::IdealLattice;
use crate::poset::{Antichain, LinearExtension, OrderIdeal, Poset};

pub const DEFAULT_ORBIT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<S> {
    pub states: Vec<S>,
}

impl<S> Orbit<S> {
    pub fn period(&self) -> usize {
        self.states.len()
    }
}

pub fn toggle(p: &Poset, x: usize, i: OrderIdeal) -> OrderIdeal {
    let s = i.set();
    let t = if s.contains(x) {
        if p.upper_covers(x).intersection(s).is_empty() {
            s.without(x)
        } else {
            s
        }
    } else if p.lower_covers(x).is_subset(s) {
        s.with(x)
    } else {
        s
    };
    OrderIdeal::from_set_unchecked(t)
}

/// Ideal generated by min(P \ I).
pub fn rowmotion(p: &Poset, i: OrderIdeal) -> OrderIdeal {
    p.ideal_generated_by(p.minimal_complement(i))
}

/// t_{p_1} ∘ … ∘ t_{p_n}: toggles from the top of the extension down.
pub fn rowmotion_by_toggles(p: &Poset, ext: &LinearExtension, i: OrderIdeal) -> OrderIdeal {
    ext.order()
        .iter()
        .rev()
        .fold(i, |acc, &x| toggle(p, x, acc))
}

pub fn rank_toggle(p: &Poset, r: u32, i: OrderIdeal) -> Result<OrderIdeal> {
    if p.ranks().is_none() {
        return Err(Error::NotRanked);
    }
    Ok(p.elements_of_rank(r)
        .iter()
        .fold(i, |acc, x| toggle(p, x, acc)))
}

/// A permutation σ of the ranks {0, …, rk(P)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPermutation(Vec<u32>);

impl RankPermutation {
    pub fn new(p: &Poset, sigma: Vec<u32>) -> Result<Self> {
        let top = p.max_rank().ok_or(Error::NotRanked)?;
        let mut sorted = sigma.clone();
        sorted.sort();
        if sorted != (0..=top).collect::<Vec<_>>() {
            return Err(Error::InvalidPermutation(format!(
                "{sigma:?} is not a permutation of 0..={top}"
            )));
        }
        Ok(RankPermutation(sigma))
    }

    pub fn identity(p: &Poset) -> Result<Self> {
        let top = p.max_rank().ok_or(Error::NotRanked)?;
        Ok(RankPermutation((0..=top).collect()))
    }

    /// Odd ranks first, then even: (1, 3, 5, …, 0, 2, 4, …).
    pub fn gyration(p: &Poset) -> Result<Self> {
        let top = p.max_rank().ok_or(Error::NotRanked)?;
        let odd = (0..=top).filter(|r| r % 2 == 1);
        let even = (0..=top).filter(|r| r % 2 == 0);
        Ok(RankPermutation(odd.chain(even).collect()))
    }

    pub fn ranks(&self) -> &[u32] {
        &self.0
    }
}

/// row_σ = rk_{σ(0)} ∘ … ∘ rk_{σ(top)}, so rank σ(top) is toggled first.
pub fn rowmotion_sigma(p: &Poset, sigma: &RankPermutation, i: OrderIdeal) -> OrderIdeal {
    sigma.0.iter().rev().fold(i, |acc, &r| {
        p.elements_of_rank(r)
            .iter()
            .fold(acc, |a, x| toggle(p, x, a))
    })
}

pub fn gyration(p: &Poset, i: OrderIdeal) -> Result<OrderIdeal> {
    Ok(rowmotion_sigma(p, &RankPermutation::gyration(p)?, i))
}

/// ∇(A) = min(P \ ⟨A⟩).
pub fn antichain_rowmotion(p: &Poset, a: Antichain) -> Antichain {
    p.minimal_complement(p.ideal_generated_by(a))
}

/// The actions on J(P) the library knows how to iterate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Rowmotion,
    Sigma(RankPermutation),
}

impl Action {
    pub fn gyration(p: &Poset) -> Result<Self> {
        Ok(Action::Sigma(RankPermutation::gyration(p)?))
    }

    pub fn apply(&self, p: &Poset, i: OrderIdeal) -> OrderIdeal {
        match self {
            Action::Rowmotion => rowmotion(p, i),
            Action::Sigma(s) => rowmotion_sigma(p, s, i),
        }
    }

    /// Order in which single-element toggles are applied, first to last.
    pub fn toggle_sequence(&self, p: &Poset) -> Vec<usize> {
        match self {
            Action::Rowmotion => p.linear_extension().order().iter().rev().copied().collect(),
            Action::Sigma(s) => {
                s.0.iter()
                    .rev()
                    .flat_map(|&r| p.elements_of_rank(r).iter())
                    .collect()
            }
        }
    }
}

/// Forward iteration until the start recurs.
pub fn orbit<S: Clone + Eq + Hash>(f: impl Fn(&S) -> S, start: S, cap: usize) -> Result<Orbit<S>> {
    let mut states = vec![start.clone()];
    let mut seen = HashSet::from([start.clone()]);
    loop {
        let next = f(states.last().unwrap());
        if next == start {
            return Ok(Orbit { states });
        }
        if !seen.insert(next.clone()) {
            return Err(Error::Check(
                "map is not a bijection: orbit entered a cycle avoiding its start".into(),
            ));
        }
        if states.len() >= cap {
            return Err(Error::ResourceCap {
                what: "orbit length".into(),
                limit: cap,
            });
        }
        states.push(next);
    }
}

/// Orbits of a bijection on an explicit finite state space, in order of first state.
pub fn orbit_partition<S: Clone + Eq + Hash>(
    space: &[S],
    f: impl Fn(&S) -> S,
) -> Result<Vec<Orbit<S>>> {
    let all: HashSet<&S> = space.iter().collect();
    if all.len() != space.len() {
        return Err(Error::InvalidArgument(
            "state space has repeated states".into(),
        ));
    }
    let mut visited: HashSet<S> = HashSet::new();
    let mut out = vec![];
    for s in space {
        if visited.contains(s) {
            continue;
        }
        let o = orbit(&f, s.clone(), space.len())?;
        for t in &o.states {
            if !all.contains(t) {
                return Err(Error::Check("map is not closed on the state space".into()));
            }
            if !visited.insert(t.clone()) {
                return Err(Error::Check("map is not a bijection".into()));
            }
        }
        out.push(o);
    }
    Ok(out)
}

/// Orbits of a permutation of `0..n`, each listed from its least index.
pub fn permutation_orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = vec![];
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut o = vec![];
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            o.push(k);
            k = perm[k];
        }
        out.push(o);
    }
    out
}

/// Orbits of an action on J(P) as lists of canonical ideal indices.
pub fn ideal_orbits(lat: &IdealLattice, action: &Action) -> Result<Vec<Vec<usize>>> {
    let perm = lat.permutation(|i| action.apply(lat.poset(), i))?;
    Ok(permutation_orbits(&perm))
}
