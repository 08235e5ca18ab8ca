use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::poset::{ElementSet, OrderIdeal, Poset};

pub const DEFAULT_IDEAL_CAP: usize = 2_000_000;

/// J(P) in canonical order: by cardinality, then by bitmask value.
pub fn enumerate_ideals(p: &Poset, cap: usize) -> Result<Vec<OrderIdeal>> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut queue = VecDeque::from([OrderIdeal::EMPTY]);
    seen.insert(ElementSet::EMPTY);
    let mut out = vec![];
    while let Some(i) = queue.pop_front() {
        out.push(i);
        for x in p.minimal_complement(i).set().iter() {
            let j = i.set().with(x);
            if seen.insert(j) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap {
                        what: "order ideals".into(),
                        limit: cap,
                    });
                }
                queue.push_back(OrderIdeal::from_set_unchecked(j));
            }
        }
    }
    out.sort_by_key(|i| (i.len(), i.set()));
    Ok(out)
}

/// A poset together with its enumerated ideals; the index space of every statistic.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    poset: Poset,
    ideals: Vec<OrderIdeal>,
    index: HashMap<OrderIdeal, usize>,
}

impl IdealLattice {
    pub fn new(poset: Poset) -> Result<Self> {
        Self::with_cap(poset, DEFAULT_IDEAL_CAP)
    }

    pub fn with_cap(poset: Poset, cap: usize) -> Result<Self> {
        let ideals = enumerate_ideals(&poset, cap)?;
        let index = ideals.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Ok(IdealLattice {
            poset,
            ideals,
            index,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, i: OrderIdeal) -> usize {
        self.index[&i]
    }

    pub fn get_index(&self, i: OrderIdeal) -> Option<usize> {
        self.index.get(&i).copied()
    }

    /// A map on ideals as a permutation of indices; errors if it leaves J(P) or is not bijective.
    pub fn permutation(&self, f: impl Fn(OrderIdeal) -> OrderIdeal) -> Result<Vec<usize>> {
        let perm: Vec<usize> = self
            .ideals
            .iter()
            .map(|&i| {
                self.get_index(f(i))
                    .ok_or_else(|| Error::Check("map leaves J(P)".into()))
            })
            .collect::<Result<_>>()?;
        let mut hit = vec![false; perm.len()];
        for &k in &perm {
            if std::mem::replace(&mut hit[k], true) {
                return Err(Error::Check("map is not a bijection".into()));
            }
        }
        Ok(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(a: usize, b: usize) -> Poset {
        let idx = |i: usize, j: usize| i * b + j;
        let mut covers = vec![];
        for i in 0..a {
            for j in 0..b {
                if i + 1 < a {
                    covers.push((idx(i, j), idx(i + 1, j)));
                }
                if j + 1 < b {
                    covers.push((idx(i, j), idx(i, j + 1)));
                }
            }
        }
        Poset::new(a * b, covers).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |c, i| c * (n - i) / (i + 1))
    }

    /// Brute force over all subsets.
    fn ideals_by_subsets(p: &Poset) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = (0u128..1 << p.len())
            .map(ElementSet)
            .filter(|&s| p.is_ideal(s))
            .collect();
        v.sort_by_key(|s| (s.len(), *s));
        v
    }

    #[test]
    fn counts() {
        assert_eq!(
            enumerate_ideals(&Poset::new(0, vec![]).unwrap(), 10).unwrap(),
            vec![OrderIdeal::EMPTY]
        );
        assert_eq!(enumerate_ideals(&grid(2, 2), 10).unwrap().len(), 6);
        for a in 1..=6 {
            for b in 1..=6 {
                let n = enumerate_ideals(&grid(a, b), DEFAULT_IDEAL_CAP)
                    .unwrap()
                    .len();
                assert_eq!(n as u64, binom((a + b) as u64, b as u64));
            }
        }
        assert!(matches!(
            enumerate_ideals(&grid(3, 3), 5),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn canonical_order_and_max_bijection() {
        let lat = IdealLattice::new(grid(3, 3)).unwrap();
        let p = lat.poset();
        let sets: Vec<ElementSet> = lat.ideals().iter().map(|i| i.set()).collect();
        assert_eq!(sets, ideals_by_subsets(p));
        let mut maxes = HashSet::new();
        for &i in lat.ideals() {
            let m = p.maximal_elements(i);
            assert!(p.is_antichain(m.set()));
            assert_eq!(p.ideal_generated_by(m), i);
            maxes.insert(m);
        }
        assert_eq!(maxes.len(), lat.len());
    }

    fn random_poset() -> impl Strategy<Value = Poset> {
        // random DAG on up to 9 elements, reduced to its covers
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let mut below = vec![ElementSet::EMPTY; n];
                for y in 0..n {
                    for x in 0..y {
                        if bits[x * n + y] {
                            below[y] = below[y].with(x).union(below[x]);
                        }
                    }
                }
                let mut covers = vec![];
                for y in 0..n {
                    for x in below[y].iter() {
                        if !below[y].iter().any(|z| below[z].contains(x)) {
                            covers.push((x, y));
                        }
                    }
                }
                Poset::new(n, covers).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn enumeration_matches_brute_force(p in random_poset()) {
            let lat = IdealLattice::new(p).unwrap();
            let sets: Vec<ElementSet> = lat.ideals().iter().map(|i| i.set()).collect();
            prop_assert_eq!(sets, ideals_by_subsets(lat.poset()));
            for &i in lat.ideals() {
                let p = lat.poset();
                prop_assert!((0..p.len()).all(|y| !i.contains(y) || p.down_set(y).is_subset(i.set())));
            }
        }
    }
}
