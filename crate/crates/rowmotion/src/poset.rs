use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 128;

/// Subset of the ground set as a bitmask; bit `k` is element `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(pub u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        if n == 128 {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(p: usize) -> Self {
        ElementSet(1u128 << p)
    }

    pub fn from_elements(it: impl IntoIterator<Item = usize>) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, p| s.with(p))
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn with(self, p: usize) -> Self {
        ElementSet(self.0 | 1 << p)
    }

    pub fn without(self, p: usize) -> Self {
        ElementSet(self.0 & !(1 << p))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        ElementSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        ElementSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        ElementSet(self.0 & !o.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                p
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal(ElementSet);

impl OrderIdeal {
    pub const EMPTY: OrderIdeal = OrderIdeal(ElementSet::EMPTY);

    pub(crate) fn from_set_unchecked(s: ElementSet) -> Self {
        OrderIdeal(s)
    }

    pub fn set(self) -> ElementSet {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0.contains(p)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(ElementSet);

impl Antichain {
    pub const EMPTY: Antichain = Antichain(ElementSet::EMPTY);

    pub fn set(self) -> ElementSet {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0.contains(p)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExtension(Vec<usize>);

impl LinearExtension {
    pub fn order(&self) -> &[usize] {
        &self.0
    }
}

/// Which constructor produced a poset; rooks and coordinate statistics check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Rectangle { a: usize, b: usize },
    ShiftedStaircase { n: usize },
    RootA { n: usize },
    RootB { n: usize },
    DoubleTailedDiamond { n: usize },
    E6,
    E7,
    Trapezoid { a: usize, b: usize },
    ChainOfVs { n: usize },
    Cartan,
    Custom,
}

#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    coords: Option<Vec<(i32, i32)>>,
    rank: Option<Vec<u32>>,
    colors: Option<Vec<u32>>,
    name: Option<String>,
    family: Family,
    lower: Vec<ElementSet>,
    upper: Vec<ElementSet>,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    at: HashMap<(i32, i32), usize>,
}

impl Poset {
    /// Builds a poset from its cover relations. Covers must be irredundant and acyclic.
    pub fn new(n: usize, covers: Vec<(usize, usize)>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::MalformedPoset(format!(
                "{n} elements; at most {MAX_ELEMENTS} are supported"
            )));
        }
        let mut lower = vec![ElementSet::EMPTY; n];
        let mut upper = vec![ElementSet::EMPTY; n];
        for &(x, y) in &covers {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            if x == y {
                return Err(Error::MalformedPoset(format!("self-cover at {x}")));
            }
            if upper[x].contains(y) {
                return Err(Error::MalformedPoset(format!("duplicate cover ({x}, {y})")));
            }
            upper[x] = upper[x].with(y);
            lower[y] = lower[y].with(x);
        }
        let order = topological_order(n, &lower, &upper)
            .ok_or_else(|| Error::MalformedPoset("cover relation has a cycle".into()))?;
        let mut down = vec![ElementSet::EMPTY; n];
        for &x in &order {
            down[x] = lower[x]
                .iter()
                .fold(ElementSet::singleton(x), |s, y| s.union(down[y]));
        }
        let mut up = vec![ElementSet::EMPTY; n];
        for &x in order.iter().rev() {
            up[x] = upper[x]
                .iter()
                .fold(ElementSet::singleton(x), |s, y| s.union(up[y]));
        }
        for &(x, y) in &covers {
            // y covers x only if no other lower cover of y sits above x
            if lower[y].without(x).iter().any(|z| up[x].contains(z)) {
                return Err(Error::MalformedPoset(format!(
                    "({x}, {y}) is not a cover relation"
                )));
            }
        }
        let mut p = Poset {
            n,
            covers,
            coords: None,
            rank: None,
            colors: None,
            name: None,
            family: Family::Custom,
            lower,
            upper,
            down,
            up,
            at: HashMap::new(),
        };
        p.rank = p.infer_rank();
        Ok(p)
    }

    pub fn with_coords(mut self, coords: Vec<(i32, i32)>) -> Result<Self> {
        if coords.len() != self.n {
            return Err(Error::MalformedPoset(
                "coordinate list has the wrong length".into(),
            ));
        }
        let mut at = HashMap::new();
        for (k, &c) in coords.iter().enumerate() {
            if at.insert(c, k).is_some() {
                return Err(Error::MalformedPoset(format!("duplicate coordinate {c:?}")));
            }
        }
        for &(x, y) in &self.covers {
            let ((i, j), (k, l)) = (coords[x], coords[y]);
            if !(i <= k && j <= l) {
                return Err(Error::MalformedPoset(format!(
                    "cover {x} < {y} is not increasing in coordinates"
                )));
            }
        }
        self.coords = Some(coords);
        self.at = at;
        Ok(self)
    }

    pub fn with_rank(mut self, rank: Vec<u32>) -> Result<Self> {
        if rank.len() != self.n {
            return Err(Error::MalformedPoset(
                "rank list has the wrong length".into(),
            ));
        }
        if self.covers.iter().any(|&(x, y)| rank[y] != rank[x] + 1) {
            return Err(Error::MalformedPoset(
                "rank violates the cover increment law".into(),
            ));
        }
        if self.n > 0 && !rank.contains(&0) {
            return Err(Error::MalformedPoset("no element has rank 0".into()));
        }
        self.rank = Some(rank);
        Ok(self)
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::MalformedPoset(
                "color list has the wrong length".into(),
            ));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    /// Ranks with every component's minimum at 0, if a rank function exists.
    fn infer_rank(&self) -> Option<Vec<u32>> {
        let mut rank: Vec<Option<i64>> = vec![None; self.n];
        for s in 0..self.n {
            if rank[s].is_some() {
                continue;
            }
            rank[s] = Some(0);
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(x) = stack.pop() {
                let r = rank[x].unwrap();
                let nbrs = self.upper[x].iter().map(|y| (y, r + 1));
                let nbrs = nbrs.chain(self.lower[x].iter().map(|y| (y, r - 1)));
                for (y, ry) in nbrs.collect::<Vec<_>>() {
                    match rank[y] {
                        None => {
                            rank[y] = Some(ry);
                            stack.push(y);
                            comp.push(y);
                        }
                        Some(v) if v != ry => return None,
                        Some(_) => {}
                    }
                }
            }
            let m = comp.iter().map(|&x| rank[x].unwrap()).min().unwrap();
            for &x in &comp {
                rank[x] = Some(rank[x].unwrap() - m);
            }
        }
        Some(rank.into_iter().map(|r| r.unwrap() as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn coords(&self) -> Option<&[(i32, i32)]> {
        self.coords.as_deref()
    }

    pub fn coord(&self, p: usize) -> Option<(i32, i32)> {
        self.coords.as_ref().map(|c| c[p])
    }

    /// Element at a grid coordinate, if present.
    pub fn at(&self, i: i32, j: i32) -> Option<usize> {
        self.at.get(&(i, j)).copied()
    }

    pub fn ranks(&self) -> Option<&[u32]> {
        self.rank.as_deref()
    }

    pub fn rank(&self, p: usize) -> Option<u32> {
        self.rank.as_ref().map(|r| r[p])
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn lower_covers(&self, p: usize) -> ElementSet {
        self.lower[p]
    }

    pub fn upper_covers(&self, p: usize) -> ElementSet {
        self.upper[p]
    }

    /// Principal down-set of `p`, including `p`.
    pub fn down_set(&self, p: usize) -> ElementSet {
        self.down[p]
    }

    pub fn up_set(&self, p: usize) -> ElementSet {
        self.up[p]
    }

    fn check(&self, p: usize) -> Result<()> {
        if p < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: p,
                n: self.n,
            })
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.down[y].contains(x))
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x) || self.down[x].contains(y)
    }

    /// Element label: coordinates when present, otherwise the index.
    pub fn label(&self, p: usize) -> String {
        match self.coord(p) {
            Some((i, j)) => format!("{i},{j}"),
            None => p.to_string(),
        }
    }

    pub fn is_ideal(&self, s: ElementSet) -> bool {
        s.is_subset(self.full()) && s.iter().all(|p| self.lower[p].is_subset(s))
    }

    pub fn is_antichain(&self, s: ElementSet) -> bool {
        s.is_subset(self.full())
            && s.iter()
                .all(|p| self.down[p].intersection(s) == ElementSet::singleton(p))
    }

    pub fn ideal(&self, s: ElementSet) -> Result<OrderIdeal> {
        if self.is_ideal(s) {
            Ok(OrderIdeal(s))
        } else {
            Err(Error::NotAnIdeal)
        }
    }

    pub fn antichain(&self, s: ElementSet) -> Result<Antichain> {
        if self.is_antichain(s) {
            Ok(Antichain(s))
        } else {
            Err(Error::NotAnAntichain)
        }
    }

    pub fn full_ideal(&self) -> OrderIdeal {
        OrderIdeal(self.full())
    }

    /// min(P \ I).
    pub fn minimal_complement(&self, i: OrderIdeal) -> Antichain {
        let rest = self.full().difference(i.0);
        Antichain(ElementSet::from_elements(
            rest.iter().filter(|&p| self.lower[p].is_subset(i.0)),
        ))
    }

    /// max(I).
    pub fn maximal_elements(&self, i: OrderIdeal) -> Antichain {
        Antichain(ElementSet::from_elements(
            i.0.iter()
                .filter(|&p| self.upper[p].intersection(i.0).is_empty()),
        ))
    }

    pub fn minimal_elements(&self) -> Antichain {
        self.minimal_complement(OrderIdeal::EMPTY)
    }

    pub fn ideal_generated_by(&self, a: Antichain) -> OrderIdeal {
        OrderIdeal(self.down_closure(a.0))
    }

    pub fn down_closure(&self, s: ElementSet) -> ElementSet {
        s.iter()
            .fold(ElementSet::EMPTY, |acc, p| acc.union(self.down[p]))
    }

    /// Lexicographically least topological order by element index.
    pub fn linear_extension(&self) -> LinearExtension {
        LinearExtension(
            topological_order(self.n, &self.lower, &self.upper).expect("acyclic by construction"),
        )
    }

    pub fn check_linear_extension(&self, order: Vec<usize>) -> Result<LinearExtension> {
        if order.len() != self.n {
            return Err(Error::InvalidArgument(
                "linear extension has the wrong length".into(),
            ));
        }
        let mut seen = ElementSet::EMPTY;
        for &p in &order {
            self.check(p)?;
            if seen.contains(p) || !self.lower[p].is_subset(seen) {
                return Err(Error::InvalidArgument("not a linear extension".into()));
            }
            seen = seen.with(p);
        }
        Ok(LinearExtension(order))
    }

    pub fn dual(&self) -> Poset {
        let covers = self.covers.iter().map(|&(x, y)| (y, x)).collect();
        let mut d = Poset::new(self.n, covers).expect("dual of a valid poset");
        if let Some(cs) = &self.coords {
            let (imin, imax) = (
                cs.iter().map(|c| c.0).min().unwrap(),
                cs.iter().map(|c| c.0).max().unwrap(),
            );
            let (jmin, jmax) = (
                cs.iter().map(|c| c.1).min().unwrap(),
                cs.iter().map(|c| c.1).max().unwrap(),
            );
            let rot = cs
                .iter()
                .map(|&(i, j)| (imin + imax - i, jmin + jmax - j))
                .collect();
            d = d
                .with_coords(rot)
                .expect("rotated coordinates stay consistent");
        }
        if let Some(name) = &self.name {
            d = d.with_name(format!("dual({name})"));
        }
        d
    }

    /// Shortest and longest cover-path lengths from a minimal element.
    fn chain_lengths(&self) -> (Vec<usize>, Vec<usize>) {
        let order = self.linear_extension();
        let mut short = vec![0; self.n];
        let mut long = vec![0; self.n];
        for &x in order.order() {
            if !self.lower[x].is_empty() {
                short[x] = self.lower[x].iter().map(|y| short[y] + 1).min().unwrap();
                long[x] = self.lower[x].iter().map(|y| long[y] + 1).max().unwrap();
            }
        }
        (short, long)
    }

    /// All maximal chains have the same length.
    pub fn is_graded(&self) -> bool {
        let (short, long) = self.chain_lengths();
        let tops: BTreeSet<(usize, usize)> = (0..self.n)
            .filter(|&x| self.upper[x].is_empty())
            .map(|x| (short[x], long[x]))
            .collect();
        tops.len() <= 1 && tops.iter().all(|&(s, l)| s == l)
    }

    /// Common length of maximal chains, when graded.
    pub fn rank_of(&self) -> Option<usize> {
        if !self.is_graded() {
            return None;
        }
        let (_, long) = self.chain_lengths();
        Some(long.into_iter().max().unwrap_or(0))
    }

    /// Max rank value, for posets carrying a rank function.
    pub fn max_rank(&self) -> Option<u32> {
        self.rank
            .as_ref()
            .map(|r| r.iter().copied().max().unwrap_or(0))
    }

    pub fn elements_of_rank(&self, r: u32) -> ElementSet {
        match &self.rank {
            Some(rk) => ElementSet::from_elements((0..self.n).filter(|&p| rk[p] == r)),
            None => ElementSet::EMPTY,
        }
    }

    /// Every element covers at most two and is covered by at most two.
    pub fn has_at_most_two_covers(&self) -> bool {
        (0..self.n).all(|p| self.lower[p].len() <= 2 && self.upper[p].len() <= 2)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n,
            covers: self.covers.iter().map(|&(x, y)| [x, y]).collect(),
            coords: self
                .coords
                .as_ref()
                .map(|c| c.iter().map(|&(i, j)| [i, j]).collect()),
            name: self.name.clone(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let mut p = Poset::new(j.n, j.covers.iter().map(|c| (c[0], c[1])).collect())?;
        if let Some(cs) = &j.coords {
            p = p.with_coords(cs.iter().map(|c| (c[0], c[1])).collect())?;
        }
        if let Some(name) = &j.name {
            p = p.with_name(name.clone());
        }
        Ok(p)
    }
}

/// Poset interchange format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    pub coords: Option<Vec<[i32; 2]>>,
    pub name: Option<String>,
}

fn topological_order(n: usize, lower: &[ElementSet], upper: &[ElementSet]) -> Option<Vec<usize>> {
    let mut indeg: Vec<usize> = lower.iter().map(|s| s.len()).collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        out.push(x);
        for y in upper[x].iter() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    (out.len() == n).then_some(out)
}

/// Order isomorphism test by backtracking over local invariants.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return false;
    }
    let sig = |x: &Poset, v: usize| {
        (
            x.lower[v].len(),
            x.upper[v].len(),
            x.down[v].len(),
            x.up[v].len(),
        )
    };
    let mut ps: Vec<_> = (0..p.len()).map(|v| sig(p, v)).collect();
    let mut qs: Vec<_> = (0..q.len()).map(|v| sig(q, v)).collect();
    let order = p.linear_extension().0;
    let psig = ps.clone();
    let qsig = qs.clone();
    ps.sort();
    qs.sort();
    if ps != qs {
        return false;
    }
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    fn go(
        k: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        psig: &[(usize, usize, usize, usize)],
        qsig: &[(usize, usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..q.len() {
            if used[w] || psig[v] != qsig[w] {
                continue;
            }
            // lower covers of v are already mapped (topological order)
            let img = ElementSet::from_elements(p.lower[v].iter().map(|u| map[u]));
            if img != q.lower[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(k + 1, order, p, q, psig, qsig, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    go(0, &order, p, q, &psig, &qsig, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// [2]x[2] with elements (1,1),(1,2),(2,1),(2,2).
    fn square() -> Poset {
        Poset::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)])
            .unwrap()
            .with_coords(vec![(1, 1), (1, 2), (2, 1), (2, 2)])
            .unwrap()
    }

    fn chain(n: usize) -> Poset {
        Poset::new(n, (1..n).map(|k| (k - 1, k)).collect()).unwrap()
    }

    #[test]
    fn leq_examples() {
        let p = square();
        assert!(p.leq(0, 3).unwrap());
        assert!(p.leq(2, 2).unwrap());
        assert!(!p.leq(1, 2).unwrap() && !p.leq(2, 1).unwrap());
        assert!(p.leq(0, 7).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(Poset::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Poset::new(3, vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(Poset::new(2, vec![(0, 2)]).is_err());
        assert!(Poset::new(129, vec![]).is_err());
    }

    #[test]
    fn linear_extensions() {
        assert_eq!(chain(3).linear_extension().order(), &[0, 1, 2]);
        assert_eq!(
            Poset::new(2, vec![]).unwrap().linear_extension().order(),
            &[0, 1]
        );
        let p = Poset::new(3, vec![(2, 0)]).unwrap();
        assert_eq!(p.linear_extension().order(), &[1, 2, 0]);
        // brute force: the least valid permutation of [2]x[2]
        let sq = square();
        assert_eq!(sq.linear_extension().order(), &[0, 1, 2, 3]);
        assert!(sq.check_linear_extension(vec![0, 2, 1, 3]).is_ok());
        assert!(sq.check_linear_extension(vec![1, 0, 2, 3]).is_err());
    }

    #[test]
    fn min_max_examples() {
        let p = square();
        let s = |v: &[usize]| ElementSet::from_elements(v.iter().copied());
        assert_eq!(p.minimal_complement(OrderIdeal::EMPTY).set(), s(&[0]));
        assert!(p.minimal_complement(p.full_ideal()).is_empty());
        assert_eq!(
            p.minimal_complement(p.ideal(s(&[0])).unwrap()).set(),
            s(&[1, 2])
        );
        assert_eq!(p.maximal_elements(p.full_ideal()).set(), s(&[3]));
        assert!(p.maximal_elements(OrderIdeal::EMPTY).is_empty());
        assert_eq!(
            p.maximal_elements(p.ideal(s(&[0, 1, 2])).unwrap()).set(),
            s(&[1, 2])
        );
        assert_eq!(
            p.ideal_generated_by(p.antichain(s(&[3])).unwrap()),
            p.full_ideal()
        );
        assert!(p.antichain(s(&[0, 3])).is_err());
        assert!(p.ideal(s(&[1])).is_err());
    }

    #[test]
    fn grading() {
        assert!(square().is_graded());
        assert_eq!(square().rank_of(), Some(2));
        // 0 < 1 < 2 and 0 < 3: maximal chains of lengths 2 and 1
        let p = Poset::new(4, vec![(0, 1), (1, 2), (0, 3)]).unwrap();
        assert!(!p.is_graded());
        assert!(p.ranks().is_some());
        // a pentagon has no rank function at all
        let pent = Poset::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(pent.ranks().is_none());
        assert!(!pent.is_graded());
    }

    #[test]
    fn dual_and_isomorphism() {
        let sq = square();
        assert!(is_isomorphic(&sq.dual(), &sq));
        assert!(is_isomorphic(&chain(3).dual(), &chain(3)));
        let v = Poset::new(3, vec![(0, 1), (0, 2)]).unwrap();
        assert!(!is_isomorphic(&v.dual(), &v));
        assert!(is_isomorphic(&v.dual().dual(), &v));
        assert_eq!(sq.dual().coords().unwrap()[0], (2, 2));
    }

    #[test]
    fn json_round_trip() {
        let p = square().with_name("sq");
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: PosetJson = serde_json::from_str(&j).unwrap();
        let q = Poset::from_json(&back).unwrap();
        assert_eq!(q.covers(), p.covers());
        assert_eq!(q.coords(), p.coords());
        assert_eq!(q.name(), Some("sq"));
    }
}
