//! Statistics on J(P): dense vectors over the canonical ideal order, plus the symbolic
//! [`ToggleCombination`] form that rooks and named statistics are built in.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::root_poset_a;
use crate::lattice::IdealLattice;
use crate::poset::{Antichain, Family, OrderIdeal, Poset};
use crate::ratfunc::RationalFunction;
use crate::scalar::{int, Field, Rational, ScalarKind};

/// A function J(P) → F, stored in canonical ideal order.
#[derive(Clone, Debug, PartialEq)]
pub struct Statistic<F> {
    values: Vec<F>,
    label: String,
}

impl<F: Field> Statistic<F> {
    pub fn new(values: Vec<F>, label: impl Into<String>) -> Self {
        Statistic {
            values,
            label: label.into(),
        }
    }

    pub fn constant(lat: &IdealLattice, c: F) -> Self {
        let label = c.to_string();
        Statistic {
            values: vec![c; lat.len()],
            label,
        }
    }

    pub fn from_fn(
        lat: &IdealLattice,
        label: impl Into<String>,
        f: impl Fn(OrderIdeal) -> F,
    ) -> Self {
        Statistic {
            values: lat.ideals().iter().map(|&i| f(i)).collect(),
            label: label.into(),
        }
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        F::KIND
    }

    pub fn scale(&self, c: &F) -> Self {
        Statistic {
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
            label: format!("({c})*({})", self.label),
        }
    }

    pub fn is_constant(&self) -> Option<F> {
        let first = self.values.first()?;
        self.values
            .iter()
            .all(|v| v == first)
            .then(|| first.clone())
    }

    fn zip(&self, o: &Self, op: &str, f: impl Fn(F, F) -> F) -> Self {
        assert_eq!(self.len(), o.len(), "statistics over different lattices");
        Statistic {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
            label: format!("{} {op} {}", self.label, o.label),
        }
    }
}

impl Statistic<Rational> {
    /// The same values viewed in ℚ(q).
    pub fn to_q(&self) -> Statistic<RationalFunction> {
        Statistic {
            values: self
                .values
                .iter()
                .map(|v| RationalFunction::from(v.clone()))
                .collect(),
            label: self.label.clone(),
        }
    }
}

impl Statistic<RationalFunction> {
    /// Substitute q := `q`; `None` if some entry has a pole there.
    pub fn specialize(&self, q: &Rational) -> Option<Statistic<Rational>> {
        let values = self
            .values
            .iter()
            .map(|v| v.eval(q))
            .collect::<Option<_>>()?;
        Some(Statistic {
            values,
            label: format!("({})|q={q}", self.label),
        })
    }
}

impl<F: Field> Add for &Statistic<F> {
    type Output = Statistic<F>;
    fn add(self, o: &Statistic<F>) -> Statistic<F> {
        self.zip(o, "+", |a, b| a + b)
    }
}

impl<F: Field> Sub for &Statistic<F> {
    type Output = Statistic<F>;
    fn sub(self, o: &Statistic<F>) -> Statistic<F> {
        self.zip(o, "-", |a, b| a - b)
    }
}

impl<F: Field> Neg for &Statistic<F> {
    type Output = Statistic<F>;
    fn neg(self) -> Statistic<F> {
        Statistic {
            values: self.values.iter().map(|v| -v.clone()).collect(),
            label: format!("-({})", self.label),
        }
    }
}

/// c + Σ_p (a_p T⁺_p + a'_p T⁻_p + a''_p 1_p), kept symbolically.
#[derive(Clone, Debug, PartialEq)]
pub struct ToggleCombination {
    pub constant: Rational,
    pub t_in: Vec<Rational>,
    pub t_out: Vec<Rational>,
    pub ind: Vec<Rational>,
}

impl ToggleCombination {
    pub fn zero(n: usize) -> Self {
        ToggleCombination {
            constant: Rational::zero(),
            t_in: vec![Rational::zero(); n],
            t_out: vec![Rational::zero(); n],
            ind: vec![Rational::zero(); n],
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        ToggleCombination {
            constant: c,
            ..Self::zero(n)
        }
    }

    pub fn len(&self) -> usize {
        self.ind.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ind.is_empty()
    }

    /// The signed statistic T_p = T⁺_p − T⁻_p with coefficient `c`.
    pub fn add_signed(&mut self, p: usize, c: &Rational) {
        self.t_in[p] += c;
        self.t_out[p] -= c;
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let s = |v: &[Rational]| v.iter().map(|x| x * c).collect();
        ToggleCombination {
            constant: &self.constant * c,
            t_in: s(&self.t_in),
            t_out: s(&self.t_out),
            ind: s(&self.ind),
        }
    }

    pub fn eval(&self, p: &Poset, i: OrderIdeal) -> Rational {
        let mut v = self.constant.clone();
        for x in p.minimal_complement(i).set().iter() {
            v += &self.t_in[x];
        }
        for x in p.maximal_elements(i).set().iter() {
            v += &self.t_out[x];
        }
        for x in i.set().iter() {
            v += &self.ind[x];
        }
        v
    }

    pub fn evaluate(&self, lat: &IdealLattice, label: impl Into<String>) -> Statistic<Rational> {
        assert_eq!(self.len(), lat.poset().len());
        Statistic::from_fn(lat, label, |i| self.eval(lat.poset(), i))
    }

    /// Only T⁻ terms (and no constant): the combination lies in span{T⁻_p}.
    pub fn is_antichain_form(&self) -> bool {
        self.constant.is_zero() && self.t_in.iter().chain(&self.ind).all(Zero::is_zero)
    }

    pub fn is_ideal_form(&self) -> bool {
        self.constant.is_zero() && self.t_in.iter().chain(&self.t_out).all(Zero::is_zero)
    }
}

fn zip_with(
    a: &[Rational],
    b: &[Rational],
    f: impl Fn(&Rational, &Rational) -> Rational,
) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "combinations over different posets");
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl Add for &ToggleCombination {
    type Output = ToggleCombination;
    fn add(self, o: &ToggleCombination) -> ToggleCombination {
        ToggleCombination {
            constant: &self.constant + &o.constant,
            t_in: zip_with(&self.t_in, &o.t_in, |x, y| x + y),
            t_out: zip_with(&self.t_out, &o.t_out, |x, y| x + y),
            ind: zip_with(&self.ind, &o.ind, |x, y| x + y),
        }
    }
}

impl Sub for &ToggleCombination {
    type Output = ToggleCombination;
    fn sub(self, o: &ToggleCombination) -> ToggleCombination {
        self + &o.scale(&int(-1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ToggleKind {
    In,
    Out,
    Signed,
}

pub fn indicator_ideal(lat: &IdealLattice, p: usize) -> Statistic<Rational> {
    Statistic::from_fn(lat, format!("1_{}", lat.poset().label(p)), |i| {
        int(i.contains(p) as i64)
    })
}

pub fn t_in(lat: &IdealLattice, p: usize) -> Statistic<Rational> {
    let poset = lat.poset();
    Statistic::from_fn(lat, format!("T+_{}", poset.label(p)), |i| {
        int(poset.minimal_complement(i).contains(p) as i64)
    })
}

pub fn t_out(lat: &IdealLattice, p: usize) -> Statistic<Rational> {
    let poset = lat.poset();
    Statistic::from_fn(lat, format!("T-_{}", poset.label(p)), |i| {
        int(poset.maximal_elements(i).contains(p) as i64)
    })
}

pub fn t_signed(lat: &IdealLattice, p: usize) -> Statistic<Rational> {
    (&t_in(lat, p) - &t_out(lat, p)).with_label(format!("T_{}", lat.poset().label(p)))
}

/// T^q_p = T⁺_p − q·T⁻_p.
pub fn t_q(lat: &IdealLattice, p: usize) -> Statistic<RationalFunction> {
    let poset = lat.poset();
    let q = RationalFunction::q();
    Statistic::from_fn(lat, format!("Tq_{}", poset.label(p)), |i| {
        if poset.minimal_complement(i).contains(p) {
            RationalFunction::one()
        } else if poset.maximal_elements(i).contains(p) {
            -q.clone()
        } else {
            RationalFunction::zero()
        }
    })
}

/// T⁺_A, T⁻_A or T_A for an antichain A.
pub fn antichain_toggleability(
    lat: &IdealLattice,
    a: Antichain,
    kind: ToggleKind,
) -> Statistic<Rational> {
    let p = lat.poset();
    Statistic::from_fn(
        lat,
        format!("T{kind:?}_A{:?}", a.set().iter().collect::<Vec<_>>()),
        |i| {
            let tin = a.set().is_subset(p.minimal_complement(i).set()) as i64;
            let tout = a.set().is_subset(p.maximal_elements(i).set()) as i64;
            int(match kind {
                ToggleKind::In => tin,
                ToggleKind::Out => tout,
                ToggleKind::Signed => tin - tout,
            })
        },
    )
}

fn coords(p: &Poset) -> Result<&[(i32, i32)]> {
    p.coords()
        .ok_or_else(|| Error::Mismatch("statistic needs grid coordinates".into()))
}

/// Builds a combination by visiting every cell: `f` returns (T⁺, T⁻, 1) integer coefficients.
fn by_cells(p: &Poset, f: impl Fn(i32, i32) -> (i64, i64, i64)) -> Result<ToggleCombination> {
    let mut c = ToggleCombination::zero(p.len());
    for (k, &(i, j)) in coords(p)?.iter().enumerate() {
        let (a, b, d) = f(i, j);
        c.t_in[k] = int(a);
        c.t_out[k] = int(b);
        c.ind[k] = int(d);
    }
    Ok(c)
}

fn b(x: bool) -> i64 {
    x as i64
}

fn require_cell(p: &Poset, i: i32, j: i32) -> Result<()> {
    p.at(i, j)
        .map(|_| ())
        .ok_or(Error::CoordinateOutsidePoset(i, j))
}

/// R_{i,j} (or the reduced R̃_{i,j}) on a rectangle.
pub fn rook_rect(p: &Poset, i: i32, j: i32, reduced: bool) -> Result<ToggleCombination> {
    if !matches!(p.family(), Family::Rectangle { .. }) {
        return Err(Error::Mismatch("rectangle rooks need a rectangle".into()));
    }
    require_cell(p, i, j)?;
    by_cells(p, |x, y| {
        if reduced {
            (0, b(x == i) + b(y == j), 0)
        } else {
            (
                b(x <= i && y <= j) - b(x > i && y > j),
                b(x >= i && y >= j) - b(x < i && y < j),
                0,
            )
        }
    })
}

pub fn rook_sstair(p: &Poset, i: i32, j: i32, reduced: bool) -> Result<ToggleCombination> {
    if !matches!(p.family(), Family::ShiftedStaircase { .. }) {
        return Err(Error::Mismatch(
            "staircase rooks need a shifted staircase".into(),
        ));
    }
    require_cell(p, i, j)?;
    by_cells(p, |x, y| {
        if reduced {
            (
                0,
                b(x == i) + b(y == j) + b(x == y && x < i) + b(x == y && y > j),
                0,
            )
        } else {
            (
                b(x <= i && y <= j) - b(x > i && y > j && x < y),
                b(x >= i && y >= j) - b(x < i && y < j && x < y),
                0,
            )
        }
    })
}

fn root_index(p: &Poset, i: i32, want: fn(&Family) -> Option<usize>, what: &str) -> Result<i32> {
    let n = want(p.family())
        .ok_or_else(|| Error::Mismatch(format!("{what} rooks need a {what} root poset")))?;
    if i < 1 || i as usize > n {
        return Err(Error::InvalidArgument(format!(
            "rook index {i} outside 1..={n}"
        )));
    }
    Ok(n as i32)
}

/// R_i on Φ⁺(A_n), anchored at the anti-diagonal box (i, n+1−i).
pub fn rook_a(p: &Poset, i: i32, reduced: bool) -> Result<ToggleCombination> {
    let n = root_index(
        p,
        i,
        |f| {
            if let Family::RootA { n } = f {
                Some(*n)
            } else {
                None
            }
        },
        "type A",
    )?;
    let c = n + 1 - i;
    by_cells(p, |x, y| {
        if reduced {
            (0, b(x == i && y >= c) + b(y == c && x >= i), 0)
        } else {
            (
                b(x == i && y == c) - b(x > i && y > c),
                b(x >= i && y >= c),
                0,
            )
        }
    })
}

/// R_i on Φ⁺(B_n), anchored at (i, 2n−i).
pub fn rook_b(p: &Poset, i: i32, reduced: bool) -> Result<ToggleCombination> {
    let n = root_index(
        p,
        i,
        |f| {
            if let Family::RootB { n } = f {
                Some(*n)
            } else {
                None
            }
        },
        "type B",
    )?;
    let c = 2 * n - i;
    by_cells(p, |x, y| {
        if reduced {
            (
                0,
                b(x == i && y >= c) + b(y == c && x >= i) + b(x == y && y > c),
                0,
            )
        } else {
            (
                b(x == i && y == c) - b(x > i && y > c && y > x),
                b(x >= i && y >= c),
                0,
            )
        }
    })
}

/// R'_i(I) = R_i(ι(I)) with R_i taken on Φ⁺(A_{2n−1}); the A-combination is folded onto
/// (min, max) since the toggleability statistics commute with ι.
pub fn var_rook_b(p: &Poset, i: i32, reduced: bool) -> Result<ToggleCombination> {
    let n = root_index(
        p,
        i,
        |f| {
            if let Family::RootB { n } = f {
                Some(*n)
            } else {
                None
            }
        },
        "type B",
    )?;
    let double = root_poset_a(2 * n as usize - 1)?;
    let a = rook_a(&double, i, reduced)?;
    let mut out = ToggleCombination::zero(p.len());
    for (k, &(x, y)) in double.coords().unwrap().iter().enumerate() {
        let t = p
            .at(x.min(y), x.max(y))
            .expect("Φ⁺(A_{2n-1}) folds onto Φ⁺(B_n)");
        out.t_in[t] += &a.t_in[k];
        out.t_out[t] += &a.t_out[k];
        out.ind[t] += &a.ind[k];
    }
    Ok(out)
}

/// Σ_{i'≥i,j'≥j} T⁻ − Σ_{i'>i,j'>j} T⁺, which equals 1_{(i,j)} on rectangles and Φ⁺(A_n).
pub fn half_rook(p: &Poset, i: i32, j: i32) -> Result<ToggleCombination> {
    require_cell(p, i, j)?;
    by_cells(p, |x, y| (-b(x > i && y > j), b(x >= i && y >= j), 0))
}

/// Statistics with a name, as accepted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatKind {
    IdealCard,
    AntichainCard,
    File(i32),
    PosFiber(i32),
    NegFiber(i32),
    RankAlternating,
    DiagAntichain,
    ColorClass(u32),
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatKind::IdealCard => write!(f, "ideal_card"),
            StatKind::AntichainCard => write!(f, "antichain_card"),
            StatKind::File(k) => write!(f, "file:{k}"),
            StatKind::PosFiber(i) => write!(f, "pfiber:{i}"),
            StatKind::NegFiber(j) => write!(f, "nfiber:{j}"),
            StatKind::RankAlternating => write!(f, "rankalt"),
            StatKind::DiagAntichain => write!(f, "diag"),
            StatKind::ColorClass(c) => write!(f, "color:{c}"),
        }
    }
}

fn nonempty(c: ToggleCombination, kind: &StatKind) -> Result<ToggleCombination> {
    if c.t_out.iter().chain(&c.ind).all(Zero::is_zero) {
        Err(Error::Mismatch(format!(
            "{kind} selects no element of this poset"
        )))
    } else {
        Ok(c)
    }
}

/// Σ_{j−i=k} 1_{(i,j)}; empty files give the zero combination.
pub fn file_sum(p: &Poset, k: i32) -> Result<ToggleCombination> {
    by_cells(p, |i, j| (0, 0, b(j - i == k)))
}

pub fn named_statistic(p: &Poset, kind: &StatKind) -> Result<ToggleCombination> {
    let n = p.len();
    let all = |v: i64| vec![int(v); n];
    match kind {
        StatKind::IdealCard => Ok(ToggleCombination {
            ind: all(1),
            ..ToggleCombination::zero(n)
        }),
        StatKind::AntichainCard => Ok(ToggleCombination {
            t_out: all(1),
            ..ToggleCombination::zero(n)
        }),
        StatKind::File(k) => nonempty(file_sum(p, *k)?, kind),
        StatKind::PosFiber(r) => nonempty(by_cells(p, |i, _| (0, b(i == *r), 0))?, kind),
        StatKind::NegFiber(c) => nonempty(by_cells(p, |_, j| (0, b(j == *c), 0))?, kind),
        StatKind::DiagAntichain => nonempty(by_cells(p, |i, j| (0, b(i == j), 0))?, kind),
        StatKind::RankAlternating => {
            let ranks = p.ranks().ok_or(Error::NotRanked)?;
            let ind = ranks
                .iter()
                .map(|&r| int(if r % 2 == 0 { 1 } else { -1 }))
                .collect();
            Ok(ToggleCombination {
                ind,
                ..ToggleCombination::zero(n)
            })
        }
        StatKind::ColorClass(c) => {
            let colors = p
                .colors()
                .ok_or_else(|| Error::Mismatch("poset carries no coloring".into()))?;
            let ind = colors.iter().map(|&x| int((x == *c) as i64)).collect();
            nonempty(
                ToggleCombination {
                    ind,
                    ..ToggleCombination::zero(n)
                },
                kind,
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomomesyReport<F> {
    pub is_homomesic: bool,
    pub global_average: F,
    pub per_orbit_averages: Vec<F>,
}

impl<F: Field> HomomesyReport<F> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "is_homomesic": self.is_homomesic,
            "global_average": self.global_average.to_json(),
            "per_orbit_averages": self.per_orbit_averages.iter().map(F::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Exact orbit averages of `stat` over orbits given as index lists into its values.
pub fn homomesy_check<F: Field>(stat: &Statistic<F>, orbits: &[Vec<usize>]) -> HomomesyReport<F> {
    let avg = |idx: &mut dyn Iterator<Item = &usize>, len: usize| {
        let s = idx.fold(F::zero(), |acc, &k| acc + stat.values[k].clone());
        s / F::from_i64(len as i64)
    };
    let per: Vec<F> = orbits.iter().map(|o| avg(&mut o.iter(), o.len())).collect();
    let total: usize = orbits.iter().map(Vec::len).sum();
    let global = if total == 0 {
        F::zero()
    } else {
        avg(&mut orbits.iter().flatten(), total)
    };
    HomomesyReport {
        is_homomesic: per.iter().all(|a| *a == global),
        global_average: global,
        per_orbit_averages: per,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ideal_orbits, Action, RankPermutation};
    use crate::families::*;
    use crate::poset::ElementSet;
    use crate::scalar::rat;

    fn lat(p: Poset) -> IdealLattice {
        IdealLattice::new(p).unwrap()
    }

    fn ideal_at(lat: &IdealLattice, cells: &[(i32, i32)]) -> usize {
        let p = lat.poset();
        let s = ElementSet::from_elements(cells.iter().map(|&(i, j)| p.at(i, j).unwrap()));
        lat.index_of(p.ideal(s).unwrap())
    }

    #[test]
    fn table_one() {
        let l = lat(rectangle(2, 2).unwrap());
        // rows: ideal, T at (1,1),(1,2),(2,1),(2,2), #I, #max(I)
        let rows: [(&[(i32, i32)], [i64; 4], i64, i64); 6] = [
            (&[], [1, 0, 0, 0], 0, 0),
            (&[(1, 1)], [-1, 1, 1, 0], 1, 1),
            (&[(1, 1), (2, 1)], [0, 1, -1, 0], 2, 1),
            (&[(1, 1), (1, 2)], [0, -1, 1, 0], 2, 1),
            (&[(1, 1), (1, 2), (2, 1)], [0, -1, -1, 1], 3, 2),
            (&[(1, 1), (1, 2), (2, 1), (2, 2)], [0, 0, 0, -1], 4, 1),
        ];
        let p = l.poset();
        let ic = named_statistic(p, &StatKind::IdealCard)
            .unwrap()
            .evaluate(&l, "");
        let ac = named_statistic(p, &StatKind::AntichainCard)
            .unwrap()
            .evaluate(&l, "");
        for (cells, ts, card, anti) in rows {
            let k = ideal_at(&l, cells);
            for (x, (i, j)) in [(1, 1), (1, 2), (2, 1), (2, 2)].into_iter().enumerate() {
                assert_eq!(t_signed(&l, p.at(i, j).unwrap()).values()[k], int(ts[x]));
            }
            assert_eq!(ic.values()[k], int(card));
            assert_eq!(ac.values()[k], int(anti));
        }
        assert_eq!(ic.values(), &[0, 1, 2, 2, 3, 4].map(int));
    }

    #[test]
    fn toggleability_basics() {
        let l = lat(rectangle(2, 3).unwrap());
        let full = l.len() - 1;
        for x in 0..l.poset().len() {
            assert!(t_in(&l, x).values()[full].is_zero());
            let q1 = t_q(&l, x).specialize(&int(1)).unwrap();
            assert_eq!(q1.values(), t_signed(&l, x).values());
        }
        let l = lat(rectangle(2, 2).unwrap());
        let tq = t_q(&l, 0);
        assert_eq!(tq.values()[0], RationalFunction::one());
        assert_eq!(tq.values()[1], -RationalFunction::q());
    }

    #[test]
    fn q_weighted_sum_vanishes() {
        let l = lat(root_poset_a(2).unwrap());
        let n = l.poset().len();
        for x in 0..n {
            let tq = t_q(&l, x);
            let s = l
                .ideals()
                .iter()
                .zip(tq.values())
                .fold(RationalFunction::zero(), |acc, (i, v)| {
                    acc + RationalFunction::q().pow((n - i.len()) as i32) * v.clone()
                });
            assert!(s.is_zero());
        }
    }

    #[test]
    fn ideal_card_is_sum_of_indicators() {
        let l = lat(shifted_staircase(3).unwrap());
        let sum = (0..l.poset().len())
            .map(|x| indicator_ideal(&l, x))
            .reduce(|a, b| &a + &b)
            .unwrap();
        let ic = named_statistic(l.poset(), &StatKind::IdealCard)
            .unwrap()
            .evaluate(&l, "");
        assert_eq!(sum.values(), ic.values());
    }

    fn assert_one(l: &IdealLattice, c: &ToggleCombination) {
        assert_eq!(c.evaluate(l, "").is_constant(), Some(int(1)));
    }

    #[test]
    fn rooks_are_one() {
        for (a, bb) in [(1, 1), (2, 3), (3, 4), (4, 2)] {
            let l = lat(rectangle(a, bb).unwrap());
            for &(i, j) in l.poset().coords().unwrap() {
                assert_one(&l, &rook_rect(l.poset(), i, j, false).unwrap());
            }
        }
        for n in 1..=4 {
            let l = lat(shifted_staircase(n).unwrap());
            for &(i, j) in l.poset().coords().unwrap() {
                assert_one(&l, &rook_sstair(l.poset(), i, j, false).unwrap());
            }
            let l = lat(root_poset_a(n).unwrap());
            for i in 1..=n as i32 {
                assert_one(&l, &rook_a(l.poset(), i, false).unwrap());
            }
            let l = lat(root_poset_b(n).unwrap());
            for i in 1..=n as i32 {
                assert_one(&l, &rook_b(l.poset(), i, false).unwrap());
                assert_one(&l, &var_rook_b(l.poset(), i, false).unwrap());
            }
        }
    }

    #[test]
    fn rook_argument_errors() {
        let r = rectangle(2, 2).unwrap();
        assert!(matches!(
            rook_rect(&r, 3, 1, false),
            Err(Error::CoordinateOutsidePoset(3, 1))
        ));
        assert!(matches!(rook_a(&r, 1, false), Err(Error::Mismatch(_))));
        assert!(rook_a(&root_poset_a(3).unwrap(), 4, true).is_err());
        assert!(named_statistic(&double_tailed_diamond(3).unwrap(), &StatKind::File(0)).is_err());
        assert!(named_statistic(&r, &StatKind::File(5)).is_err());
    }

    #[test]
    fn reduced_rook_double_counts() {
        let ac = |p: &Poset| named_statistic(p, &StatKind::AntichainCard).unwrap();
        let r = rectangle(2, 3).unwrap();
        let sum = r
            .coords()
            .unwrap()
            .iter()
            .map(|&(i, j)| rook_rect(&r, i, j, true).unwrap())
            .reduce(|x, y| &x + &y);
        assert_eq!(sum.unwrap(), ac(&r).scale(&int(5)));
        let a = root_poset_a(3).unwrap();
        let sum = (1..=3)
            .map(|i| rook_a(&a, i, true).unwrap())
            .reduce(|x, y| &x + &y);
        assert_eq!(sum.unwrap(), ac(&a).scale(&int(2)));
        for n in 1..=4 {
            let b = root_poset_b(n).unwrap();
            let lhs = &rook_b(&b, n as i32, true).unwrap().scale(&int(2))
                - &var_rook_b(&b, n as i32, true).unwrap();
            let diag = named_statistic(&b, &StatKind::DiagAntichain)
                .unwrap()
                .scale(&int(2));
            assert_eq!(lhs, diag);
        }
    }

    #[test]
    fn folded_variant_rooks_match_iota() {
        for n in 1..=3 {
            let q = root_b_quotient(n).unwrap();
            let l = lat(q.quotient.clone());
            for i in 1..=n as i32 {
                for reduced in [false, true] {
                    let folded = var_rook_b(&q.quotient, i, reduced)
                        .unwrap()
                        .evaluate(&l, "");
                    let on_a = rook_a(&q.double, i, reduced).unwrap();
                    let via = Statistic::from_fn(&l, "", |x| on_a.eval(&q.double, q.iota(x)));
                    assert_eq!(folded.values(), via.values());
                }
            }
            // the explicit reduced variant formula
            let c = 2 * n as i32;
            for i in 1..=n as i32 {
                let explicit = by_cells(&q.quotient, |x, y| {
                    let k = c - i;
                    (
                        0,
                        b(x == i && y >= k) + b(y == k && x >= i) + b(x == k && y > k),
                        0,
                    )
                })
                .unwrap();
                assert_eq!(explicit, var_rook_b(&q.quotient, i, true).unwrap());
            }
        }
    }

    #[test]
    fn half_rook_is_indicator() {
        for p in [
            rectangle(3, 3).unwrap(),
            rectangle(2, 4).unwrap(),
            root_poset_a(4).unwrap(),
        ] {
            let l = lat(p);
            let p = l.poset();
            for (k, &(i, j)) in p.coords().unwrap().iter().enumerate() {
                let h = half_rook(p, i, j).unwrap().evaluate(&l, "");
                assert_eq!(h.values(), indicator_ideal(&l, k).values());
            }
        }
    }

    #[test]
    fn refinements_sum_up() {
        let r = rectangle(3, 4).unwrap();
        let files = (-2..=3)
            .map(|k| named_statistic(&r, &StatKind::File(k)).unwrap())
            .reduce(|x, y| &x + &y);
        assert_eq!(
            files.unwrap(),
            named_statistic(&r, &StatKind::IdealCard).unwrap()
        );
        let fibers = (1..=3)
            .map(|i| named_statistic(&r, &StatKind::PosFiber(i)).unwrap())
            .reduce(|x, y| &x + &y);
        assert_eq!(
            fibers.unwrap(),
            named_statistic(&r, &StatKind::AntichainCard).unwrap()
        );
        let s = shifted_staircase(4).unwrap();
        let d = named_statistic(&s, &StatKind::File(0)).unwrap();
        assert!(s
            .coords()
            .unwrap()
            .iter()
            .zip(&d.ind)
            .all(|(&(i, j), v)| *v == int((i == j) as i64)));
        // Type D coloring splits the diagonal in two
        let halves = &named_statistic(&s, &StatKind::ColorClass(0)).unwrap()
            + &named_statistic(&s, &StatKind::ColorClass(1)).unwrap();
        assert_eq!(halves, d);
    }

    #[test]
    fn rank_alternating_on_a2() {
        let l = lat(root_poset_a(2).unwrap());
        let s = named_statistic(l.poset(), &StatKind::RankAlternating)
            .unwrap()
            .evaluate(&l, "");
        assert_eq!(s.values().last().unwrap(), &int(1));
    }

    #[test]
    fn homomesy_on_square() {
        let l = lat(rectangle(2, 2).unwrap());
        let orbits = ideal_orbits(&l, &Action::Rowmotion).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let p = l.poset();
        let ic = homomesy_check(
            &named_statistic(p, &StatKind::IdealCard)
                .unwrap()
                .evaluate(&l, ""),
            &orbits,
        );
        assert!(ic.is_homomesic);
        assert_eq!(ic.global_average, int(2));
        let ac = homomesy_check(
            &named_statistic(p, &StatKind::AntichainCard)
                .unwrap()
                .evaluate(&l, ""),
            &orbits,
        );
        assert_eq!((ac.is_homomesic, ac.global_average), (true, int(1)));
        let c = homomesy_check(&Statistic::constant(&l, rat(7, 3)), &orbits);
        assert_eq!((c.is_homomesic, c.global_average), (true, rat(7, 3)));
        assert!(!homomesy_check(&indicator_ideal(&l, 0), &orbits).is_homomesic);
    }

    #[test]
    fn striker_for_gyration_on_staircase() {
        let l = lat(shifted_staircase(3).unwrap());
        let orbits = ideal_orbits(&l, &Action::gyration(l.poset()).unwrap()).unwrap();
        for x in 0..l.poset().len() {
            let r = homomesy_check(&t_signed(&l, x), &orbits);
            assert!(r.is_homomesic && r.global_average.is_zero());
        }
        let sigma = RankPermutation::new(l.poset(), vec![2, 0, 4, 1, 3]).unwrap();
        let orbits = ideal_orbits(&l, &Action::Sigma(sigma)).unwrap();
        for x in 0..l.poset().len() {
            assert!(homomesy_check(&t_signed(&l, x), &orbits).is_homomesic);
        }
    }

    #[test]
    fn antichain_toggleability_basics() {
        let l = lat(root_poset_a(3).unwrap());
        let p = l.poset();
        let empty = Antichain::EMPTY;
        assert_eq!(
            antichain_toggleability(&l, empty, ToggleKind::In).is_constant(),
            Some(int(1))
        );
        assert_eq!(
            antichain_toggleability(&l, empty, ToggleKind::Out).is_constant(),
            Some(int(1))
        );
        assert_eq!(
            antichain_toggleability(&l, empty, ToggleKind::Signed).is_constant(),
            Some(int(0))
        );
        for x in 0..p.len() {
            let a = p.antichain(ElementSet::singleton(x)).unwrap();
            assert_eq!(
                antichain_toggleability(&l, a, ToggleKind::Signed).values(),
                t_signed(&l, x).values()
            );
        }
        let orbits = ideal_orbits(&l, &Action::Rowmotion).unwrap();
        for &i in l.ideals() {
            let a = p.maximal_elements(i);
            // T_A as a product of single-element toggleabilities
            let prod = |kind| {
                Statistic::from_fn(&l, "", |j| {
                    a.set().iter().fold(int(1), |acc, x| {
                        let v = match kind {
                            ToggleKind::In => t_in(&l, x).values()[l.index_of(j)].clone(),
                            _ => t_out(&l, x).values()[l.index_of(j)].clone(),
                        };
                        acc * v
                    })
                })
            };
            assert_eq!(
                antichain_toggleability(&l, a, ToggleKind::In).values(),
                prod(ToggleKind::In).values()
            );
            assert_eq!(
                antichain_toggleability(&l, a, ToggleKind::Out).values(),
                prod(ToggleKind::Out).values()
            );
            let r = homomesy_check(&antichain_toggleability(&l, a, ToggleKind::Signed), &orbits);
            assert!(r.is_homomesic && r.global_average.is_zero());
        }
    }
}
