//! Deciding f ≡ c (over ℚ) and f ≡^q c(q) (over ℚ(q)) with verified certificates,
//! and the dimension counts of the toggleability spaces.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IdealLattice;
use crate::linalg::{rank_rational, solve_rational, Matrix};
use crate::poset::Poset;
use crate::ratfunc::RationalFunction;
use crate::scalar::{int, rat, Field, Rational};
use crate::statistics::Statistic;

/// f = c + Σ_p c_p (T⁺_p − w·T⁻_p) with w = 1 over ℚ and w = q over ℚ(q).
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F> {
    pub constant: F,
    pub coeffs: Vec<F>,
}

/// Column of the signed toggleability statistic of `p`, weighted for the field.
fn signed_column<F: Field>(lat: &IdealLattice, p: usize) -> Vec<F> {
    let poset = lat.poset();
    lat.ideals()
        .iter()
        .map(|&i| {
            if poset.minimal_complement(i).contains(p) {
                F::one()
            } else if poset.maximal_elements(i).contains(p) {
                -F::out_weight()
            } else {
                F::zero()
            }
        })
        .collect()
}

/// The |J(P)| × (|P|+1) matrix [1 | T_p columns].
pub fn toggle_matrix<F: Field>(lat: &IdealLattice) -> Matrix<F> {
    let mut cols = vec![vec![F::one(); lat.len()]];
    cols.extend((0..lat.poset().len()).map(|p| signed_column(lat, p)));
    Matrix::from_columns(&cols)
}

impl<F: Field> Decomposition<F> {
    pub fn reconstruct(&self, lat: &IdealLattice) -> Statistic<F> {
        let mut x = vec![self.constant.clone()];
        x.extend(self.coeffs.iter().cloned());
        Statistic::new(toggle_matrix::<F>(lat).mul_vec(&x), "reconstruction")
    }

    /// `{"constant": .., "coeffs": {label: ..}, "verified": true}`.
    pub fn certificate(&self, p: &Poset) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (p.label(k), c.to_json()))
            .collect();
        serde_json::json!({
            "constant": self.constant.to_json(),
            "coeffs": coeffs,
            "verified": true,
        })
    }
}

impl Decomposition<RationalFunction> {
    /// q := value; `None` on a pole.
    pub fn specialize(&self, q: &Rational) -> Option<Decomposition<Rational>> {
        Some(Decomposition {
            constant: self.constant.eval(q)?,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.eval(q))
                .collect::<Option<_>>()?,
        })
    }
}

fn split<F: Field>(mut x: Vec<F>) -> Decomposition<F> {
    let constant = x.remove(0);
    Decomposition {
        constant,
        coeffs: x,
    }
}

fn verified<F: Field>(
    lat: &IdealLattice,
    f: &Statistic<F>,
    d: Decomposition<F>,
) -> Result<Option<Decomposition<F>>> {
    if d.reconstruct(lat).values() == f.values() {
        Ok(Some(d))
    } else {
        Err(Error::Check(format!(
            "certificate for {} does not reconstruct it",
            f.label()
        )))
    }
}

/// The unique c, c_p with f = c + Σ c_p T_p, or `None` when f is outside that span.
pub fn decompose(
    lat: &IdealLattice,
    f: &Statistic<Rational>,
) -> Result<Option<Decomposition<Rational>>> {
    check_len(lat, f.len())?;
    match solve_rational(&toggle_matrix(lat), f.values()) {
        Some(x) => verified(lat, f, split(x)),
        None => Ok(None),
    }
}

fn check_len(lat: &IdealLattice, len: usize) -> Result<()> {
    if len == lat.len() {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "statistic has {len} values but J(P) has {} ideals",
            lat.len()
        )))
    }
}

/// Row indices of [1 | T^q] that are independent at some q ≥ 0, hence over ℚ(q).
fn independent_rows(lat: &IdealLattice) -> Option<Vec<usize>> {
    let n = lat.poset().len() + 1;
    for q in [int(1), int(2), rat(1, 3)] {
        let mut cols = vec![vec![Rational::one(); lat.len()]];
        for p in 0..lat.poset().len() {
            let col = signed_column::<RationalFunction>(lat, p);
            cols.push(col.iter().map(|v| v.eval(&q).unwrap()).collect());
        }
        // pivots of the transpose are independent rows
        let mut t = Matrix::from_columns(&cols).transpose();
        let pivots = t.rref();
        if pivots.len() == n {
            return Some(pivots);
        }
    }
    None
}

/// The unique c(q), c_p(q) with f − c(q) = Σ c_p(q) T^q_p, or `None` when none exist.
/// Returned coefficients are asserted to have no pole at any q ≥ 0.
pub fn q_decompose(
    lat: &IdealLattice,
    f: &Statistic<Rational>,
) -> Result<Option<Decomposition<RationalFunction>>> {
    check_len(lat, f.len())?;
    let fq = f.to_q();
    let full = toggle_matrix::<RationalFunction>(lat);
    // a square subsystem pins the only candidate; reconstruction on every row decides membership
    let x = match independent_rows(lat) {
        Some(rows) => {
            let sub = Matrix::from_rows(rows.iter().map(|&r| full.row(r).to_vec()).collect());
            let b: Vec<RationalFunction> = rows.iter().map(|&r| fq.values()[r].clone()).collect();
            sub.solve(&b).expect("square system of full rank")
        }
        None => match full.solve(fq.values()) {
            Some(x) => x,
            None => return Ok(None),
        },
    };
    let d = split(x);
    if d.reconstruct(lat).values() != fq.values() {
        return Ok(None);
    }
    for c in std::iter::once(&d.constant).chain(&d.coeffs) {
        check_no_nonnegative_pole(c)?;
    }
    Ok(Some(d))
}

fn check_no_nonnegative_pole(c: &RationalFunction) -> Result<()> {
    let den = c.denom();
    let roots = den.nonnegative_rational_roots();
    let samples = [int(0), rat(1, 2), int(1), int(2)];
    if !roots.is_empty() || samples.iter().any(|s| den.eval(s) <= Rational::zero()) {
        return Err(Error::Check(format!(
            "coefficient {c} has a pole at some q >= 0"
        )));
    }
    Ok(())
}

/// Rank of [1 | T^q_p] at a fixed q ≥ 0 equals |P|+1.
pub fn verify_independence(lat: &IdealLattice, q: &Rational) -> Result<bool> {
    if *q < Rational::zero() {
        return Err(Error::InvalidArgument(
            "independence is only claimed for q >= 0".into(),
        ));
    }
    let m = toggle_matrix::<RationalFunction>(lat);
    let mut rows = vec![];
    for r in 0..m.rows() {
        rows.push(m.row(r).iter().map(|v| v.eval(q).unwrap()).collect());
    }
    Ok(rank_rational(&Matrix::from_rows(rows)) == lat.poset().len() + 1)
}

/// Dimensions of {f ≡ const} ∩ V_A, {f ≡ const} ∩ V_I and their ≡^q analogues, where
/// V_A = span{T⁻_p} and V_I = span{1_p}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceDims {
    pub dim_a: usize,
    pub dim_i: usize,
    pub dim_a_q: usize,
    pub dim_i_q: usize,
}

fn antichain_columns(lat: &IdealLattice) -> Vec<Vec<Rational>> {
    let p = lat.poset();
    (0..p.len())
        .map(|x| {
            lat.ideals()
                .iter()
                .map(|&i| int(p.maximal_elements(i).contains(x) as i64))
                .collect()
        })
        .collect()
}

fn ideal_columns(lat: &IdealLattice) -> Vec<Vec<Rational>> {
    (0..lat.poset().len())
        .map(|x| {
            lat.ideals()
                .iter()
                .map(|i| int(i.contains(x) as i64))
                .collect()
        })
        .collect()
}

/// dim(span{1, T_p} ∩ span B) over ℚ.
fn intersection_dim(lat: &IdealLattice, basis: &[Vec<Rational>]) -> usize {
    let m = toggle_matrix::<Rational>(lat);
    let mut cols: Vec<Vec<Rational>> = (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| m[(r, c)].clone()).collect())
        .collect();
    let b = rank_rational(&Matrix::from_columns(basis));
    cols.extend(basis.iter().cloned());
    m.cols() + b - rank_rational(&Matrix::from_columns(&cols))
}

/// Left null vectors of [1 | T^q], cleared of denominators and split by powers of q.
fn q_annihilator_rows(lat: &IdealLattice) -> Vec<Vec<Rational>> {
    let null = toggle_matrix::<RationalFunction>(lat)
        .transpose()
        .nullspace();
    let mut rows = vec![];
    for y in null {
        let l = y.iter().fold(crate::poly::Polynomial::one(), |acc, v| {
            let g = crate::poly::Polynomial::gcd(&acc, v.denom());
            &acc * &v.denom().div_exact(&g).unwrap()
        });
        let polys: Vec<_> = y
            .iter()
            .map(|v| (v.numer() * &l).div_exact(v.denom()).unwrap())
            .collect();
        let deg = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        for k in 0..=deg {
            rows.push(
                polys
                    .iter()
                    .map(|p| p.coeffs().get(k).cloned().unwrap_or_else(Rational::zero))
                    .collect(),
            );
        }
    }
    rows
}

/// dim{x ∈ ℚ^n : Σ x_p B_p ≡^q const}.
fn q_intersection_dim(annihilators: &[Vec<Rational>], basis: &[Vec<Rational>]) -> usize {
    let n = basis.len();
    if annihilators.is_empty() {
        return n;
    }
    let rows: Vec<Vec<Rational>> = annihilators
        .iter()
        .map(|c| {
            basis
                .iter()
                .map(|b| {
                    c.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, y)| x * y)
                        .sum()
                })
                .collect()
        })
        .collect();
    n - rank_rational(&Matrix::from_rows(rows))
}

pub fn toggleability_space_dims(lat: &IdealLattice) -> SpaceDims {
    let a = antichain_columns(lat);
    let i = ideal_columns(lat);
    let ann = q_annihilator_rows(lat);
    SpaceDims {
        dim_a: intersection_dim(lat, &a),
        dim_i: intersection_dim(lat, &i),
        dim_a_q: q_intersection_dim(&ann, &a),
        dim_i_q: q_intersection_dim(&ann, &i),
    }
}

/// dim span{T_A : A ∈ A(P)}, computed over the antichains max(I).
pub fn antichain_span_dim(lat: &IdealLattice, cap: usize) -> Result<usize> {
    if lat.len() > cap {
        return Err(Error::ResourceCap {
            what: "antichains".into(),
            limit: cap,
        });
    }
    let p = lat.poset();
    let cols: Vec<Vec<Rational>> = lat
        .ideals()
        .iter()
        .map(|&a| {
            let a = p.maximal_elements(a).set();
            lat.ideals()
                .iter()
                .map(|&i| {
                    int(a.is_subset(p.minimal_complement(i).set()) as i64
                        - a.is_subset(p.maximal_elements(i).set()) as i64)
                })
                .collect()
        })
        .collect();
    Ok(rank_rational(&Matrix::from_columns(&cols)))
}
