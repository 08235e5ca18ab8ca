//! Exact dense linear algebra: Gauss–Jordan over any [`Field`] and fraction-free
//! Bareiss elimination for ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<F>]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form in place, pivoting on the lightest nonzero entry
    /// of each column among the first `limit` columns. Returns pivot columns.
    fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| self[(i, c)].pivot_weight())
            else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = F::one() / self[(r, c)].clone();
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Some solution of `self * x = b` (free variables zero), or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_limited(self.cols);
        if (pivots.len()..self.rows).any(|i| !aug[(i, self.cols)].is_zero()) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Rows of a rational matrix scaled to integers (each row by its own lcm of denominators).
fn integer_rows(m: &Matrix<Rational>, extra: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let mut row: Vec<&Rational> = m.row(i).iter().collect();
            if let Some(b) = extra {
                row.push(&b[i]);
            }
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter()
                .map(|x| (*x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Fraction-free forward elimination over ℤ on the first `limit` columns.
/// Returns the pivot columns; rows are left in echelon form.
fn bareiss(rows: &mut [Vec<BigInt>], limit: usize) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..limit {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bits())
        else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pr = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = &pr[c] * &row[j] - &f * &pr[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division not exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rational(m: &Matrix<Rational>) -> usize {
    let mut rows = integer_rows(m, None);
    bareiss(&mut rows, m.cols()).len()
}

/// Solve `m * x = b` exactly by Bareiss elimination; free variables are set to zero.
pub fn solve_rational(m: &Matrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows());
    let n = m.cols();
    let mut rows = integer_rows(m, Some(b));
    let pivots = bareiss(&mut rows, n);
    if rows[pivots.len()..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(rows[r][n].clone());
        for j in c + 1..n {
            if !rows[r][j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(rows[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rational::from_integer(rows[r][c].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn solves_small_system() {
        let a = m(&[&[2, 1], &[1, 3], &[3, 4]]);
        let b = vec![int(3), int(4), int(7)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert_eq!(a.solve(&b).unwrap(), x);
        assert!(solve_rational(&a, &[int(3), int(4), int(8)]).is_none());
    }

    #[test]
    fn rank_with_rationals() {
        let a = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), int(1)],
            vec![int(0), int(0)],
        ]);
        assert_eq!(rank_rational(&a), 1);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.nullspace().len(), 1);
    }

    fn int_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r).prop_map(|rows| {
                Matrix::from_rows(
                    rows.into_iter()
                        .map(|r| r.into_iter().map(int).collect())
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_gauss(a in int_matrix(), x in proptest::collection::vec(-3i64..4, 6)) {
            prop_assert_eq!(rank_rational(&a), a.rank());
            let x: Vec<Rational> = x[..a.cols()].iter().map(|&v| int(v)).collect();
            let b = a.mul_vec(&x);
            let y = solve_rational(&a, &b).unwrap();
            prop_assert_eq!(a.mul_vec(&y), b.clone());
            prop_assert_eq!(a.solve(&b).map(|z| a.mul_vec(&z)), Some(b));
        }

        #[test]
        fn nullspace_is_annihilated(a in int_matrix()) {
            let ns = a.nullspace();
            prop_assert_eq!(ns.len() + a.rank(), a.cols());
            for v in ns {
                prop_assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
