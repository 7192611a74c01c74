//! Dense integer matrices and the Smith normal form.
//!
//! Matrices act on column vectors: a homomorphism `Z^n -> Z^m` is an
//! `m x n` matrix. The Smith decomposition tracks both unimodular
//! transforms (and the inverse of the row transform), which is what the
//! subgroup and kernel computations in [`crate::abgroup`] need.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("entry {0} does not fit in i64")]
    Narrowing(i128),
    #[error("linear system has no integer solution")]
    Unsolvable,
}

/// Row-major dense matrix over `Z`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = k;
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        Self::try_from(rows).expect("ragged rows")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scaled(&self, k: i64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduce row `i` modulo `orders[i]`; an order of `0` leaves the row alone.
    pub fn reduce_rows(&self, orders: &[u64]) -> Matrix {
        assert_eq!(orders.len(), self.rows);
        let mut out = self.clone();
        for (i, &ord) in orders.iter().enumerate() {
            if ord > 0 {
                for j in 0..self.cols {
                    out[(i, j)] = out[(i, j)].rem_euclid(ord as i64);
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl From<Matrix> for Vec<Vec<i64>> {
    fn from(m: Matrix) -> Self {
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }
}

impl TryFrom<Vec<Vec<i64>>> for Matrix {
    type Error = String;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, String> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err("matrix rows have different lengths".into());
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// Working matrix over `i128` with checked arithmetic.
#[derive(Clone, Debug)]
struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl Dense {
    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Dense {
            rows: n,
            cols: n,
            data,
        }
    }

    fn from_matrix(m: &Matrix) -> Self {
        Dense {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| x as i128).collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i128) -> Result<(), LinalgError> {
        for c in 0..self.cols {
            let v = self
                .at(j, c)
                .checked_mul(k)
                .and_then(|x| x.checked_add(self.at(i, c)));
            *self.at_mut(i, c) = v.ok_or(LinalgError::Overflow)?;
        }
        Ok(())
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i128) -> Result<(), LinalgError> {
        for r in 0..self.rows {
            let v = self
                .at(r, j)
                .checked_mul(k)
                .and_then(|x| x.checked_add(self.at(r, i)));
            *self.at_mut(r, i) = v.ok_or(LinalgError::Overflow)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            *self.at_mut(i, c) = -self.at(i, c);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            *self.at_mut(r, j) = -self.at(r, j);
        }
    }

    fn to_matrix(&self) -> Result<Matrix, LinalgError> {
        let data = self
            .data
            .iter()
            .map(|&x| i64::try_from(x).map_err(|_| LinalgError::Narrowing(x)))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ... | d_rank`, all further diagonal entries zero.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative.
    pub diagonal: Vec<i64>,
    pub rank: usize,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
}

struct Transforms {
    a: Dense,
    u: Dense,
    u_inv: Dense,
    v: Dense,
}

impl Transforms {
    fn add_row(&mut self, i: usize, j: usize, k: i128) -> Result<(), LinalgError> {
        self.a.add_row(i, j, k)?;
        self.u.add_row(i, j, k)?;
        self.u_inv.add_col(j, i, -k)
    }

    fn add_col(&mut self, i: usize, j: usize, k: i128) -> Result<(), LinalgError> {
        self.a.add_col(i, j, k)?;
        self.v.add_col(i, j, k)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith(m: &Matrix) -> Result<Smith, LinalgError> {
    let (rows, cols) = m.shape();
    let mut t = Transforms {
        a: Dense::from_matrix(m),
        u: Dense::identity(rows),
        u_inv: Dense::identity(rows),
        v: Dense::identity(cols),
    };
    let mut rank = 0;
    'outer: for k in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize, i128)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = t.a.at(i, j).abs();
                    if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'outer;
            };
            t.swap_rows(k, pi);
            t.swap_cols(k, pj);
            let pivot = t.a.at(k, k);

            let mut clean = true;
            for i in k + 1..rows {
                let x = t.a.at(i, k);
                if x != 0 {
                    t.add_row(i, k, -(x / pivot))?;
                    clean &= t.a.at(i, k) == 0;
                }
            }
            for j in k + 1..cols {
                let x = t.a.at(k, j);
                if x != 0 {
                    t.add_col(j, k, -(x / pivot))?;
                    clean &= t.a.at(k, j) == 0;
                }
            }
            if !clean {
                continue;
            }
            let offender =
                (k + 1..rows).find(|&i| (k + 1..cols).any(|j| t.a.at(i, j) % pivot != 0));
            match offender {
                Some(i) => t.add_row(k, i, 1)?,
                None => break,
            }
        }
        if t.a.at(k, k) < 0 {
            t.negate_row(k);
        }
        rank = k + 1;
    }
    let diagonal = (0..rows.min(cols))
        .map(|i| i64::try_from(t.a.at(i, i)).map_err(|_| LinalgError::Narrowing(t.a.at(i, i))))
        .collect::<Result<_, _>>()?;
    Ok(Smith {
        diagonal,
        rank,
        u: t.u.to_matrix()?,
        u_inv: t.u_inv.to_matrix()?,
        v: t.v.to_matrix()?,
    })
}

/// A basis (as columns) of the integer kernel `{x : A x = 0}`.
pub fn integer_kernel(a: &Matrix) -> Result<Matrix, LinalgError> {
    let s = smith(a)?;
    let cols: Vec<Vec<i64>> = (s.rank..a.cols()).map(|j| s.v.column(j)).collect();
    Ok(Matrix::from_columns(a.cols(), &cols))
}

/// A lattice `L ⊆ Z^n` with a chosen basis, able to express members in that basis.
///
/// Built from any generating set. The basis is `U^{-1} * diag(d)` restricted
/// to the first `rank` columns, where `U * G * V = D` is the Smith form of
/// the generator matrix.
#[derive(Debug, Clone)]
pub struct Lattice {
    ambient: usize,
    basis: Matrix,
    scales: Vec<i64>,
    u: Matrix,
}

impl Lattice {
    pub fn spanned_by(ambient: usize, generators: &Matrix) -> Result<Self, LinalgError> {
        assert_eq!(generators.rows(), ambient);
        let s = smith(generators)?;
        let scales: Vec<i64> = s.diagonal[..s.rank].to_vec();
        let cols: Vec<Vec<i64>> = (0..s.rank)
            .map(|j| {
                s.u_inv
                    .column(j)
                    .into_iter()
                    .map(|x| x * scales[j])
                    .collect()
            })
            .collect();
        Ok(Lattice {
            ambient,
            basis: Matrix::from_columns(ambient, &cols),
            scales,
            u: s.u,
        })
    }

    pub fn rank(&self) -> usize {
        self.scales.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates `c` with `basis * c = x`, or `Unsolvable` if `x ∉ L`.
    pub fn coordinates(&self, x: &[i64]) -> Result<Vec<i64>, LinalgError> {
        assert_eq!(x.len(), self.ambient);
        let y = self.u.apply(x);
        if y[self.rank()..].iter().any(|&v| v != 0) {
            return Err(LinalgError::Unsolvable);
        }
        self.scales
            .iter()
            .zip(&y)
            .map(|(&d, &v)| {
                if v % d == 0 {
                    Ok(v / d)
                } else {
                    Err(LinalgError::Unsolvable)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(m: &Matrix) -> Vec<i64> {
        smith(m).unwrap().diagonal
    }

    #[test]
    fn known_forms() {
        assert_eq!(
            diag_of(&Matrix::from_rows(vec![vec![3, 0], vec![0, 5]])),
            vec![1, 15]
        );
        assert_eq!(
            diag_of(&Matrix::from_rows(vec![
                vec![2, 4, 4],
                vec![-6, 6, 12],
                vec![10, -4, -16]
            ])),
            vec![2, 6, 12]
        );
        assert_eq!(
            diag_of(&Matrix::from_rows(vec![vec![0, 0], vec![0, 0]])),
            vec![0, 0]
        );
        assert_eq!(diag_of(&Matrix::from_rows(vec![vec![15]])), vec![15]);
    }

    #[test]
    fn kernel_of_row() {
        let k = integer_kernel(&Matrix::from_rows(vec![vec![2, 3]])).unwrap();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(2 * v[0] + 3 * v[1], 0);
        assert_eq!(
            crate::group::gcd(v[0].unsigned_abs(), v[1].unsigned_abs()),
            1
        );
    }

    #[test]
    fn lattice_coordinates() {
        let l =
            Lattice::spanned_by(2, &Matrix::from_rows(vec![vec![2, 0, 4], vec![0, 3, 3]])).unwrap();
        assert_eq!(l.rank(), 2);
        for x in [[2i64, 0], [0, 3], [4, 3], [-6, 9]] {
            let c = l.coordinates(&x).unwrap();
            assert_eq!(l.basis().apply(&c), x.to_vec());
        }
        assert_eq!(l.coordinates(&[1, 0]), Err(LinalgError::Unsolvable));
    }

    proptest! {
        #[test]
        fn smith_decomposition_holds(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let a = Matrix::from_rows(data);
            let s = smith(&a).unwrap();
            let d = s.u.mul(&a).mul(&s.v);
            for i in 0..rows {
                for j in 0..cols {
                    let expect = if i == j { s.diagonal[i] } else { 0 };
                    prop_assert_eq!(d[(i, j)], expect);
                }
            }
            prop_assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(rows));
            for w in s.diagonal[..s.rank].windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(s.diagonal[s.rank..].iter().all(|&x| x == 0));
        }
    }
}
