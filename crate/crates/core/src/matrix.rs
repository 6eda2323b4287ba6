//! Dense matrices, fraction-free determinants and exact rank/kernel.

use std::ops::{Index, IndexMut};

use crate::ring::{Field, IntegralDomain, Ring};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: IntegralDomain> Matrix<T> {
    /// Determinant by Bareiss fraction-free elimination. Every intermediate
    /// division is exact; a failed one means the entries are not from an
    /// integral domain and panics.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let template = match self.data.first() {
            Some(t) => t.zero_like(),
            None => panic!("determinant of an empty matrix has no coefficient context"),
        };
        let mut m = self.clone();
        let mut prev = template.one_like();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero_elem()) else {
                return template;
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            if k + 1 == n {
                break;
            }
            let pivot = m[(k, k)].clone();
            for i in k + 1..n {
                let lead = m[(i, k)].clone();
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * &pivot - &(lead.clone() * &m[(k, j)]);
                    m[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[(i, k)] = template.clone();
            }
            prev = pivot;
        }
        let det = m[(n - 1, n - 1)].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Rank by fraction-free elimination with column skipping.
    pub fn rank_fraction_free(&self) -> usize {
        let Some(first) = self.data.first() else { return 0 };
        let zero = first.zero_like();
        let mut m = self.clone();
        let mut prev = zero.one_like();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !m[(i, col)].is_zero_elem()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let pivot = m[(rank, col)].clone();
            for i in rank + 1..self.rows {
                let lead = m[(i, col)].clone();
                for j in col + 1..self.cols {
                    let num = m[(i, j)].clone() * &pivot - &(lead.clone() * &m[(rank, j)]);
                    m[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[(i, col)] = zero.clone();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, col)].is_zero_elem()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, col)].inv().expect("nonzero pivot");
            for j in col..self.cols {
                self[(r, j)] = self[(r, j)].clone() * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, col)].is_zero_elem() {
                    continue;
                }
                let f = self[(i, col)].clone();
                for j in col..self.cols {
                    let v = self[(i, j)].clone() - &(f.clone() * &self[(r, j)]);
                    self[(i, j)] = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right kernel `{v : M v = 0}`.
    pub fn kernel_basis(&self, template: &T) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![template.zero_like(); self.cols];
            v[free] = template.one_like();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(int_matrix(&[&[2, 3], &[5, 7]]).determinant(), BigInt::from(-1));
        assert_eq!(int_matrix(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).determinant(), BigInt::from(0));
        let m = int_matrix(&[&[0, 2, 1], &[3, 0, 4], &[5, 6, 0]]);
        // 0*(0-24) - 2*(0-20) + 1*(18-0) = 58
        assert_eq!(m.determinant(), BigInt::from(58));
    }

    #[test]
    fn rank_and_kernel() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank_fraction_free(), 2);
        let q = m.map(|v| BigRational::from_integer(v.clone()));
        assert_eq!(q.rank(), 2);
        let ker = q.kernel_basis(&BigRational::from_integer(0.into()));
        assert_eq!(ker.len(), 1);
        for r in 0..3 {
            let dot = (0..3).fold(BigRational::from_integer(0.into()), |acc, j| acc + &q[(r, j)] * &ker[0][j]);
            assert_eq!(dot, BigRational::from_integer(0.into()));
        }
    }
}
