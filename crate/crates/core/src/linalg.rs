//! Dense matrices over an exact field: row reduction, rank, kernels.
//!
//! Pivoting is deterministic: in each column the first nonzero entry at or
//! below the current row is used. Over `Q` the forward sweep is done
//! fraction-free (Bareiss) on integer rows, and only the final
//! back-substitution works with fractions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{integer_row, Field};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        DenseMatrix { rows, cols, entries }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        DenseMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            entries.extend_from_slice(self.row(i));
        }
        DenseMatrix {
            rows: idx.len(),
            cols: self.cols,
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Clone> DenseMatrix<T> {
    pub fn identity<F: Field<Elem = T>>(field: &F, n: usize) -> Self {
        let mut m = DenseMatrix::filled(n, n, field.zero());
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn mul_vec<F: Field<Elem = T>>(&self, field: &F, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }
}

/// Reduced row-echelon form of `m` and its strictly increasing pivot columns.
pub fn rref<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> (DenseMatrix<F::Elem>, Vec<usize>) {
    field.rref(m)
}

pub fn rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    field.rref(m).1.len()
}

/// A basis of the right kernel `{v : m v = 0}`, one vector per free column.
/// Each vector has a 1 in its free column and zeros in the other free columns.
pub fn kernel_basis<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = field.rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(n - pivots.len());
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// Plain Gauss–Jordan elimination; the default for fields with cheap
/// arithmetic.
pub fn gauss_jordan<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> (DenseMatrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&i| !field.is_zero(a.get(i, col))) else {
            continue;
        };
        a.swap_rows(row, piv);
        let inv = field.inv(a.get(row, col)).expect("pivot is nonzero");
        for j in col..cols {
            let v = field.mul(a.get(row, j), &inv);
            a.set(row, j, v);
        }
        for i in 0..rows {
            if i == row || field.is_zero(a.get(i, col)) {
                continue;
            }
            let factor = a.get(i, col).clone();
            for j in col..cols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Row echelon form of an integer matrix by fraction-free (Bareiss)
/// elimination. Returns the echelon rows (nonzero ones only) and pivots.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let p = a[row][col].clone();
        let (top, rest) = a.split_at_mut(row + 1);
        let prow = &top[row];
        for r in rest.iter_mut() {
            let factor = r[col].clone();
            for j in col + 1..cols {
                let num = &p * &r[j] - &factor * &prow[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                r[j] = num / &prev;
            }
            r[col] = BigInt::zero();
        }
        prev = p;
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

/// RREF over `Q`: denominators are cleared row by row, the forward sweep is
/// Bareiss, and the echelon rows are then normalized and back-substituted.
pub fn bareiss_rref(m: &DenseMatrix<BigRational>) -> (DenseMatrix<BigRational>, Vec<usize>) {
    let cols = m.cols();
    let int_rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    let (echelon, pivots) = bareiss_echelon(int_rows, cols);

    let mut out: Vec<Vec<BigRational>> = echelon
        .into_iter()
        .zip(&pivots)
        .map(|(r, &p)| {
            let lead = r[p].clone();
            r.into_iter()
                .map(|x| BigRational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    for k in (0..out.len()).rev() {
        let p = pivots[k];
        let (above, below) = out.split_at_mut(k);
        let prow = &below[0];
        for r in above.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for j in p..cols {
                if !prow[j].is_zero() {
                    r[j] = &r[j] - &factor * &prow[j];
                }
            }
        }
    }
    let zero_rows = m.rows() - out.len();
    out.extend((0..zero_rows).map(|_| vec![BigRational::zero(); cols]));
    (DenseMatrix::from_rows(cols, out), pivots)
}
