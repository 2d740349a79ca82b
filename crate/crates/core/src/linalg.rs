//! Dense matrices over a [`Field`] with exact Gaussian elimination.
//!
//! Pivot choice is the first nonzero entry in row order, so results are
//! deterministic.

use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = field.zero();
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Removes the first `k` columns and the last `k` rows.
    pub fn minor_drop(&self, k: usize) -> Matrix {
        let rows = self.rows - k;
        let cols = self.cols - k;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            data.extend_from_slice(&self.row(r)[k..]);
        }
        Matrix { rows, cols, data }
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }
}

/// Determinant of a square matrix.
pub fn det(field: &Field, m: &Matrix) -> Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let mut buf = m.data.clone();
    det_in_place(field, &mut buf, m.rows)
}

/// Determinant of the row-major `n x n` matrix in `buf`, destroying it.
pub fn det_in_place(field: &Field, buf: &mut [Elem], n: usize) -> Elem {
    let mut acc = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(buf[r * n + col])) else {
            return field.zero();
        };
        if piv != col {
            for j in col..n {
                buf.swap(piv * n + j, col * n + j);
            }
            acc = field.neg(acc);
        }
        let pv = buf[col * n + col];
        acc = field.mul(acc, pv);
        let pinv = field.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let lead = buf[r * n + col];
            if field.is_zero(lead) {
                continue;
            }
            let factor = field.neg(field.mul(lead, pinv));
            for j in col + 1..n {
                let v = field.mul(factor, buf[col * n + j]);
                buf[r * n + j] = field.add(buf[r * n + j], v);
            }
        }
    }
    acc
}

/// Rank by elimination.
pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Reduces `m` to reduced row echelon form in place; returns pivot columns.
pub fn rref(field: &Field, m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                m.data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            m.set(r, j, field.mul(m.get(r, j), inv));
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let lead = m.get(i, c);
            if field.is_zero(lead) {
                continue;
            }
            let neg = field.neg(lead);
            for j in c..cols {
                let v = field.add(m.get(i, j), field.mul(neg, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : m v = 0}`, one vector per free column, in RREF-derived
/// canonical order.
pub fn nullspace(field: &Field, m: &Matrix) -> Vec<Vec<Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); m.cols];
            v[fc] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(work.get(row, fc));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn identity_det_and_rank() {
        let f = field();
        let id = Matrix::identity(&f, 6);
        assert_eq!(det(&f, &id), f.one());
        assert_eq!(rank(&f, &id), 6);
    }

    #[test]
    fn repeated_row_is_singular() {
        let f = field();
        let g = f.generator();
        let row = vec![g, f.one(), f.zero(), f.pow(g, 5)];
        let other = vec![f.one(), g, g, f.zero()];
        let third = vec![f.zero(), f.one(), f.pow(g, 9), g];
        let m = Matrix::from_rows(&[row.clone(), other, row, third]);
        assert_eq!(det(&f, &m), f.zero());
        assert_eq!(rank(&f, &m), 3);
    }

    #[test]
    fn swap_flips_sign() {
        let f = field();
        let m = Matrix::from_rows(&[vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        assert_eq!(det(&f, &m), f.neg_one());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = field();
        let g = f.generator();
        let m = Matrix::from_rows(&[
            vec![f.one(), g, f.zero(), f.pow(g, 3)],
            vec![f.zero(), f.one(), g, f.one()],
        ]);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in 0..m.rows() {
                let dot =
                    (0..m.cols()).fold(f.zero(), |acc, c| f.add(acc, f.mul(m.get(r, c), v[c])));
                assert!(f.is_zero(dot));
            }
        }
    }

    #[test]
    fn minor_drop_shapes() {
        let f = field();
        let m = Matrix::identity(&f, 6);
        let d = m.minor_drop(1);
        assert_eq!((d.rows(), d.cols()), (5, 5));
        assert_eq!(d.get(1, 0), f.one());
    }
}
