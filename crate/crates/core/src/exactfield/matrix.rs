//! Dense matrices over F_p with row reduction.

use std::fmt;

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod, reduce, same_modulus, sub_mod, Fq};
use super::FieldError;

/// Row-major dense matrix over F_p. Entries are stored reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixFq {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl MatrixFq {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        MatrixFq {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing mod p. All rows must share a length.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::Shape(format!("ragged rows in {r}-row matrix")));
        }
        let data = rows.iter().flatten().map(|&v| reduce(v, p)).collect();
        Ok(MatrixFq {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Same as [`from_rows`](Self::from_rows) but with an explicit shape, so that
    /// matrices with zero columns keep their row count.
    pub fn from_flat(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|v| v % p).collect();
        MatrixFq { p, rows, cols, data }
    }

    pub fn modulus(&self) -> u32 {
        self.p
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn entry(&self, r: usize, c: usize) -> Fq {
        Fq::new(self.p, self.get(r, c) as i64)
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        MatrixFq {
            data: self.data.iter().map(|&v| neg_mod(v, p)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = self.p;
        MatrixFq {
            data: self.data.iter().map(|&v| mul_mod(v, s % p, p)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let p = self.p;
        Ok(MatrixFq {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        same_modulus(self.p, other.p)?;
        if self.shape() != other.shape() {
            return Err(FieldError::Shape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        same_modulus(self.p, other.p)?;
        if self.cols != other.rows {
            return Err(FieldError::Shape(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u64 * other.get(k, c) as u64;
                }
                out.data[r * other.cols + c] = (acc % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let acc: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (acc % p) as u32
            })
            .collect()
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut m = Self::zeros(a.p, rows, cols);
        for (src, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for r in 0..src.rows {
                for cc in 0..src.cols {
                    m.data[(r0 + r) * cols + c0 + cc] = src.get(r, cc);
                }
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let z1 = Self::zeros(self.p, self.rows, other.cols);
        let z2 = Self::zeros(self.p, other.rows, self.cols);
        Self::block(self, &z1, &z2, other)
    }

    pub fn vstack(top: &Self, bottom: &Self) -> Self {
        assert_eq!(top.cols, bottom.cols);
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        MatrixFq {
            p: top.p,
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    /// Columns `c0..c1` as a new matrix.
    pub fn columns(&self, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(self.p, self.rows, c1 - c0);
        for r in 0..self.rows {
            for c in c0..c1 {
                m.data[r * (c1 - c0) + c - c0] = self.get(r, c);
            }
        }
        m
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            if inv != 1 {
                for k in c..cols {
                    self.data[r * cols + k] = mul_mod(self.data[r * cols + k], inv, p);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                for k in c..cols {
                    let v = mul_mod(f, self.data[r * cols + k], p);
                    self.data[i * cols + k] = sub_mod(self.data[i * cols + k], v, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (m, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(m.get(i, free), p);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Fq, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::Shape("determinant of non-square matrix".into()));
        }
        let p = self.p;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return Ok(Fq::zero(p));
            };
            if pr != c {
                for k in 0..n {
                    m.swap(pr * n + k, c * n + k);
                }
                det = neg_mod(det, p);
            }
            let piv = m[c * n + c];
            det = mul_mod(det, piv, p);
            let inv = inv_mod(piv, p);
            for i in c + 1..n {
                let f = mul_mod(m[i * n + c], inv, p);
                if f == 0 {
                    continue;
                }
                for k in c..n {
                    let v = mul_mod(f, m[c * n + k], p);
                    m[i * n + k] = sub_mod(m[i * n + k], v, p);
                }
            }
        }
        Ok(Fq::new(p, det as i64))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Null-space basis of `a`; `a * v = 0` for every returned vector.
pub fn solve_kernel(a: &MatrixFq) -> Vec<Vec<u32>> {
    a.kernel()
}
