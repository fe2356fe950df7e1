//! Dense linear algebra over a prime field.
//!
//! Elimination always picks the first nonzero entry of a column as pivot, so
//! every output here is reproducible bit for bit.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`. Elements are stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime below 2^31")));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for printing.
    pub fn to_signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// A dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    f: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(out, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(out, " ")?;
                }
                write!(out, "{}", self.f.to_signed(self.get(r, c)))?;
            }
        }
        write!(out, "]({}x{})", self.rows, self.cols)
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(f: Fp, rows: usize, cols: usize) -> Matrix {
        Matrix {
            f,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(f: Fp, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(f: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        let data = data.into_iter().map(|x| x % f.p).collect();
        Matrix {
            f,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from signed integer rows; entries are reduced mod p.
    pub fn from_rows(f: Fp, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(f, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = f.from_i64(x);
            }
        }
        m
    }

    pub fn from_fn(
        f: Fp,
        rows: usize,
        cols: usize,
        mut g: impl FnMut(usize, usize) -> u32,
    ) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = g(i, j) % f.p;
            }
        }
        m
    }

    /// A single column built from a slice of residues.
    pub fn column(f: Fp, v: &[u32]) -> Matrix {
        Matrix::from_vec(f, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(f: Fp, rows: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for i in 0..rows {
                m.data[i * cols.len() + j] = v[i] % f.p;
            }
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.f
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

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.f.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.f, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols,
            other.rows,
            "shape mismatch in product {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let f = self.f;
        let p = f.p as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (s, &b) in acc.iter_mut().zip(brow) {
                    *s = (*s + a * b as u64) % p;
                }
            }
            for (o, s) in orow.iter_mut().zip(acc) {
                *o = s as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let f = self.f;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    s = (s + self.get(i, k) as u64 * x as u64) % f.p as u64;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let f = self.f;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix {
            f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let f = self.f;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix {
            f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.f;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix {
            f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.f.p - 1)
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.f, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            f: self.f,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.f, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.f, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.f, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.f, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Reduced row echelon form; the pivot of each column is its first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let f = self.f;
        let (rows, cols) = self.shape();
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m[r * cols + c]);
            for j in c..cols {
                m[r * cols + j] = f.mul(m[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(factor, m[r * cols + j]);
                    m[i * cols + j] = f.sub(m[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: Matrix {
                f,
                rows,
                cols,
                data: m,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = self.f;
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(reduced.get(i, fc)));
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::column(self.f, b));
        let Rref { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(i, self.cols);
        }
        Some(x)
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, reduced.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.f, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    /// Columns form a basis of the column space (pivot columns of `self`).
    pub fn column_space(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// A matrix `L` with `L * self = I`, for `self` of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let t = self.transpose();
        let Rref { pivots, .. } = t.rref();
        if pivots.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&pivots);
        let inv = square.inverse()?;
        let mut l = Matrix::zeros(self.f, self.cols, self.rows);
        for (k, &r) in pivots.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, r, inv.get(i, k));
            }
        }
        Some(l)
    }
}

/// Quotient of `F_p^ambient_dim` by the column span of `subspace`.
///
/// Returns `(projection, coset_reps)`: `projection` has `ambient_dim - rank`
/// rows and kills the subspace, `coset_reps` holds standard basis vectors on
/// the non-pivot coordinates, and `projection * coset_reps = I`.
pub fn quotient_basis(subspace: &Matrix, ambient_dim: usize) -> (Matrix, Matrix) {
    assert_eq!(
        subspace.rows(),
        ambient_dim,
        "subspace vectors have wrong length"
    );
    let f = subspace.field();
    let Rref { reduced, pivots } = subspace.transpose().rref();
    let rest: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let mut proj = Matrix::zeros(f, rest.len(), ambient_dim);
    let mut reps = Matrix::zeros(f, ambient_dim, rest.len());
    for (j, &c) in rest.iter().enumerate() {
        proj.set(j, c, 1);
        reps.set(c, j, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            proj.set(j, pc, f.neg(reduced.get(i, c)));
        }
    }
    (proj, reps)
}
