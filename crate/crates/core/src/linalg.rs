//! Dense matrices over F_p with one byte per entry.
//!
//! Action matrices act on column vectors: column `j` of the matrix of `g`
//! holds the coordinates of `g` applied to the `j`-th basis vector.
//! Subspaces are stored as row bases in reduced echelon form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Arithmetic in the prime field with a precomputed inverse table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u8,
    inv: Vec<u8>,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!((2..=251).contains(&p));
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            inv[a as usize] = crate::poly::invmod(a, p) as u8;
        }
        Self { p: p as u8, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        ((self.p as u16 - a as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// `y += c * x`.
    #[inline]
    pub fn axpy(&self, y: &mut [u8], c: u8, x: &[u8]) {
        if c == 0 {
            return;
        }
        if self.p == 2 {
            for (a, &b) in y.iter_mut().zip(x) {
                *a ^= b;
            }
            return;
        }
        let p = self.p as u16;
        for (a, &b) in y.iter_mut().zip(x) {
            *a = ((*a as u16 + c as u16 * b as u16) % p) as u8;
        }
    }

    pub fn scale_in_place(&self, y: &mut [u8], c: u8) {
        for a in y.iter_mut() {
            *a = self.mul(*a, c);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u8>], cols: usize) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(p: u32, cols: &[Vec<u8>], rows: usize) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let fp = self.field();
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u8; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    fp.axpy(&mut acc, a, other.row(k));
                }
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                let s: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let fp = self.field();
        let mut out = self.clone();
        fp.axpy(&mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        let fp = self.field();
        let mut out = self.clone();
        fp.axpy(&mut out.data, fp.neg(1), &other.data);
        out
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let fp = self.field();
        let mut out = self.clone();
        fp.scale_in_place(&mut out.data, c);
        out
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut r = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    /// Evaluate a polynomial (coefficients low degree first) at a square matrix.
    pub fn eval_poly(&self, coeffs: &[u32]) -> FpMatrix {
        let n = self.rows;
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = (acc.get(i, i) as u32 + c) % self.p;
                acc.set(i, i, v as u8);
            }
        }
        acc
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let fp = self.field();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = fp.inv(self.get(r, c));
            fp.scale_in_place(self.row_mut(r), inv);
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let m = self.get(i, c);
                    if m != 0 {
                        let neg = fp.neg(m);
                        fp.axpy(self.row_mut(i), neg, &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis (as rows) of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> FpMatrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let fp = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(self.p, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, fp.neg(m.get(i, fc)));
            }
        }
        out
    }

    /// Some solution of `A x = b`, or an error when the system is inconsistent.
    pub fn solve(&self, b: &[u8]) -> Result<Vec<u8>, Error> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    /// Row space in reduced echelon form, zero rows dropped.
    pub fn row_space(&self) -> FpMatrix {
        let mut m = self.clone();
        let r = m.rref().len();
        m.data.truncate(r * m.cols);
        m.rows = r;
        m
    }

    /// Characteristic polynomial via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let fp = self.field();
        let p = self.p;
        let mut h: Vec<Vec<u8>> = self.row_vecs();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = fp.inv(h[m][m - 1]);
            for j in (m + 1)..n {
                let t = fp.mul(h[j][m - 1], inv);
                if t == 0 {
                    continue;
                }
                let (top, bottom) = h.split_at_mut(j);
                fp.axpy(&mut bottom[0], fp.neg(t), &top[m]);
                for row in h.iter_mut() {
                    let v = fp.add(row[m], fp.mul(t, row[j]));
                    row[m] = v;
                }
            }
        }
        // Recurrence on leading principal minors.
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for k in 1..=n {
            let hkk = h[k - 1][k - 1] as u32;
            let mut pk = crate::poly::mul(&[(p - hkk) % p, 1], &polys[k - 1], p);
            let mut t: u32 = 1;
            for i in 1..k {
                t = t * h[k - i][k - i - 1] as u32 % p;
                let c = t * h[k - i - 1][k - 1] as u32 % p;
                if c != 0 {
                    let term = crate::poly::scale(&polys[k - i - 1], c, p);
                    pk = crate::poly::sub(&pk, &term, p);
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }
}

/// A subspace kept in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    fp: Fp,
    dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Self { fp: Fp::new(p), dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &mut [u8]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                self.fp.axpy(v, self.fp.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.fp.inv(w[pc]);
        self.fp.scale_in_place(&mut w, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                self.fp.axpy(row, self.fp.neg(c), &w);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    /// Coordinates of a member vector with respect to the echelon rows.
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    pub fn to_matrix(&self) -> FpMatrix {
        FpMatrix::from_rows(self.fp.p(), &self.rows, self.dim)
    }
}
