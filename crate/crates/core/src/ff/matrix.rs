use std::fmt;
use std::sync::Arc;

use super::field::{Fe, FieldCtx};
use super::FfError;

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
    field: Arc<FieldCtx>,
}

impl PartialEq for FFMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && *self.field == *other.field
            && self.data == other.data
    }
}
impl Eq for FFMatrix {}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.fmt_elem(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of row reduction: reduced matrix, rank, pivot columns.
pub struct Rref {
    pub matrix: FFMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

#[inline]
fn axpy(field: &FieldCtx, dst: &mut [Fe], src: &[Fe], factor: Fe) {
    // dst -= factor * src
    if field.is_prime_field() {
        let p = field.p() as u64;
        let nf = (p - factor as u64) % p;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = ((*d as u64 + nf * s as u64) % p) as Fe;
            }
        }
    } else {
        let nf = field.neg(factor);
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = field.add(*d, field.mul(nf, s));
            }
        }
    }
}

impl FFMatrix {
    pub fn zeros(field: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        FFMatrix { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Arc<FieldCtx>, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<FieldCtx>, n: usize, c: Fe) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: &Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Self, FfError> {
        if data.len() != rows * cols {
            return Err(FfError::Shape { expected: (rows, cols), found: data.len() });
        }
        if let Some(&x) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(FfError::BadElement(x.to_string()));
        }
        Ok(FFMatrix { rows, cols, data, field: field.clone() })
    }

    /// Builds a matrix from integer rows, reducing into the prime subfield.
    pub fn from_ints(field: &Arc<FieldCtx>, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| field.from_int(x)).collect();
        FFMatrix { rows: r, cols: c, data, field: field.clone() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn data(&self) -> &[Fe] {
        &self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &*self.field;
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    // dst += a * other.row(k)
                    axpy(f, dst, other.row(k), f.neg(a));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum dimension mismatch");
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FFMatrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference dimension mismatch");
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FFMatrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &*self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        FFMatrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &*self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FFMatrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        FFMatrix { rows: self.rows, cols, data, field: self.field.clone() }
    }

    /// Selects the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FFMatrix { rows: idx.len(), cols: self.cols, data, field: self.field.clone() }
    }

    /// Row-major flattening into a single row.
    pub fn flatten(&self) -> Vec<Fe> {
        self.data.clone()
    }

    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let f = self.field.clone();
        let (r, c) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(piv) = (row..r).find(|&i| a.data[i * c + col] != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..c {
                    a.data.swap(piv * c + j, row * c + j);
                }
            }
            let inv = f.inv(a.data[row * c + col]).expect("pivot is nonzero");
            for j in col..c {
                a.data[row * c + j] = f.mul(inv, a.data[row * c + j]);
            }
            for i in 0..r {
                if i == row {
                    continue;
                }
                let factor = a.data[i * c + col];
                if factor == 0 {
                    continue;
                }
                let (lo, hi) = a.data.split_at_mut(i.max(row) * c);
                let (dst, src) = if i < row {
                    (&mut lo[i * c + col..(i + 1) * c], &hi[col..c])
                } else {
                    (&mut hi[col..c], &lo[row * c + col..(row + 1) * c])
                };
                axpy(&f, dst, src, factor);
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: a, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns span the right null space `{x : A x = 0}`.
    pub fn kernel(&self) -> Self {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let f = &*self.field;
        let mut k = Self::zeros(&self.field, n, free.len());
        for (col, &fj) in free.iter().enumerate() {
            k.set(fj, col, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                k.set(pc, col, f.neg(r.get(pi, fj)));
            }
        }
        k
    }

    /// Rows span the left null space `{y : y A = 0}`.
    pub fn left_kernel(&self) -> Self {
        self.transpose().kernel().transpose()
    }

    /// Some `X` with `A X = B` (free variables set to zero), or `None`.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>, FfError> {
        if self.rows != b.rows {
            return Err(FfError::Mismatch { left: (self.rows, self.cols), right: (b.rows, b.cols) });
        }
        let aug = self.hstack(b);
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(&self.field, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pi, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let r = self.hstack(&Self::identity(&self.field, n)).rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// If every row has exactly one nonzero entry and the nonzero columns are
    /// pairwise distinct, returns `(column, value)` per row.
    pub fn as_monomial(&self) -> Option<Vec<(usize, Fe)>> {
        if !self.is_square() {
            return None;
        }
        let mut seen = vec![false; self.cols];
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut hit = None;
            for (j, &v) in self.row(i).iter().enumerate() {
                if v != 0 {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((j, v));
                }
            }
            let (j, v) = hit?;
            if std::mem::replace(&mut seen[j], true) {
                return None;
            }
            out.push((j, v));
        }
        Some(out)
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Whether `target` lies in the row span of `basis` (rows are vectors).
pub fn in_row_span(basis: &FFMatrix, target: &[Fe]) -> bool {
    assert_eq!(basis.cols(), target.len());
    let t = FFMatrix::from_vec(basis.field(), 1, target.len(), target.to_vec()).expect("target entries in field");
    let before = basis.rank();
    before == basis.vstack(&t).rank()
}
