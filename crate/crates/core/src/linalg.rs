//! Dense linear algebra over a [`FieldCtx`].
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! echelon form and every basis produced here is reproducible.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Felt, FieldCtx, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("operands belong to different fields")]
    MismatchedField,
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("invalid matrix text: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Debug)]
pub struct MatrixFq {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for MatrixFq {}

impl std::hash::Hash for MatrixFq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

/// Result of [`MatrixFq::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixFq {
    pub fn new(
        ctx: &Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        data: Vec<Felt>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        if let Some(bad) = data.iter().find(|x| x.raw() >= ctx.q()) {
            return Err(LinalgError::Parse(format!("entry {} outside field", bad.raw())));
        }
        Ok(MatrixFq {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        MatrixFq {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = Felt::ONE;
        }
        m
    }

    pub fn scalar(ctx: &Arc<FieldCtx>, n: usize, c: Felt) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diagonal(ctx: &Arc<FieldCtx>, diag: &[Felt]) -> Self {
        let n = diag.len();
        Self::from_fn(ctx, n, n, |i, j| if i == j { diag[i] } else { Felt::ZERO })
    }

    pub fn from_fn(
        ctx: &Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Felt,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixFq {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ctx: &Arc<FieldCtx>, rows: &[Vec<Felt>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Parse("ragged rows".into()));
        }
        Self::new(ctx, rows.len(), cols, rows.concat())
    }

    /// Integer entries mapped into the prime field.
    pub fn from_ints(ctx: &Arc<FieldCtx>, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(ctx, rows.len(), cols, |i, j| ctx.from_int(rows[i][j]))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Felt] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Felt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map_indexed(&self, mut f: impl FnMut(usize, usize, Felt) -> Felt) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| f(i, j, self.get(i, j)))
    }

    /// Entrywise Frobenius x -> x^(p^j).
    pub fn frobenius(&self, j: u32) -> Result<Self, LinalgError> {
        let ctx = Arc::clone(&self.ctx);
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = ctx.frobenius(*x, j)?;
        }
        Ok(out)
    }

    fn same_field(&self, other: &MatrixFq) -> Result<(), LinalgError> {
        if *self.ctx != *other.ctx {
            return Err(LinalgError::MismatchedField);
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &MatrixFq) -> MatrixFq {
        let ctx = &self.ctx;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![Felt::ZERO; n * m];
        for i in 0..n {
            let out = &mut data[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (o, &b) in out.iter_mut().zip(brow) {
                    *o = ctx.add(*o, ctx.mul(a, b));
                }
            }
        }
        MatrixFq {
            ctx: Arc::clone(ctx),
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Felt]) -> Vec<Felt> {
        assert_eq!(v.len(), self.cols, "vector length");
        let ctx = &self.ctx;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Felt::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect()
    }

    pub fn checked_add(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ctx = &self.ctx;
        Ok(self.map_indexed(|i, j, x| ctx.add(x, other.get(i, j))))
    }

    pub fn checked_sub(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape {
                op: "sub",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ctx = &self.ctx;
        Ok(self.map_indexed(|i, j, x| ctx.sub(x, other.get(i, j))))
    }

    /// self - I for a square matrix.
    pub fn minus_identity(&self) -> MatrixFq {
        assert!(self.is_square());
        let ctx = &self.ctx;
        self.map_indexed(|i, j, x| if i == j { ctx.sub(x, Felt::ONE) } else { x })
    }

    pub fn scale(&self, c: Felt) -> MatrixFq {
        let ctx = &self.ctx;
        self.map_indexed(|_, _, x| ctx.mul(c, x))
    }

    pub fn transpose(&self) -> MatrixFq {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { Felt::ONE } else { Felt::ZERO })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Scalar multiple of the identity, returning the scalar.
    pub fn as_scalar(&self) -> Option<Felt> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        (self == &Self::scalar(&self.ctx, self.rows, c)).then_some(c)
    }

    pub fn pow(&self, mut e: u64) -> MatrixFq {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(ctx: &Arc<FieldCtx>, cols: usize, parts: &[MatrixFq]) -> Result<MatrixFq, LinalgError> {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            if *m.ctx != **ctx {
                return Err(LinalgError::MismatchedField);
            }
            if m.cols != cols {
                return Err(LinalgError::Shape {
                    op: "vstack",
                    left: (rows, cols),
                    right: m.shape(),
                });
            }
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(MatrixFq {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut r = self.clone();
        let pivots = r.rref_in_place(self.cols);
        Rref {
            rank: pivots.len(),
            matrix: r,
            pivots,
        }
    }

    // Eliminates on the first `limit` columns; returns pivot columns.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let ctx = Arc::clone(&self.ctx);
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, row * cols + j);
                }
            }
            let inv = ctx.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..cols {
                let v = self.get(row, j);
                self.set(row, j, ctx.mul(inv, v));
            }
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let f = self.get(i, col);
                if f.is_zero() {
                    continue;
                }
                for j in col..cols {
                    let v = ctx.sub(self.get(i, j), ctx.mul(f, self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space {x : Ax = 0}.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let ctx = &self.ctx;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Felt::ZERO; self.cols];
            x[f] = Felt::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = ctx.neg(matrix.get(i, f));
            }
            assert!(
                self.mul_vec(&x).iter().all(|v| v.is_zero()),
                "kernel vector failed verification"
            );
            basis.push(x);
        }
        Subspace::new(ctx, self.cols, basis)
    }

    /// Some x with Ax = b, or None when the system is inconsistent.
    pub fn solve(&self, b: &[Felt]) -> Option<Vec<Felt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let ctx = &self.ctx;
        let mut aug = Self::from_fn(ctx, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                b[i]
            }
        });
        let pivots = aug.rref_in_place(self.cols);
        if (pivots.len()..self.rows).any(|i| !aug.get(i, self.cols).is_zero()) {
            return None;
        }
        let mut x = vec![Felt::ZERO; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        assert_eq!(self.mul_vec(&x), b, "solution failed verification");
        Some(x)
    }

    pub fn inverse(&self) -> Option<MatrixFq> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(&self.ctx, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                Felt::ONE
            } else {
                Felt::ZERO
            }
        });
        if aug.rref_in_place(n).len() < n {
            return None;
        }
        Some(Self::from_fn(&self.ctx, n, n, |i, j| aug.get(i, n + j)))
    }

    pub fn det(&self) -> Felt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let ctx = Arc::clone(&self.ctx);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Felt::ONE;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Felt::ZERO;
            };
            if pr != col {
                for j in 0..n {
                    a.data.swap(pr * n + j, col * n + j);
                }
                det = ctx.neg(det);
            }
            let piv = a.get(col, col);
            det = ctx.mul(det, piv);
            let inv = ctx.inv(piv).expect("pivot is nonzero");
            for i in col + 1..n {
                let f = ctx.mul(a.get(i, col), inv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = ctx.sub(a.get(i, j), ctx.mul(f, a.get(col, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Kronecker product; row (i, k) of the result is i * rows(B) + k.
    pub fn kron(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        self.same_field(other)?;
        let ctx = &self.ctx;
        let (rb, cb) = other.shape();
        Ok(Self::from_fn(ctx, self.rows * rb, self.cols * cb, |r, c| {
            ctx.mul(self.get(r / rb, c / cb), other.get(r % rb, c % cb))
        }))
    }

    /// Block diagonal matrix.
    pub fn block_diag(ctx: &Arc<FieldCtx>, blocks: &[MatrixFq]) -> MatrixFq {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ctx, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows separated by ';', entries by ','.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| self.ctx.format(x))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_text(ctx: &Arc<FieldCtx>, s: &str) -> Result<MatrixFq, LinalgError> {
        let rows: Vec<Vec<Felt>> = split_top_level(s, ';')
            .into_iter()
            .map(|row| parse_vector(ctx, row))
            .collect::<Result<_, _>>()?;
        Self::from_rows(ctx, &rows)
    }
}

/// Parses a ','-separated vector in element syntax.
pub fn parse_vector(ctx: &FieldCtx, s: &str) -> Result<Vec<Felt>, LinalgError> {
    if s.trim().is_empty() {
        return Err(LinalgError::Parse("empty vector".into()));
    }
    split_top_level(s, ',')
        .into_iter()
        .map(|e| ctx.parse(e).map_err(LinalgError::from))
        .collect()
}

pub fn format_vector(ctx: &FieldCtx, v: &[Felt]) -> String {
    v.iter().map(|&x| ctx.format(x)).collect::<Vec<_>>().join(",")
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl<'a> Mul<&'a MatrixFq> for &'a MatrixFq {
    type Output = MatrixFq;

    /// Panics on field or shape mismatch; use `checked_mul` otherwise.
    fn mul(self, rhs: &'a MatrixFq) -> MatrixFq {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A subspace of F_q^n stored by its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ctx: Arc<FieldCtx>,
    ambient: usize,
    basis: Vec<Vec<Felt>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn new(ctx: &Arc<FieldCtx>, ambient: usize, vectors: Vec<Vec<Felt>>) -> Self {
        let mut e = Echelon::new(ctx, ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn zero(ctx: &Arc<FieldCtx>, ambient: usize) -> Self {
        Subspace {
            ctx: Arc::clone(ctx),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ctx: &Arc<FieldCtx>, ambient: usize) -> Self {
        MatrixFq::zeros(ctx, 0, ambient).kernel()
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Felt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> MatrixFq {
        MatrixFq::new(&self.ctx, self.dim(), self.ambient, self.basis.concat())
            .expect("basis shape")
    }

    /// Coordinates of v in the echelon basis, or None when v is not in the span.
    pub fn coordinates(&self, v: &[Felt]) -> Option<Vec<Felt>> {
        let coords: Vec<Felt> = self.pivots.iter().map(|&c| v[c]).collect();
        let ctx = &self.ctx;
        let mut r = v.to_vec();
        for (b, &c) in self.basis.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(b) {
                *x = ctx.sub(*x, ctx.mul(c, y));
            }
        }
        r.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[Felt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::new(&self.ctx, self.ambient, all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x in both iff x = sum a_i u_i = sum b_j w_j; solve for (a, b)
        let (d1, d2) = (self.dim(), other.dim());
        let ctx = &self.ctx;
        let m = MatrixFq::from_fn(ctx, self.ambient, d1 + d2, |i, j| {
            if j < d1 {
                self.basis[j][i]
            } else {
                other.basis[j - d1][i]
            }
        });
        let vectors = m
            .kernel()
            .basis()
            .iter()
            .map(|ab| {
                let mut x = vec![Felt::ZERO; self.ambient];
                for (a, u) in ab[..d1].iter().zip(&self.basis) {
                    for (xi, &ui) in x.iter_mut().zip(u) {
                        *xi = ctx.add(*xi, ctx.mul(*a, ui));
                    }
                }
                x
            })
            .collect();
        Subspace::new(ctx, self.ambient, vectors)
    }

    /// Columns without a pivot; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Incrementally maintained reduced echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    ctx: Arc<FieldCtx>,
    width: usize,
    rows: Vec<Vec<Felt>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ctx: &Arc<FieldCtx>, width: usize) -> Self {
        Echelon {
            ctx: Arc::clone(ctx),
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![None; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces v against the stored rows in place.
    pub fn reduce(&self, v: &mut [Felt]) {
        let ctx = &self.ctx;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            for j in 0..self.width {
                if !row[j].is_zero() {
                    v[j] = ctx.sub(v[j], ctx.mul(c, row[j]));
                }
            }
        }
    }

    pub fn contains(&self, v: &[Felt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds v; returns false when v was already in the span.
    pub fn insert(&mut self, mut v: Vec<Felt>) -> bool {
        assert_eq!(v.len(), self.width, "vector length");
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let ctx = Arc::clone(&self.ctx);
        let inv = ctx.inv(v[pc]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = ctx.mul(inv, *x);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            for j in 0..self.width {
                if !v[j].is_zero() {
                    row[j] = ctx.sub(row[j], ctx.mul(c, v[j]));
                }
            }
        }
        // keep rows sorted by pivot column
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, pc);
        for (i, &p) in self.pivots.iter().enumerate() {
            self.row_of_col[p] = Some(i);
        }
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Felt>] {
        &self.rows
    }

    /// Solutions x of R x = 0 for the stored rows R.
    pub fn null_space(&self) -> Subspace {
        let ctx = &self.ctx;
        let vectors = (0..self.width)
            .filter(|&f| self.row_of_col[f].is_none())
            .map(|f| {
                let mut x = vec![Felt::ZERO; self.width];
                x[f] = Felt::ONE;
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = ctx.neg(row[f]);
                }
                x
            })
            .collect();
        Subspace::new(ctx, self.width, vectors)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ctx: self.ctx,
            ambient: self.width,
            basis: self.rows,
            pivots: self.pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_new;

    #[test]
    fn rref_examples() {
        let f5 = field_new(5, 1).unwrap();
        let id = MatrixFq::identity(&f5, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        let z = MatrixFq::zeros(&f5, 2, 3);
        assert_eq!(z.rref().matrix, z);
        assert_eq!(z.rank(), 0);
        let a = MatrixFq::from_ints(&f5, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f5 = field_new(5, 1).unwrap();
        let a = MatrixFq::from_ints(&f5, &[&[1, 2], &[2, 4]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        let expected = Subspace::new(&f5, 2, vec![vec![f5.from_int(3), f5.from_int(1)]]);
        assert_eq!(k, expected);
        assert_eq!(MatrixFq::identity(&f5, 3).kernel().dim(), 0);
        assert_eq!(MatrixFq::zeros(&f5, 3, 3).kernel(), Subspace::full(&f5, 3));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f5 = field_new(5, 1).unwrap();
        let a = MatrixFq::from_ints(&f5, &[&[1, 2], &[2, 4]]);
        assert!(a.solve(&[f5.from_int(1), f5.from_int(0)]).is_none());
        let x = a.solve(&[f5.from_int(1), f5.from_int(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![f5.from_int(1), f5.from_int(2)]);
    }

    #[test]
    fn kron_block_layout() {
        let f7 = field_new(7, 1).unwrap();
        let s = MatrixFq::from_ints(&f7, &[&[1, 2], &[3, 4]]);
        let k = s.kron(&MatrixFq::identity(&f7, 3)).unwrap();
        for bi in 0..2 {
            for bj in 0..2 {
                for i in 0..3 {
                    for j in 0..3 {
                        let expect = if i == j { s.get(bi, bj) } else { Felt::ZERO };
                        assert_eq!(k.get(bi * 3 + i, bj * 3 + j), expect);
                    }
                }
            }
        }
        let i2 = MatrixFq::identity(&f7, 2);
        let i3 = MatrixFq::identity(&f7, 3);
        assert_eq!(i2.kron(&i3).unwrap(), MatrixFq::identity(&f7, 6));
        let f5 = field_new(5, 1).unwrap();
        assert_eq!(
            s.kron(&MatrixFq::identity(&f5, 2)).unwrap_err(),
            LinalgError::MismatchedField
        );
    }

    #[test]
    fn det_and_inverse() {
        let f9 = field_new(3, 2).unwrap();
        let w = f9.omega();
        let a = MatrixFq::new(&f9, 2, 2, vec![w, Felt::ONE, Felt::ONE, Felt::ZERO]).unwrap();
        assert_eq!(a.det(), f9.neg(Felt::ONE));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let f5 = field_new(5, 1).unwrap();
        assert!(MatrixFq::from_ints(&f5, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn text_round_trip() {
        let f9 = field_new(3, 2).unwrap();
        let m = MatrixFq::parse_text(&f9, "[1,0],[2,1];[0,0],[0,1]").unwrap();
        assert_eq!(m.shape(), (2, 2));
        assert_eq!(MatrixFq::parse_text(&f9, &m.to_text()).unwrap(), m);
        assert!(MatrixFq::parse_text(&f9, "[1,0];[0,0],[1,0]").is_err());
        let f5 = field_new(5, 1).unwrap();
        let n = MatrixFq::parse_text(&f5, "1,2;3,4").unwrap();
        assert_eq!(n, MatrixFq::from_ints(&f5, &[&[1, 2], &[3, 4]]));
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let f3 = field_new(3, 1).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f3.from_int(x)).collect::<Vec<_>>();
        let u = Subspace::new(&f3, 3, vec![e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let w = Subspace::new(&f3, 3, vec![e(&[0, 1, 0]), e(&[0, 0, 1])]);
        assert_eq!(u.intersect(&w), Subspace::new(&f3, 3, vec![e(&[0, 2, 0])]));
        assert_eq!(u.sum(&w), Subspace::full(&f3, 3));
        assert_eq!(u.coordinates(&e(&[2, 1, 0])), Some(e(&[2, 1])));
        assert_eq!(u.coordinates(&e(&[0, 0, 1])), None);
        assert_eq!(u.free_columns(), vec![2]);
    }
}
